#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dialog/core.hpp"

namespace dialog {

struct MineOptions {
  /// Upper bound on candidate evaluations; when spent, remaining episodes go
  /// straight to the one-C-per-episode fallback. The result stays sound.
  std::size_t step_budget = 2'000'000;
};

struct MineResult {
  SpecUnion spec;
  bool minimal_claimed = false;
  bool budget_exhausted = false;
  std::size_t steps = 0;
};

/// Compresses an enumerated specification into the notation. Always sound:
/// enumerate_union(result.spec) == spec.
///
/// The search tries, in order: recognizing a single type over the whole
/// question set; factoring the questions into blocks that every episode
/// visits contiguously (C over a fixed block order, SPE' when every order
/// occurs, SPE for the two-block first-then-rest pattern), mining each block
/// recursively; and greedy peeling of the largest recognizable sub-specs.
/// Whatever is left becomes one C expression per episode.
MineResult mine(const EnumeratedSpec& spec, const MineOptions& options = {});

/// Single-type recognition only. Term order follows the proposals drawn from
/// the episodes for order-sensitive types, alphabetical otherwise.
std::optional<Expr> recognize_single_type(const EnumeratedSpec& spec);

/// Term orders proposed by the episodes for order-sensitive numerators.
std::vector<std::vector<QuestionId>> candidate_orders(const EnumeratedSpec& spec);

struct MinimalityReport {
  std::size_t result_size = 0;
  /// Every union with at most this many members was checked.
  std::size_t searched_up_to = 0;
  bool minimal = false;
  bool exhaustive = false;
  std::optional<SpecUnion> witness;
  std::size_t library_size = 0;
};

/// Bounded exhaustive search for a smaller sound union (by member count).
/// Inputs limited to 4 questions and 25 episodes.
MinimalityReport minimality_report(const EnumeratedSpec& spec, const MineResult& result);

/// True when the miner claimed minimality or, for inputs small enough, the
/// bounded search found no smaller union.
bool known_minimal(const EnumeratedSpec& spec, const MineResult& result);

/// Every structurally valid expression over `questions`, one representative per
/// distinct enumeration. Exponential; used by minimality_report and tests.
std::vector<Expr> expression_library(const QuestionSet& questions);

}  // namespace dialog
