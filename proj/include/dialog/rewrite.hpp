#pragma once

#include <string>
#include <vector>

#include "dialog/core.hpp"

namespace dialog {

struct RewriteStep {
  std::string rule;
  Expr before;
  Expr after;
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

/// Rewrites to a fixpoint without changing the enumerated episode set:
///   unwrap-single   X(t) -> t for a nested single-term expression
///   flatten-C       C(.., C(u..), ..) -> C(.., u.., ..)
///   inline-chain    a sub-expression with exactly one all-singles episode
///                   becomes a C sequence of its questions
/// A top-level expression that would reduce to a bare question is kept as C(q).
Expr normalize(const Expr& expr, RewriteTrace* trace = nullptr);
SpecUnion normalize(const SpecUnion& spec);

/// An equivalent union that uses only C, and I over questions.
SpecUnion reduce_to_primitives(const Expr& expr);

bool is_primitive(const Expr& expr);

/// Same enumerated episode set. Exact, by enumeration; refuses more than ten
/// questions and unions over different question sets.
bool equivalent(const SpecUnion& a, const SpecUnion& b);
bool equivalent(const Expr& a, const Expr& b);

/// The specification of what may still happen after `history`: its
/// enumeration is exactly { s : history ++ s in enumerate_union(spec) }.
/// Prefers a single PE*, then SPE', then PFA_n* expression; otherwise the
/// continuation set is compressed with the miner. Empty once every question
/// is answered. Throws DialogError(not_a_prefix) for an impossible history.
SpecUnion residual_union(const SpecUnion& spec, const Episode& history);

}  // namespace dialog
