#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dialog/core.hpp"

namespace dialog {

/// The "must be answered before" order over the utterances of an episode set.
struct Poset {
  std::vector<AbstractUtterance> elements;  // canonical order
  /// Covering pairs (lower, upper) as indexes into `elements`.
  std::set<std::pair<std::size_t, std::size_t>> covers;
};

/// u < v iff u and v co-occur in some episode and u precedes v in every
/// episode holding both; edges are the transitive reduction.
Poset poset_of(const EpisodeSet& episodes);

/// Episodes readable off the diagram: orderings of pairwise disjoint elements
/// that cover every question and respect the order.
EpisodeSet episodes_of(const Poset& poset, const QuestionSet& questions);

/// DOT text. A single graph when one poset reproduces the union's episodes,
/// else one cluster per expression.
std::string hasse_dot(const SpecUnion& spec);

}  // namespace dialog
