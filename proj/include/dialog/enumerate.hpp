#pragma once

#include <vector>

#include "dialog/core.hpp"

namespace dialog {

/// Denotational semantics of the notation: the episode set an expression
/// specifies. Throws DialogError(collapse_undefined) when a PFA/SPE term that
/// must be answered in one utterance admits no single-utterance episode.
EnumeratedSpec enumerate(const Expr& expr);

/// Set union of the members' enumerations.
EnumeratedSpec enumerate_union(const SpecUnion& spec);

/// The one-utterance episode of a question set.
Episode single_utterance(const QuestionSet& questions);

/// All ordered set partitions of `questions`, generated from block labelings
/// (surjections onto 0..k-1) rather than by the enumerator's recursion. Used as
/// an independent oracle. Refuses more than eight questions.
EnumeratedSpec brute_force_ordered_partitions(const QuestionSet& questions);

/// Episodes that extend `prefix`, with the prefix stripped.
EpisodeSet continuations(const EpisodeSet& episodes, const Episode& prefix);

/// True when `prefix` is a prefix of some episode in the (ordered) set.
bool has_prefix(const EpisodeSet& episodes, const Episode& prefix);

}  // namespace dialog
