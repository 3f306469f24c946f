#pragma once

#include <map>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "dialog/core.hpp"

namespace dialog {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// Stirling number of the second kind S(m, n). S(0, 0) = 1.
BigInt stirling2(unsigned m, unsigned n);
/// B(m) = sum over n of S(m, n).
BigInt bell(unsigned m);
/// Number of ordered set partitions of an m-set (Fubini number); ordered_bell(0) = 1.
BigInt ordered_bell(unsigned q);

/// Episodes specified by a single type over q atomic questions.
BigInt episode_count(DialogType type, unsigned q);

struct CountTable {
  unsigned q = 0;
  std::map<DialogType, BigInt> counts;
};

CountTable count_table(unsigned q);

/// Number of specifications in the class of `type` for q questions.
/// Empty for q < 3, where some specifications belong to several classes.
std::optional<BigInt> class_size(DialogType type, unsigned q);

struct SpaceSizes {
  unsigned q = 0;
  BigInt d_cmi;        // episodes of the complete mixed-initiative dialog
  BigInt universe;     // 2^d_cmi - 1 non-empty episode subsets
  BigInt single_type;  // 4q! + q + 6
  BigInt delta_published;  // 2^d_cmi - 4q! - q - 6, as published
  BigInt delta_exact;  // universe - single_type
};

/// Requires 3 <= q <= 9 (beyond that 2^d_cmi has millions of bits).
SpaceSizes space_sizes(unsigned q);

}  // namespace dialog
