#include "dialog/combinatorics.hpp"

#include <vector>

namespace dialog {

BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

BigInt stirling2(unsigned m, unsigned n) {
  // S(i, j) = j S(i-1, j) + S(i-1, j-1), one row at a time
  std::vector<BigInt> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= m; ++i) {
    for (unsigned j = std::min(i, n); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[n];
}

BigInt bell(unsigned m) {
  if (m == 0) return 1;
  BigInt out = 0;
  for (unsigned n = 1; n <= m; ++n) out += stirling2(m, n);
  return out;
}

BigInt ordered_bell(unsigned q) {
  // a(q) = sum_{k=1..q} C(q, k) a(q-k): choose the first block, order the rest
  std::vector<BigInt> a(q + 1, 0);
  a[0] = 1;
  for (unsigned m = 1; m <= q; ++m) {
    for (unsigned k = 1; k <= m; ++k) a[m] += binomial(m, k) * a[m - k];
  }
  return a[q];
}

BigInt episode_count(DialogType type, unsigned q) {
  if (q == 0) throw DialogError(ErrorKind::invalid_argument, "q must be positive");
  switch (type) {
    case DialogType::I:
    case DialogType::C:
    case DialogType::PFA:
      return 1;
    case DialogType::PFA_n:
    case DialogType::SPE:
      return q;
    case DialogType::PFA_n_star:
      return BigInt(1) << (q - 1);
    case DialogType::SPE_prime:
      return factorial(q);
    case DialogType::PE:
      return (BigInt(1) << q) - 1;
    case DialogType::PE_star:
      return ordered_bell(q);
  }
  return 0;
}

CountTable count_table(unsigned q) {
  CountTable t;
  t.q = q;
  for (DialogType type : kAllTypes) t.counts[type] = episode_count(type, q);
  return t;
}

std::optional<BigInt> class_size(DialogType type, unsigned q) {
  if (q < 3) return std::nullopt;
  switch (type) {
    case DialogType::I:
    case DialogType::SPE:
    case DialogType::SPE_prime:
    case DialogType::PE:
    case DialogType::PE_star:
      return BigInt(1);
    case DialogType::PFA:
      return BigInt(q);
    case DialogType::C:
    case DialogType::PFA_n:
    case DialogType::PFA_n_star:
      return factorial(q);
  }
  return std::nullopt;
}

SpaceSizes space_sizes(unsigned q) {
  if (q < 3) throw DialogError(ErrorKind::invalid_argument, "space sizes need q >= 3");
  if (q > 9) throw DialogError(ErrorKind::size_guard, "2^d_cmi is impractically large for q > 9");
  SpaceSizes s;
  s.q = q;
  s.d_cmi = ordered_bell(q);
  const auto bits = static_cast<unsigned>(s.d_cmi);
  const BigInt pow2 = BigInt(1) << bits;
  s.universe = pow2 - 1;
  s.single_type = 4 * factorial(q) + q + 6;
  s.delta_published = pow2 - 4 * factorial(q) - q - 6;
  s.delta_exact = s.universe - s.single_type;
  return s;
}

}  // namespace dialog
