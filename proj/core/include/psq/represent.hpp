#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "psq/sieve.hpp"

namespace psq {

// ---------------------------------------------------------------------------
// Representation counts n = k + m^2, m >= 1.
// ---------------------------------------------------------------------------

struct RepTable {
  std::uint64_t limit = 0;                 // arrays indexed 1..limit
  std::vector<double> weighted;            // R(n) = sum Lambda(k) over k+m^2=n
  std::vector<double> prime_weighted;      // r(n) = sum log p, prime k only
  std::vector<std::uint32_t> count;        // #{(p,m): p prime, p+m^2=n}
  std::vector<std::uint8_t> square_flag;   // n is a perfect square
};

// Fills all four arrays for n <= n_max. Both weighted sums use compensated
// accumulation per n. Parallel over fixed n-ranges with in-order merge, so
// the result is bit-identical at any thread count.
RepTable rep_all(std::uint64_t n_max, const SieveTables& tables);

// Every (k, m) pair with k + m^2 = n, k a prime power; recomputed directly
// so any table entry can be re-derived on demand.
std::vector<std::pair<std::uint64_t, std::uint64_t>> rep_witnesses(
    std::uint64_t n, const SieveTables& tables);

// n that are neither squares nor a prime plus a positive square, plus the
// running count E(x) at the requested checkpoints. limit < 4 ->
// std::invalid_argument (smaller ranges are not meaningful here).
struct ExceptionalReport {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> exceptional;                      // ascending
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts; // (x, E(x))
};
ExceptionalReport exceptional_set(std::uint64_t limit,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const SieveTables& tables);

// Ordered pairs (m1, m2), both >= 1, with m1^2 + m2^2 = n, by enumeration.
std::uint64_t two_square_count(std::uint64_t n);

// sum_{d | n, d odd} (-1)^{(d-1)/2}, the divisor-sum side of the two-square
// identity; differs from two_square_count by a bounded boundary term for
// representations with a zero coordinate.
std::int64_t two_square_divisor_sum(std::uint64_t n);

// S = sum_{n<=n_max} (R(n) - r(n))^2, the squared mass of proper prime-power
// contributions, computed two ways: from the table difference and from a
// direct loop over p^k (k >= 2) and m. The ratio normalizes by
// n_max^{7/6} ln n_max.
struct PowerCorrection {
  std::uint64_t n_max = 0;
  double sum_sq = 0.0;         // from RepTable
  double sum_sq_direct = 0.0;  // from the k >= 2 loop
  double ratio = 0.0;
};
PowerCorrection prime_power_correction(std::uint64_t n_max,
                                       const SieveTables& tables);

}  // namespace psq
