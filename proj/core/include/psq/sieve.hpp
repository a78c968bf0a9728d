#pragma once

#include <cstdint>
#include <vector>

namespace psq {

// Immutable arithmetic-function tables for 1..limit.
//
// lambda[n] is the von Mangoldt function on the natural-log scale. The exact
// witness (p, k) with p^k = n is kept alongside in pp_base/pp_exp so any
// Lambda-weighted sum can be re-derived from exact data instead of the stored
// float (mean-square statistics are sensitive to log accumulation error).
struct SieveTables {
  std::uint64_t limit = 0;
  std::vector<double> lambda;          // log p at prime powers, else 0
  std::vector<std::uint32_t> pp_base;  // p when n = p^k, else 0
  std::vector<std::uint8_t> pp_exp;    // k when n = p^k, else 0
  std::vector<std::int8_t> mu;         // Moebius function
  std::vector<std::uint64_t> phi;      // Euler totient
  std::vector<std::uint32_t> tau;      // divisor count
  std::vector<std::uint64_t> primes;   // ascending

  bool is_prime(std::uint64_t n) const {
    return n <= limit && n >= 2 && pp_exp[n] == 1;
  }
};

// Builds the tables: one linear sieve below the segment threshold, a segmented
// factorization sieve above it (segments fill in parallel over disjoint
// ranges, so the result is identical at any thread count).
SieveTables build_sieve(std::uint64_t limit);

// Largest limit build_sieve accepts before reporting a resource error; the
// tables cost ~26 bytes per entry.
inline constexpr std::uint64_t sieve_limit_budget = 1ull << 27;
inline constexpr std::uint64_t sieve_segment_threshold = 1ull << 24;

// Legendre symbol (n/p) for an odd prime p via Euler's criterion with fast
// modular exponentiation. Returns 0 iff p | n, else +/-1.
int legendre_symbol(std::uint64_t n, std::uint64_t p);

// Exact integer square root (floor) and perfect-square test; no floating point.
std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::uint64_t n);

namespace detail {
// Both construction strategies, exposed so they can be cross-checked.
SieveTables build_sieve_linear(std::uint64_t limit);
SieveTables build_sieve_segmented(std::uint64_t limit);
}  // namespace detail

}  // namespace psq
