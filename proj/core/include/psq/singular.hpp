#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "psq/sieve.hpp"

namespace psq {

// ---------------------------------------------------------------------------
// Singular series for prime-plus-square representations.
// ---------------------------------------------------------------------------
//
// Two independent evaluators on purpose: the Euler product over odd primes
//   prod_{p>2} (1 - (n|p)/(p-1))        ((n|p) the Legendre symbol)
// and the Gauss-sum truncation
//   sum_{q<=P} mu(q)/(q phi(q)) sum*_a G(a,q) e(-a n / q).
// Each is the other's oracle; neither is trusted standalone.

enum class SingularMode { euler, truncated };

struct SingularValue {
  std::uint64_t n = 0;
  double value = 0.0;
  SingularMode mode = SingularMode::euler;
  double parameter = 0.0;      // prime cutoff (euler) or modulus cutoff P
  double tail_estimate = 0.0;  // heuristic only, never a certified bound
  double imag_residue = 0.0;   // |Im| discarded when realifying (truncated)
};

// Euler product over odd primes p <= p_cutoff. Squares short-circuit to an
// exact 0 before any product is formed; for p | n the factor is exactly 1.
// tail_estimate records exp(sum_{p_cutoff < p <= 2 p_cutoff} 1/(p-1)) - 1.
// p_cutoff < 3 -> std::invalid_argument; p_cutoff must not exceed the sieve.
SingularValue singular_series_euler(std::uint64_t n, std::uint64_t p_cutoff,
                                    const SieveTables& tables);

// Same product accumulated as a sum of logs, for the accumulation-order
// cross-check. Not valid when some factor vanishes or goes negative, so it
// skips straight to the plain product in that case.
double singular_series_euler_log(std::uint64_t n, std::uint64_t p_cutoff,
                                 const SieveTables& tables);

// Euler values for every n in [n_lo, n_hi), one prime at a time with residue
// sweeps; this is what the mean-square scan leans on. Deterministic at any
// thread count (fixed chunks, in-order merge).
std::vector<double> singular_series_euler_batch(std::uint64_t n_lo,
                                                std::uint64_t n_hi,
                                                std::uint64_t p_cutoff,
                                                const SieveTables& tables);

// Gauss-sum truncation over moduli q <= P. The double sum is assembled in
// complex arithmetic; conjugate pairing a <-> q-a makes it real, and an
// imaginary residue above 1e-6 throws consistency_error (the value carries
// the real part, imag_residue what was discarded). Only squarefree q
// contribute; mu kills the rest.
SingularValue singular_series_truncated(std::uint64_t n, double big_p,
                                        const SieveTables& tables);

// Truncated values for every n in [n_lo, n_hi). The Gauss-sum cache for
// q <= P is built once and shared, which is what makes scanning a thousand
// n at P = 1000 affordable.
std::vector<SingularValue> singular_series_truncated_batch(
    std::uint64_t n_lo, std::uint64_t n_hi, double big_p,
    const SieveTables& tables);

// The inner residue sum A_q(n) = sum*_a G(a,q) e(-a n / q), both as direct
// double summation (ground truth) and through the multiplicative closed form
// (q odd squarefree: q * prod_{p|q} (n|p); zero otherwise).
std::complex<double> residue_sum_direct(std::uint64_t n, std::uint64_t q);
double residue_sum(std::uint64_t n, std::uint64_t q, const SieveTables& tables);

// |truncated(P) - euler(p_cutoff)| for each P in p_list (ascending).
// n a perfect square -> std::invalid_argument.
struct ConvergenceReport {
  std::uint64_t n = 0;
  double reference = 0.0;               // Euler value at p_cutoff
  std::vector<double> p_values;         // the P grid
  std::vector<double> discrepancies;    // |truncated - reference|
};
ConvergenceReport convergence_check(std::uint64_t n,
                                    const std::vector<double>& p_list,
                                    std::uint64_t p_cutoff,
                                    const SieveTables& tables);

// min over non-square n in [100, limit] of euler(n) * (ln ln n)^2, the
// finite-range stand-in for the lower-bound heuristic. limit < 100 ->
// std::invalid_argument.
struct LowerBoundScan {
  double min_value = 0.0;
  std::uint64_t argmin = 0;
  std::uint64_t scanned = 0;   // how many n were examined
};
LowerBoundScan singular_lower_bound_scan(std::uint64_t limit,
                                         std::uint64_t p_cutoff,
                                         const SieveTables& tables);

}  // namespace psq
