#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "psq/farey.hpp"
#include "psq/sieve.hpp"

namespace psq {

// ---------------------------------------------------------------------------
// Arc-local approximants as functions on the dissected interval.
// ---------------------------------------------------------------------------
//
// On the arc around a/q the prime series is modeled by mu(q)/phi(q) / z'
// and the square series by (sqrt(pi)/2) G(a,q)/q / sqrt(z'), where
// z' = 1/N - 2 pi i (alpha - a/q); both vanish on minor arcs. The offset
// alpha - a/q is formed from the arc's exact (a, q), not from rounded
// endpoints, so there is no cancellation near centers.

std::complex<double> prime_arc_approximant(double alpha, const ArcSet& arcs,
                                           const SieveTables& tables);
std::complex<double> square_arc_approximant(double alpha, const ArcSet& arcs);

// ---------------------------------------------------------------------------
// Parseval / DFT closure.
// ---------------------------------------------------------------------------
//
// Samples the product of the damped prime and square series at j/M,
// transforms back, and divides out the damping. output[n] approximates the
// weighted representation count R(n) for n <= n_max; the wrap-around error
// is exp(-M/N)-small because the damping is exact on the fold. m_samples
// below 4*n_max -> std::invalid_argument naming the required bound.

std::vector<double> parseval_reconstruct(std::uint64_t n_max,
                                         std::uint64_t m_samples,
                                         const SieveTables& tables);

// ---------------------------------------------------------------------------
// Hankel-type integral.
// ---------------------------------------------------------------------------

// integral over (-1/2, 1/2] of e(-n alpha) z(alpha)^{-3/2} d alpha by checked
// adaptive quadrature (breakpoints at +-1/N where the peak lives).
std::complex<double> hankel_integral(std::uint64_t n, std::uint64_t n_scale);

// The closed form it approaches: exp(-n/N) 2 sqrt(n) / Gamma(1/2).
double hankel_main_term(std::uint64_t n, std::uint64_t n_scale);

// ---------------------------------------------------------------------------
// Main-term coefficient and the arc-extension error.
// ---------------------------------------------------------------------------

// V(m,P) two ways: exp(-m/N) sqrt(m) S(m,P) with the truncated singular
// series (closed-form Hankel value), and the same assembly with the Hankel
// integral evaluated numerically. Their gap is the Hankel truncation error
// scaled by S(m,P).
struct VTermValue {
  double product_form = 0.0;
  double quadrature_form = 0.0;
};
VTermValue v_main_term(std::uint64_t m, double big_p, std::uint64_t n_scale,
                       const SieveTables& tables);

// Fourier coefficient of the approximant product over the major arcs, and
// the error from extending each arc integral to the full interval:
//   r_m = (sqrt(pi)/2) sum_{q<=P} mu(q)/(q phi(q)) A_q(m)
//             * [ I_full(m) - I_q(m) ],
// with A_q the inner residue sum, I_q the arc-width Hankel integral and
// I_full its whole-interval version. The a-sum collapses into A_q exactly,
// so only one quadrature per q is needed.
struct TuCoefficient {
  double coefficient = 0.0;      // major-arc integral / exp(-m/N)
  double extension_error = 0.0;  // r_m
  double imag_residue = 0.0;     // assembled imaginary part, expect < 1e-8
};
TuCoefficient tu_coefficient(std::uint64_t m, const ArcSet& arcs,
                             const SieveTables& tables);

// r_m for every m <= m_max against the (N ln N)^{3/2} scale. Quadratures are
// shared across m per modulus; deterministic chunked parallelism over m.
struct ExtensionErrorBatch {
  std::uint64_t m_max = 0;
  std::vector<double> r;        // index m, entry 0 unused
  double sum_sq = 0.0;
  double normalizer = 0.0;      // (N ln N)^{3/2}
  double ratio = 0.0;
  double max_imag_residue = 0.0;
};
ExtensionErrorBatch extension_error_batch(const ArcSet& arcs,
                                          const SieveTables& tables,
                                          std::uint64_t m_max);

// ---------------------------------------------------------------------------
// Mean-square checks.
// ---------------------------------------------------------------------------

// sum over reduced residues a of integral_{-xi}^{xi}
// |prime_series(a/q + beta) - prime_approximant|^2 d beta, against the scale
// q N xi (ln N)^2. Quadrature refined near beta = 0.
struct LpCheckValue {
  double lhs = 0.0;
  double normalizer = 0.0;
};
LpCheckValue lp_mean_square_check(std::uint64_t q, double xi,
                                  std::uint64_t n_scale,
                                  const SieveTables& tables);

// The headline statistic: sum_{n<=N} (R(n) - S(n) sqrt(n))^2 with the Euler
// singular series at sing_cutoff, against (N ln N)^{3/2}.
struct MeanSquareStat {
  std::uint64_t n_max = 0;
  double sum_sq = 0.0;
  double normalizer = 0.0;
  double ratio = 0.0;
};
MeanSquareStat mean_square_statistic(std::uint64_t n_max,
                                     const SieveTables& tables,
                                     std::uint64_t sing_cutoff);

}  // namespace psq
