#pragma once

#include <complex>
#include <cstdint>

#include "psq/sieve.hpp"

namespace psq {

// ---------------------------------------------------------------------------
// Parameters shared by all damped generating series.
// ---------------------------------------------------------------------------
//
// The series carry an exponential damping factor exp(-n/N) (exp(-n^2/N) for
// the square series) so every sum converges absolutely; eps fixes the tail
// mass that truncation is allowed to discard.

struct GenParams {
  std::uint64_t n_scale;  // damping scale N, >= 2
  double eps;             // truncation tail bound, in (0, 1e-6]

  explicit GenParams(std::uint64_t n_scale_, double eps_ = 1e-12);

  // Truncation horizons with rigorous geometric / Gaussian tail bounds.
  // prime_horizon needs the sieve limit as a crude bound on the total
  // damped mass of the von Mangoldt weights.
  std::uint64_t prime_horizon(std::uint64_t table_limit) const;
  std::uint64_t square_horizon() const;
};

// z = 1/N - 2 pi i alpha, the complex parameter every arc-local approximant
// lives on. Kept as a named helper so the convention exists in one place.
std::complex<double> z_value(const GenParams& p, double alpha);

// ---------------------------------------------------------------------------
// Damped exponential sums.
// ---------------------------------------------------------------------------

// sum_{n>=1} Lambda(n) exp(-n/N) e(n alpha), e(x) = exp(2 pi i x).
// Throws std::invalid_argument when tables.limit is below the truncation
// horizon the requested eps demands (the message names the required limit).
std::complex<double> prime_series(const GenParams& p, double alpha,
                                  const SieveTables& tables);

// Same sum with alpha presented as a/q + beta. The rational phase part is
// carried in exact integer arithmetic mod q; only beta enters the floating
// recurrence. This is what keeps major-arc evaluations honest when n*a/q
// wraps millions of times.
std::complex<double> prime_series(const GenParams& p, std::uint64_t a,
                                  std::uint64_t q, double beta,
                                  const SieveTables& tables);

// sum_{n>=1} exp(-n^2/N) e(n^2 alpha).
std::complex<double> square_series(const GenParams& p, double alpha);
std::complex<double> square_series(const GenParams& p, std::uint64_t a,
                                   std::uint64_t q, double beta);

// Two-sided sum over all integers n, equal to 2*square_series + 1 exactly by
// the n <-> -n symmetry; computed through that identity.
std::complex<double> theta_series(const GenParams& p, double alpha);

// ---------------------------------------------------------------------------
// Arc-local approximants (pointwise in a/q + beta form).
// ---------------------------------------------------------------------------

// mu(q)/phi(q) * 1/z(beta). The a argument is unused beyond the coprimality
// check but kept so call sites read like the series they approximate.
std::complex<double> prime_approximant(const GenParams& p, std::uint64_t a,
                                       std::uint64_t q, double beta);

// (sqrt(pi)/2) * G(a,q)/q * z(beta)^{-1/2}, principal branch.
std::complex<double> square_approximant(const GenParams& p, std::uint64_t a,
                                        std::uint64_t q, double beta);

// Residual of the square-series approximation at a/q + alpha, together with
// the scale q^{1/2} + q^{1/2} N^{1/2} |alpha|^{1/2} the error is expected to
// live on. Callers form the ratio. gcd(a,q) != 1 -> std::invalid_argument.
struct ThetaApproxError {
  double measured;     // |square_series(a/q + alpha) - square_approximant|
  double bound_scale;  // sqrt(q) * (1 + sqrt(N |alpha|))
};
ThetaApproxError theta_approx_error(std::uint64_t a, std::uint64_t q,
                                    double alpha, const GenParams& p);

// ---------------------------------------------------------------------------
// Jacobi transformation of the classical theta function.
// ---------------------------------------------------------------------------
//
// theta(alpha, z) = sum_{n in Z} exp(-pi (n + alpha)^2 z), Re z > 0, equals
// z^{-1/2} sum_{n in Z} exp(-pi n^2 / z) e(-n alpha) with the principal
// square root. Both sides truncate once terms drop below tol; the residual
// |direct - transformed| measures how well the identity holds numerically.

std::complex<double> jacobi_theta_direct(double alpha, std::complex<double> z,
                                         double tol = 1e-16);
std::complex<double> jacobi_theta_transformed(double alpha,
                                              std::complex<double> z,
                                              double tol = 1e-16);
double jacobi_transform_residual(double alpha, std::complex<double> z);

namespace detail {
// Horizon arithmetic and fixed-horizon evaluators, exposed so the truncation
// contract (doubling the horizon moves the value by less than eps) and the
// empty-truncation regime stay directly testable.
std::uint64_t prime_horizon(std::uint64_t n_scale, double eps,
                            std::uint64_t table_limit);
std::uint64_t square_horizon(std::uint64_t n_scale, double eps);
std::complex<double> prime_series_at_horizon(const SieveTables& tables,
                                             std::uint64_t n_scale,
                                             std::uint64_t horizon,
                                             double alpha);
std::complex<double> prime_series_at_horizon(const SieveTables& tables,
                                             std::uint64_t n_scale,
                                             std::uint64_t horizon,
                                             std::uint64_t a, std::uint64_t q,
                                             double beta);
std::complex<double> square_series_at_horizon(std::uint64_t n_scale,
                                              std::uint64_t horizon,
                                              double alpha);
std::complex<double> square_series_at_horizon(std::uint64_t n_scale,
                                              std::uint64_t horizon,
                                              std::uint64_t a, std::uint64_t q,
                                              double beta);
}  // namespace detail

}  // namespace psq
