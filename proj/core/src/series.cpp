#include "psq/series.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "psq/gauss.hpp"
#include "psq/kahan.hpp"

namespace psq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::complex<double> unit_phase(double cycles) {
  double frac = cycles - std::floor(cycles);
  return std::polar(1.0, two_pi * frac);
}

// mu and phi of a single small modulus by trial division; the approximants
// see q <= P ~ sqrt(N) and must not depend on sieve tables being around.
void mu_phi(std::uint64_t q, int& mu, std::uint64_t& phi) {
  mu = 1;
  phi = 1;
  std::uint64_t rest = q;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    rest /= p;
    if (rest % p == 0) {  // squared factor
      mu = 0;
      std::uint64_t pk = p;
      while (rest % p == 0) {
        rest /= p;
        pk *= p;
      }
      phi *= pk * (p - 1);
    } else {
      mu = -mu;
      phi *= p - 1;
    }
  }
  if (rest > 1) {
    mu = -mu;
    phi *= rest - 1;
  }
}

}  // namespace

GenParams::GenParams(std::uint64_t n_scale_, double eps_)
    : n_scale(n_scale_), eps(eps_) {
  if (n_scale < 2)
    throw std::invalid_argument("GenParams: damping scale must be >= 2");
  if (!(eps > 0.0) || eps > 1e-6)
    throw std::invalid_argument("GenParams: eps must lie in (0, 1e-6]");
}

namespace detail {

std::uint64_t prime_horizon(std::uint64_t n_scale, double eps,
                            std::uint64_t table_limit) {
  // Crude but rigorous: the whole damped von Mangoldt mass is < 2*limit,
  // so cutting at M = N ln(2*limit/eps) leaves a tail below eps.
  double arg = 2.0 * static_cast<double>(table_limit) / eps;
  if (arg <= 1.0) return 0;
  return static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(n_scale) * std::log(arg)));
}

std::uint64_t square_horizon(std::uint64_t n_scale, double eps) {
  if (eps >= 1.0) return 0;
  // Smallest M whose geometric tail bound
  //   exp(-(M+1)^2/N) / (1 - exp(-(2M+3)/N))
  // drops below eps; the seed is the solution without the denominator.
  double nd = static_cast<double>(n_scale);
  auto tail = [nd](double m) {
    return std::exp(-(m + 1.0) * (m + 1.0) / nd) /
           -std::expm1(-(2.0 * m + 3.0) / nd);
  };
  double m = std::floor(std::sqrt(nd * std::log(1.0 / eps))) - 1.0;
  if (m < 0.0) m = 0.0;
  while (tail(m) >= eps) m += 1.0;
  return static_cast<std::uint64_t>(m);
}

std::complex<double> prime_series_at_horizon(const SieveTables& tables,
                                             std::uint64_t n_scale,
                                             std::uint64_t horizon,
                                             double alpha) {
  KahanCSum sum;
  double nd = static_cast<double>(n_scale);
  for (std::uint64_t p : tables.primes) {
    if (p > horizon) break;
    double lp = std::log(static_cast<double>(p));
    for (std::uint64_t v = p; v <= horizon; v *= p) {
      double damp = lp * std::exp(-static_cast<double>(v) / nd);
      sum.add(damp * unit_phase(static_cast<double>(v) * alpha));
      if (v > horizon / p) break;
    }
  }
  return sum.value();
}

std::complex<double> prime_series_at_horizon(const SieveTables& tables,
                                             std::uint64_t n_scale,
                                             std::uint64_t horizon,
                                             std::uint64_t a, std::uint64_t q,
                                             double beta) {
  if (q == 0) throw std::invalid_argument("prime_series: q must be positive");
  std::vector<std::complex<double>> tw(q);
  for (std::uint64_t j = 0; j < q; ++j)
    tw[j] = std::polar(1.0, two_pi * static_cast<double>(j) /
                                static_cast<double>(q));
  std::uint64_t am = a % q;
  KahanCSum sum;
  double nd = static_cast<double>(n_scale);
  for (std::uint64_t p : tables.primes) {
    if (p > horizon) break;
    double lp = std::log(static_cast<double>(p));
    for (std::uint64_t v = p; v <= horizon; v *= p) {
      double damp = lp * std::exp(-static_cast<double>(v) / nd);
      std::uint64_t j = (v % q) * am % q;  // exact rational phase part
      sum.add(damp * tw[j] * unit_phase(static_cast<double>(v) * beta));
      if (v > horizon / p) break;
    }
  }
  return sum.value();
}

std::complex<double> square_series_at_horizon(std::uint64_t n_scale,
                                              std::uint64_t horizon,
                                              double alpha) {
  KahanCSum sum;
  double nd = static_cast<double>(n_scale);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    double n2 = static_cast<double>(n) * static_cast<double>(n);
    sum.add(std::exp(-n2 / nd) * unit_phase(n2 * alpha));
  }
  return sum.value();
}

std::complex<double> square_series_at_horizon(std::uint64_t n_scale,
                                              std::uint64_t horizon,
                                              std::uint64_t a, std::uint64_t q,
                                              double beta) {
  if (q == 0) throw std::invalid_argument("square_series: q must be positive");
  std::vector<std::complex<double>> tw(q);
  for (std::uint64_t j = 0; j < q; ++j)
    tw[j] = std::polar(1.0, two_pi * static_cast<double>(j) /
                                static_cast<double>(q));
  std::uint64_t am = a % q;
  KahanCSum sum;
  double nd = static_cast<double>(n_scale);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    double n2 = static_cast<double>(n) * static_cast<double>(n);
    std::uint64_t j = ((n % q) * (n % q)) % q * am % q;
    sum.add(std::exp(-n2 / nd) * tw[j] * unit_phase(n2 * beta));
  }
  return sum.value();
}

}  // namespace detail

std::uint64_t GenParams::prime_horizon(std::uint64_t table_limit) const {
  return detail::prime_horizon(n_scale, eps, table_limit);
}

std::uint64_t GenParams::square_horizon() const {
  return detail::square_horizon(n_scale, eps);
}

std::complex<double> z_value(const GenParams& p, double alpha) {
  return {1.0 / static_cast<double>(p.n_scale), -two_pi * alpha};
}

namespace {

std::uint64_t checked_prime_horizon(const GenParams& p,
                                    const SieveTables& tables) {
  std::uint64_t m = p.prime_horizon(tables.limit);
  if (tables.limit < m)
    throw std::invalid_argument(
        "prime_series: sieve tables reach " + std::to_string(tables.limit) +
        " but eps=" + std::to_string(p.eps) + " needs the horizon " +
        std::to_string(m) + "; rebuild the tables at least that far");
  return m;
}

}  // namespace

std::complex<double> prime_series(const GenParams& p, double alpha,
                                  const SieveTables& tables) {
  return detail::prime_series_at_horizon(tables, p.n_scale,
                                         checked_prime_horizon(p, tables),
                                         alpha);
}

std::complex<double> prime_series(const GenParams& p, std::uint64_t a,
                                  std::uint64_t q, double beta,
                                  const SieveTables& tables) {
  return detail::prime_series_at_horizon(tables, p.n_scale,
                                         checked_prime_horizon(p, tables), a,
                                         q, beta);
}

std::complex<double> square_series(const GenParams& p, double alpha) {
  return detail::square_series_at_horizon(p.n_scale, p.square_horizon(),
                                          alpha);
}

std::complex<double> square_series(const GenParams& p, std::uint64_t a,
                                   std::uint64_t q, double beta) {
  return detail::square_series_at_horizon(p.n_scale, p.square_horizon(), a, q,
                                          beta);
}

std::complex<double> theta_series(const GenParams& p, double alpha) {
  return 2.0 * square_series(p, alpha) + 1.0;
}

std::complex<double> prime_approximant(const GenParams& p, std::uint64_t a,
                                       std::uint64_t q, double beta) {
  if (q == 0 || std::gcd(a, q) != 1)
    throw std::invalid_argument("prime_approximant: need gcd(a,q)=1, q>=1");
  int mu;
  std::uint64_t phi;
  mu_phi(q, mu, phi);
  if (mu == 0) return {0.0, 0.0};
  return (static_cast<double>(mu) / static_cast<double>(phi)) /
         z_value(p, beta);
}

std::complex<double> square_approximant(const GenParams& p, std::uint64_t a,
                                        std::uint64_t q, double beta) {
  if (q == 0 || std::gcd(a, q) != 1)
    throw std::invalid_argument("square_approximant: need gcd(a,q)=1, q>=1");
  std::complex<double> g = gauss_sum(a, q);
  return (std::sqrt(std::numbers::pi) / 2.0) * g /
         static_cast<double>(q) / std::sqrt(z_value(p, beta));
}

ThetaApproxError theta_approx_error(std::uint64_t a, std::uint64_t q,
                                    double alpha, const GenParams& p) {
  if (q == 0 || std::gcd(a, q) != 1)
    throw std::invalid_argument("theta_approx_error: need gcd(a,q)=1, q>=1");
  std::complex<double> series = square_series(p, a, q, alpha);
  std::complex<double> main = square_approximant(p, a, q, alpha);
  double qd = static_cast<double>(q);
  double nd = static_cast<double>(p.n_scale);
  ThetaApproxError out;
  out.measured = std::abs(series - main);
  out.bound_scale = std::sqrt(qd) * (1.0 + std::sqrt(nd * std::abs(alpha)));
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi transformation.
// ---------------------------------------------------------------------------

std::complex<double> jacobi_theta_direct(double alpha, std::complex<double> z,
                                         double tol) {
  if (!(z.real() > 0.0))
    throw std::invalid_argument("jacobi_theta_direct: need Re z > 0");
  // Terms fall below tol once pi (n+alpha)^2 Re z > ln(1/tol); the Gaussian
  // decay makes the discarded tail a small multiple of tol.
  double b = std::sqrt(std::log(1.0 / tol) / (std::numbers::pi * z.real()));
  auto n_lo = static_cast<std::int64_t>(std::floor(-alpha - b));
  auto n_hi = static_cast<std::int64_t>(std::ceil(-alpha + b));
  KahanCSum sum;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    double t = static_cast<double>(n) + alpha;
    sum.add(std::exp(-std::numbers::pi * t * t * z));
  }
  return sum.value();
}

std::complex<double> jacobi_theta_transformed(double alpha,
                                              std::complex<double> z,
                                              double tol) {
  if (!(z.real() > 0.0))
    throw std::invalid_argument("jacobi_theta_transformed: need Re z > 0");
  double re_inv = z.real() / std::norm(z);  // Re(1/z)
  double b = std::sqrt(std::log(1.0 / tol) / (std::numbers::pi * re_inv));
  auto n_max = static_cast<std::int64_t>(std::ceil(b));
  std::complex<double> inv = 1.0 / z;
  KahanCSum sum;
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    double nd = static_cast<double>(n);
    sum.add(std::exp(-std::numbers::pi * nd * nd * inv -
                     std::complex<double>{0.0, two_pi * nd * alpha}));
  }
  return sum.value() / std::sqrt(z);  // principal branch, sqrt(1) = 1
}

double jacobi_transform_residual(double alpha, std::complex<double> z) {
  return std::abs(jacobi_theta_direct(alpha, z) -
                  jacobi_theta_transformed(alpha, z));
}

}  // namespace psq
