#include "psq/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "psq/dft.hpp"
#include "psq/errors.hpp"
#include "psq/gauss.hpp"
#include "psq/kahan.hpp"
#include "psq/parallel.hpp"
#include "psq/quadrature.hpp"
#include "psq/represent.hpp"
#include "psq/series.hpp"
#include "psq/singular.hpp"

namespace psq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double series_eps = 1e-12;  // tail tolerance for internal series use

std::complex<double> z_of(std::uint64_t n_scale, double beta) {
  return {1.0 / static_cast<double>(n_scale), -two_pi * beta};
}

// Offset from the arc center computed through the exact fraction, not the
// rounded endpoints; alpha*q - a cancels exactly when alpha is the center.
double center_offset(double alpha, const FareyArc& arc) {
  return (alpha * static_cast<double>(arc.q) - static_cast<double>(arc.a)) /
         static_cast<double>(arc.q);
}

void require_mu_phi(std::uint64_t q, const SieveTables& tables,
                    const char* who) {
  if (q > tables.limit)
    throw std::invalid_argument(std::string(who) +
                                ": sieve tables do not reach q=" +
                                std::to_string(q));
}

std::uint64_t checked_horizon(std::uint64_t n_scale,
                              const SieveTables& tables, const char* who) {
  std::uint64_t m = detail::prime_horizon(n_scale, series_eps, tables.limit);
  if (tables.limit < m)
    throw std::invalid_argument(
        std::string(who) + ": sieve tables reach " +
        std::to_string(tables.limit) + " but the damped prime series needs " +
        std::to_string(m) + "; rebuild the tables at least that far");
  return m;
}

}  // namespace

std::complex<double> prime_arc_approximant(double alpha, const ArcSet& arcs,
                                           const SieveTables& tables) {
  std::int64_t idx = classify_point(arcs, alpha);
  if (idx < 0) return {0.0, 0.0};
  const FareyArc& arc = arcs.arcs[static_cast<std::size_t>(idx)];
  require_mu_phi(arc.q, tables, "prime_arc_approximant");
  int mu = tables.mu[arc.q];
  if (mu == 0) return {0.0, 0.0};
  double beta = center_offset(alpha, arc);
  return (static_cast<double>(mu) / static_cast<double>(tables.phi[arc.q])) /
         z_of(arcs.n_scale, beta);
}

std::complex<double> square_arc_approximant(double alpha, const ArcSet& arcs) {
  std::int64_t idx = classify_point(arcs, alpha);
  if (idx < 0) return {0.0, 0.0};
  const FareyArc& arc = arcs.arcs[static_cast<std::size_t>(idx)];
  double beta = center_offset(alpha, arc);
  return (std::sqrt(std::numbers::pi) / 2.0) * gauss_sum(arc.a, arc.q) /
         static_cast<double>(arc.q) / std::sqrt(z_of(arcs.n_scale, beta));
}

std::vector<double> parseval_reconstruct(std::uint64_t n_max,
                                         std::uint64_t m_samples,
                                         const SieveTables& tables) {
  if (n_max < 2)
    throw std::invalid_argument("parseval_reconstruct: need n_max >= 2");
  if (m_samples < 4 * n_max)
    throw std::invalid_argument(
        "parseval_reconstruct: m_samples=" + std::to_string(m_samples) +
        " is below the aliasing floor 4*n_max=" + std::to_string(4 * n_max) +
        " (comfortable: the first power of two above 4*n_max*ln 10)");
  std::uint64_t horizon = checked_horizon(n_max, tables, "parseval_reconstruct");
  double nd = static_cast<double>(n_max);

  // Fold the damped coefficients mod M. The fold is exact: e(v j/M) only
  // sees v mod M, and the damping keeps wrapped mass ~exp(-M/N) small.
  std::vector<std::complex<double>> g(m_samples, {0.0, 0.0});
  for (std::uint64_t p : tables.primes) {
    if (p > horizon) break;
    double lp = std::log(static_cast<double>(p));
    for (std::uint64_t v = p; v <= horizon; v *= p) {
      g[v % m_samples] += lp * std::exp(-static_cast<double>(v) / nd);
      if (v > horizon / p) break;
    }
  }
  std::vector<std::complex<double>> h(m_samples, {0.0, 0.0});
  std::uint64_t w_horizon = detail::square_horizon(n_max, series_eps);
  for (std::uint64_t n = 1; n <= w_horizon; ++n) {
    double n2 = static_cast<double>(n) * static_cast<double>(n);
    h[(n * n) % m_samples] += std::exp(-n2 / nd);
  }

  dft_inverse(g);  // g[j] = prime series at j/M
  dft_inverse(h);  // h[j] = square series at j/M
  for (std::uint64_t j = 0; j < m_samples; ++j) g[j] *= h[j];
  dft_forward(g);

  std::vector<double> out(n_max + 1, 0.0);
  double inv_m = 1.0 / static_cast<double>(m_samples);
  for (std::uint64_t n = 1; n <= n_max; ++n)
    out[n] = g[n].real() * inv_m * std::exp(static_cast<double>(n) / nd);
  return out;
}

std::complex<double> hankel_integral(std::uint64_t n, std::uint64_t n_scale) {
  if (n == 0) throw std::invalid_argument("hankel_integral: need n >= 1");
  double nd = static_cast<double>(n_scale);
  double freq = static_cast<double>(n);
  auto f = [nd, freq](double alpha) {
    std::complex<double> z{1.0 / nd, -two_pi * alpha};
    return std::polar(1.0, -two_pi * freq * alpha) / std::pow(z, 1.5);
  };
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.breakpoints = {-4.0 / nd, -2.0 / nd, -1.0 / nd, 0.0,
                     1.0 / nd,  2.0 / nd,  4.0 / nd};
  opt.max_width = 1.0 / std::max(4.0, freq / 2.0);  // resolve e(-n alpha)
  return integrate_checked(f, -0.5, 0.5, opt).value;
}

double hankel_main_term(std::uint64_t n, std::uint64_t n_scale) {
  double nd = static_cast<double>(n_scale);
  return std::exp(-static_cast<double>(n) / nd) * 2.0 *
         std::sqrt(static_cast<double>(n)) / std::sqrt(std::numbers::pi);
}

VTermValue v_main_term(std::uint64_t m, double big_p, std::uint64_t n_scale,
                       const SieveTables& tables) {
  if (m == 0 || m > n_scale)
    throw std::invalid_argument("v_main_term: need 1 <= m <= N");
  double sing = singular_series_truncated(m, big_p, tables).value;
  double nd = static_cast<double>(n_scale);
  VTermValue out;
  out.product_form = std::exp(-static_cast<double>(m) / nd) *
                     std::sqrt(static_cast<double>(m)) * sing;
  out.quadrature_form = (std::sqrt(std::numbers::pi) / 2.0) * sing *
                        hankel_integral(m, n_scale).real();
  return out;
}

namespace {

// Arc-width Hankel integral for modulus q: the a-sum in both the major-arc
// coefficient and the extension error collapses onto this one integral.
std::complex<double> arc_hankel(std::uint64_t m, std::uint64_t n_scale,
                                double half_width) {
  double nd = static_cast<double>(n_scale);
  double freq = static_cast<double>(m);
  auto f = [nd, freq](double alpha) {
    std::complex<double> z{1.0 / nd, -two_pi * alpha};
    return std::polar(1.0, -two_pi * freq * alpha) / std::pow(z, 1.5);
  };
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.breakpoints = {-1.0 / nd, 0.0, 1.0 / nd};
  opt.max_width = 1.0 / std::max(4.0, freq / 2.0);
  return integrate_checked(f, -half_width, half_width, opt).value;
}

TuCoefficient tu_single(std::uint64_t m, const ArcSet& arcs,
                        const SieveTables& tables,
                        const std::complex<double>& full) {
  auto p_max = static_cast<std::uint64_t>(std::floor(arcs.small_p));
  require_mu_phi(p_max, tables, "tu_coefficient");
  KahanCSum on_arcs, extension;
  for (std::uint64_t q = 1; q <= p_max; ++q) {
    if (tables.mu[q] == 0) continue;
    double w = (std::sqrt(std::numbers::pi) / 2.0) *
               static_cast<double>(tables.mu[q]) /
               (static_cast<double>(q) * static_cast<double>(tables.phi[q]));
    std::complex<double> a_q = residue_sum_direct(m, q);
    std::complex<double> i_q =
        arc_hankel(m, arcs.n_scale, 1.0 / (static_cast<double>(q) * arcs.big_q));
    on_arcs.add(w * a_q * i_q);
    extension.add(w * a_q * (full - i_q));
  }
  TuCoefficient out;
  std::complex<double> arcs_val = on_arcs.value();
  std::complex<double> ext_val = extension.value();
  out.coefficient = arcs_val.real() *
                    std::exp(static_cast<double>(m) /
                             static_cast<double>(arcs.n_scale));
  out.extension_error = ext_val.real();
  out.imag_residue =
      std::max(std::abs(arcs_val.imag()), std::abs(ext_val.imag()));
  return out;
}

}  // namespace

TuCoefficient tu_coefficient(std::uint64_t m, const ArcSet& arcs,
                             const SieveTables& tables) {
  if (m == 0 || m > arcs.n_scale)
    throw std::invalid_argument("tu_coefficient: need 1 <= m <= N");
  return tu_single(m, arcs, tables, hankel_integral(m, arcs.n_scale));
}

ExtensionErrorBatch extension_error_batch(const ArcSet& arcs,
                                          const SieveTables& tables,
                                          std::uint64_t m_max) {
  if (m_max == 0 || m_max > arcs.n_scale)
    throw std::invalid_argument("extension_error_batch: need 1 <= m_max <= N");
  ExtensionErrorBatch batch;
  batch.m_max = m_max;
  batch.r.assign(m_max + 1, 0.0);
  std::vector<double> imag(m_max + 1, 0.0);

  std::vector<std::size_t> bounds;
  std::size_t n_chunks = chunk_bounds(m_max, 4 * thread_count(), bounds);
  run_chunks(n_chunks, [&](std::size_t c) {
    for (std::size_t k = bounds[c]; k < bounds[c + 1]; ++k) {
      std::uint64_t m = k + 1;
      TuCoefficient tu =
          tu_single(m, arcs, tables, hankel_integral(m, arcs.n_scale));
      batch.r[m] = tu.extension_error;
      imag[m] = tu.imag_residue;
    }
  });

  KahanSum ss;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    ss.add(batch.r[m] * batch.r[m]);
    batch.max_imag_residue = std::max(batch.max_imag_residue, imag[m]);
  }
  batch.sum_sq = ss.value();
  double nd = static_cast<double>(arcs.n_scale);
  batch.normalizer = std::pow(nd * std::log(nd), 1.5);
  batch.ratio = batch.sum_sq / batch.normalizer;
  return batch;
}

LpCheckValue lp_mean_square_check(std::uint64_t q, double xi,
                                  std::uint64_t n_scale,
                                  const SieveTables& tables) {
  if (q == 0 || q > n_scale)
    throw std::invalid_argument("lp_mean_square_check: need 1 <= q <= N");
  if (!(xi > 0.0) || xi > 0.5)
    throw std::invalid_argument("lp_mean_square_check: need 0 < xi <= 1/2");
  require_mu_phi(q, tables, "lp_mean_square_check");
  std::uint64_t horizon = checked_horizon(n_scale, tables, "lp_mean_square_check");
  double nd = static_cast<double>(n_scale);

  // Damped von Mangoldt coefficients once; per residue a only the rational
  // twist changes. The series at a/q + beta is then a plain trig series in
  // beta, evaluated by a gap-stepped phase recurrence with periodic exact
  // re-anchoring. The recurrence needs the support sorted by value (the walk
  // over primes emits 2,4,8,...,3,9,... out of order).
  std::vector<std::pair<std::uint64_t, double>> support;
  for (std::uint64_t p : tables.primes) {
    if (p > horizon) break;
    double lp = std::log(static_cast<double>(p));
    for (std::uint64_t v = p; v <= horizon; v *= p) {
      support.emplace_back(v, lp * std::exp(-static_cast<double>(v) / nd));
      if (v > horizon / p) break;
    }
  }
  if (support.empty())
    throw std::invalid_argument("lp_mean_square_check: empty coefficient set");
  std::sort(support.begin(), support.end());
  std::vector<std::uint64_t> vs(support.size());
  std::vector<double> coef(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    vs[i] = support[i].first;
    coef[i] = support[i].second;
  }
  std::uint64_t max_gap = 1;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    max_gap = std::max(max_gap, vs[i + 1] - vs[i]);

  std::vector<std::complex<double>> tw(q);
  for (std::uint64_t j = 0; j < q; ++j)
    tw[j] = std::polar(1.0, two_pi * static_cast<double>(j) /
                                static_cast<double>(q));

  double mu_phi = tables.mu[q] == 0
                      ? 0.0
                      : static_cast<double>(tables.mu[q]) /
                            static_cast<double>(tables.phi[q]);

  KahanSum lhs;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    std::vector<std::complex<double>> c(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      c[i] = coef[i] * tw[vs[i] % q * a % q];

    auto integrand = [&](double beta) {
      std::vector<std::complex<double>> gap(max_gap + 1);
      for (std::uint64_t d = 1; d <= max_gap; ++d)
        gap[d] = std::polar(1.0, two_pi * static_cast<double>(d) * beta);
      std::complex<double> u = std::polar(
          1.0, two_pi * (static_cast<double>(vs[0]) * beta -
                         std::floor(static_cast<double>(vs[0]) * beta)));
      KahanCSum s;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        s.add(c[i] * u);
        if (i + 1 < vs.size()) {
          if ((i & 4095) == 4095) {
            double cycles = static_cast<double>(vs[i + 1]) * beta;
            u = std::polar(1.0, two_pi * (cycles - std::floor(cycles)));
          } else {
            u *= gap[vs[i + 1] - vs[i]];
          }
        }
      }
      std::complex<double> diff = s.value() - mu_phi / z_of(n_scale, beta);
      return std::complex<double>{std::norm(diff), 0.0};
    };

    QuadOptions opt;
    opt.rel_tol = 1e-7;
    opt.breakpoints = {-2.0 / nd, -1.0 / nd, 0.0, 1.0 / nd, 2.0 / nd};
    opt.max_width = xi / 4.0;
    lhs.add(integrate_checked(integrand, -xi, xi, opt).value.real());
  }

  LpCheckValue out;
  out.lhs = lhs.value();
  double lg = std::log(nd);
  out.normalizer = static_cast<double>(q) * nd * xi * lg * lg;
  return out;
}

MeanSquareStat mean_square_statistic(std::uint64_t n_max,
                                     const SieveTables& tables,
                                     std::uint64_t sing_cutoff) {
  RepTable rep = rep_all(n_max, tables);
  std::vector<double> sing =
      singular_series_euler_batch(1, n_max + 1, sing_cutoff, tables);
  KahanSum ss;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    double d = rep.weighted[n] -
               sing[n - 1] * std::sqrt(static_cast<double>(n));
    ss.add(d * d);
  }
  MeanSquareStat stat;
  stat.n_max = n_max;
  stat.sum_sq = ss.value();
  double nd = static_cast<double>(n_max);
  stat.normalizer = std::pow(nd * std::log(nd), 1.5);
  stat.ratio = stat.sum_sq / stat.normalizer;
  return stat;
}

}  // namespace psq
