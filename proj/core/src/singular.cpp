#include "psq/singular.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "psq/errors.hpp"
#include "psq/gauss.hpp"
#include "psq/kahan.hpp"
#include "psq/parallel.hpp"

namespace psq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_euler_args(std::uint64_t n, std::uint64_t p_cutoff,
                        const SieveTables& tables) {
  if (n == 0) throw std::invalid_argument("singular series: n must be >= 1");
  if (p_cutoff < 3)
    throw std::invalid_argument("singular series: prime cutoff must be >= 3");
  if (p_cutoff > tables.limit)
    throw std::invalid_argument(
        "singular series: prime cutoff " + std::to_string(p_cutoff) +
        " exceeds the sieve limit " + std::to_string(tables.limit));
}

double euler_factor(std::uint64_t n, std::uint64_t p) {
  return 1.0 - static_cast<double>(legendre_symbol(n, p)) /
                   static_cast<double>(p - 1);
}

double tail_heuristic(std::uint64_t p_cutoff, const SieveTables& tables) {
  // Next-octave mass of the log-derivative; a heuristic size for what the
  // missing factors could still move the product by. Never a bound.
  KahanSum s;
  std::uint64_t hi = std::min(tables.limit, 2 * p_cutoff);
  for (std::uint64_t p : tables.primes) {
    if (p <= p_cutoff) continue;
    if (p > hi) break;
    s.add(1.0 / static_cast<double>(p - 1));
  }
  return std::expm1(s.value());
}

// Shared Gauss-sum cache for the truncated evaluator: for each squarefree
// q <= P the coprime residues with their Gauss sums, plus e(-j/q) tables so
// evaluation at any n is a pure table walk.
struct QTerm {
  std::uint64_t q;
  double weight;  // mu(q) / (q phi(q))
  std::vector<std::pair<std::uint64_t, std::complex<double>>> gauss;
  std::vector<std::complex<double>> neg_tw;  // e(-j/q)
};

std::vector<QTerm> build_qterms(double big_p, const SieveTables& tables) {
  if (!(big_p >= 1.0))
    throw std::invalid_argument("singular_series_truncated: need P >= 1");
  auto q_max = static_cast<std::uint64_t>(std::floor(big_p));
  if (q_max > tables.limit)
    throw std::invalid_argument(
        "singular_series_truncated: modulus cutoff " + std::to_string(q_max) +
        " exceeds the sieve limit " + std::to_string(tables.limit));

  std::vector<QTerm> terms;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    if (tables.mu[q] == 0) continue;
    QTerm t;
    t.q = q;
    t.weight = static_cast<double>(tables.mu[q]) /
               (static_cast<double>(q) * static_cast<double>(tables.phi[q]));
    t.neg_tw.resize(q);
    std::vector<std::complex<double>> tw(q);
    for (std::uint64_t j = 0; j < q; ++j) {
      tw[j] = std::polar(1.0, two_pi * static_cast<double>(j) /
                                  static_cast<double>(q));
      t.neg_tw[j] = std::conj(tw[j]);
    }
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      // G(a,q) with the shared twiddle table; same index recurrence as
      // gauss_sum but without rebuilding the table per residue.
      std::uint64_t r = a % q, d = (3 * a) % q, dd = (2 * a) % q;
      KahanCSum sum;
      for (std::uint64_t k = 1; k <= q; ++k) {
        sum.add(tw[r]);
        r += d;
        if (r >= q) r -= q;
        d += dd;
        if (d >= q) d -= q;
      }
      t.gauss.emplace_back(a, sum.value());
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

// Truncated series at n over the cached moduli, complex until the caller
// decides what to do with the imaginary residue.
std::complex<double> eval_qterms(const std::vector<QTerm>& terms,
                                 std::uint64_t n) {
  KahanCSum total;
  for (const QTerm& t : terms) {
    std::uint64_t nr = n % t.q;
    std::complex<double> inner{0.0, 0.0};
    for (const auto& [a, g] : t.gauss) inner += g * t.neg_tw[a * nr % t.q];
    total.add(t.weight * inner);
  }
  return total.value();
}

SingularValue realify(std::uint64_t n, double big_p,
                      std::complex<double> total) {
  SingularValue out;
  out.n = n;
  out.mode = SingularMode::truncated;
  out.parameter = big_p;
  out.imag_residue = std::abs(total.imag());
  if (out.imag_residue > 1e-6)
    throw consistency_error(
        "singular_series_truncated: imaginary residue " +
        std::to_string(total.imag()) + " at n=" + std::to_string(n) +
        "; conjugate pairing should have cancelled it");
  out.value = total.real();
  return out;
}

}  // namespace

SingularValue singular_series_euler(std::uint64_t n, std::uint64_t p_cutoff,
                                    const SieveTables& tables) {
  require_euler_args(n, p_cutoff, tables);
  SingularValue out;
  out.n = n;
  out.mode = SingularMode::euler;
  out.parameter = static_cast<double>(p_cutoff);
  if (is_square(n)) return out;  // exact zero by definition, tail 0
  double prod = 1.0;
  for (std::uint64_t p : tables.primes) {
    if (p == 2) continue;
    if (p > p_cutoff) break;
    prod *= euler_factor(n, p);
  }
  out.value = prod;
  out.tail_estimate = tail_heuristic(p_cutoff, tables);
  return out;
}

double singular_series_euler_log(std::uint64_t n, std::uint64_t p_cutoff,
                                 const SieveTables& tables) {
  require_euler_args(n, p_cutoff, tables);
  if (is_square(n)) return 0.0;
  KahanSum logsum;
  for (std::uint64_t p : tables.primes) {
    if (p == 2) continue;
    if (p > p_cutoff) break;
    double f = euler_factor(n, p);
    if (!(f > 0.0)) return singular_series_euler(n, p_cutoff, tables).value;
    logsum.add(std::log(f));
  }
  return std::exp(logsum.value());
}

std::vector<double> singular_series_euler_batch(std::uint64_t n_lo,
                                                std::uint64_t n_hi,
                                                std::uint64_t p_cutoff,
                                                const SieveTables& tables) {
  if (n_lo < 1 || n_hi < n_lo)
    throw std::invalid_argument("euler batch: need 1 <= n_lo <= n_hi");
  require_euler_args(n_lo, p_cutoff, tables);
  std::size_t len = n_hi - n_lo;
  std::vector<double> acc(len, 1.0);
  if (len == 0) return acc;

  // Primes small enough for a residue-indexed factor table sweep the range;
  // the rare big ones fall back to a per-element Legendre evaluation. Both
  // paths apply factors in ascending-p order, so the batch matches the
  // scalar evaluator bit for bit.
  constexpr std::uint64_t table_cap = 1ull << 15;
  std::vector<std::uint64_t> small_ps, large_ps;
  for (std::uint64_t p : tables.primes) {
    if (p == 2) continue;
    if (p > p_cutoff) break;
    (p <= table_cap ? small_ps : large_ps).push_back(p);
  }

  std::vector<std::vector<double>> fac(small_ps.size());
  run_chunks(small_ps.size(), [&](std::size_t i) {
    std::uint64_t p = small_ps[i];
    std::vector<std::int8_t> ls(p, -1);
    ls[0] = 0;
    for (std::uint64_t x = 1; x <= (p - 1) / 2; ++x) ls[x * x % p] = 1;
    auto& f = fac[i];
    f.resize(p);
    for (std::uint64_t r = 0; r < p; ++r)
      f[r] = 1.0 - static_cast<double>(ls[r]) / static_cast<double>(p - 1);
  });

  std::vector<std::size_t> bounds;
  std::size_t n_chunks = chunk_bounds(len, 16 * thread_count(), bounds);
  run_chunks(n_chunks, [&](std::size_t c) {
    std::size_t lo = bounds[c], hi = bounds[c + 1];
    for (std::size_t i = 0; i < small_ps.size(); ++i) {
      std::uint64_t p = small_ps[i];
      const double* f = fac[i].data();
      std::uint64_t r = (n_lo + lo) % p;
      for (std::size_t k = lo; k < hi; ++k) {
        acc[k] *= f[r];
        if (++r == p) r = 0;
      }
    }
    for (std::uint64_t p : large_ps)
      for (std::size_t k = lo; k < hi; ++k) acc[k] *= euler_factor(n_lo + k, p);
    for (std::size_t k = lo; k < hi; ++k)
      if (is_square(n_lo + k)) acc[k] = 0.0;
  });
  return acc;
}

SingularValue singular_series_truncated(std::uint64_t n, double big_p,
                                        const SieveTables& tables) {
  if (n == 0) throw std::invalid_argument("singular series: n must be >= 1");
  auto terms = build_qterms(big_p, tables);
  return realify(n, big_p, eval_qterms(terms, n));
}

std::vector<SingularValue> singular_series_truncated_batch(
    std::uint64_t n_lo, std::uint64_t n_hi, double big_p,
    const SieveTables& tables) {
  if (n_lo < 1 || n_hi < n_lo)
    throw std::invalid_argument("truncated batch: need 1 <= n_lo <= n_hi");
  auto terms = build_qterms(big_p, tables);
  std::vector<SingularValue> out(n_hi - n_lo);
  std::vector<std::size_t> bounds;
  std::size_t n_chunks =
      chunk_bounds(out.size(), 8 * thread_count(), bounds);
  run_chunks(n_chunks, [&](std::size_t c) {
    for (std::size_t k = bounds[c]; k < bounds[c + 1]; ++k)
      out[k] = realify(n_lo + k, big_p, eval_qterms(terms, n_lo + k));
  });
  return out;
}

std::complex<double> residue_sum_direct(std::uint64_t n, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("residue_sum: q must be positive");
  std::vector<std::complex<double>> neg_tw(q);
  for (std::uint64_t j = 0; j < q; ++j)
    neg_tw[j] = std::polar(1.0, -two_pi * static_cast<double>(j) /
                                    static_cast<double>(q));
  std::uint64_t nr = n % q;
  KahanCSum sum;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    sum.add(gauss_sum(a, q) * neg_tw[a * nr % q]);
  }
  return sum.value();
}

double residue_sum(std::uint64_t n, std::uint64_t q,
                   const SieveTables& tables) {
  if (q == 0) throw std::invalid_argument("residue_sum: q must be positive");
  if (q > tables.limit)
    throw std::invalid_argument("residue_sum: q exceeds the sieve limit");
  if (q == 1) return 1.0;
  // Multiplicative closed form: vanishes off odd squarefree q, and each odd
  // prime factor contributes p * (n|p).
  if (q % 2 == 0 || tables.mu[q] == 0) return 0.0;
  int sign = 1;
  std::uint64_t rest = q;
  for (std::uint64_t p : tables.primes) {
    if (p * p > rest) break;
    if (rest % p) continue;
    rest /= p;
    int ls = legendre_symbol(n, p);
    if (ls == 0) return 0.0;
    sign *= ls;
  }
  if (rest > 1) {
    int ls = legendre_symbol(n, rest);
    if (ls == 0) return 0.0;
    sign *= ls;
  }
  return static_cast<double>(sign) * static_cast<double>(q);
}

ConvergenceReport convergence_check(std::uint64_t n,
                                    const std::vector<double>& p_list,
                                    std::uint64_t p_cutoff,
                                    const SieveTables& tables) {
  if (is_square(n))
    throw std::invalid_argument(
        "convergence_check: n=" + std::to_string(n) +
        " is a perfect square; the full series is identically 0 there and "
        "the truncation does not converge to it");
  ConvergenceReport report;
  report.n = n;
  report.reference = singular_series_euler(n, p_cutoff, tables).value;
  report.p_values = p_list;
  if (p_list.empty()) return report;
  auto terms = build_qterms(p_list.back(), tables);
  for (double p : p_list) {
    // Prefix walk of the same cached terms; identical summation order makes
    // each entry exactly the standalone truncated value.
    KahanCSum total;
    for (const QTerm& t : terms) {
      if (static_cast<double>(t.q) > p) break;
      std::uint64_t nr = n % t.q;
      std::complex<double> inner{0.0, 0.0};
      for (const auto& [a, g] : t.gauss) inner += g * t.neg_tw[a * nr % t.q];
      total.add(t.weight * inner);
    }
    report.discrepancies.push_back(
        std::abs(total.value().real() - report.reference));
  }
  return report;
}

LowerBoundScan singular_lower_bound_scan(std::uint64_t limit,
                                         std::uint64_t p_cutoff,
                                         const SieveTables& tables) {
  if (limit < 100)
    throw std::invalid_argument("singular_lower_bound_scan: need limit >= 100");
  auto values = singular_series_euler_batch(100, limit + 1, p_cutoff, tables);
  LowerBoundScan scan;
  scan.min_value = std::numeric_limits<double>::infinity();
  for (std::uint64_t n = 100; n <= limit; ++n) {
    if (is_square(n)) continue;
    ++scan.scanned;
    double loglog = std::log(std::log(static_cast<double>(n)));
    double v = values[n - 100] * loglog * loglog;
    if (v < scan.min_value) {
      scan.min_value = v;
      scan.argmin = n;
    }
  }
  return scan;
}

}  // namespace psq
