#include "psq/gauss.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "psq/kahan.hpp"
#include "psq/parallel.hpp"

namespace psq {

namespace {

// e(j/q) for j = 0..q-1. Every Gauss-sum phase is reduced into this table,
// so the transcendental functions run q times total, not q^2.
std::vector<std::complex<double>> twiddle_table(std::uint64_t q) {
  std::vector<std::complex<double>> tw(q);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(q);
  for (std::uint64_t j = 0; j < q; ++j)
    tw[j] = std::polar(1.0, step * static_cast<double>(j));
  return tw;
}

void require_coprime(std::uint64_t a, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("gauss_sum: q must be positive");
  if (std::gcd(a, q) != 1)
    throw std::invalid_argument("gauss_sum: gcd(a,q) = " +
                                std::to_string(std::gcd(a, q)) + ", need 1");
}

}  // namespace

std::complex<double> gauss_sum(std::uint64_t a, std::uint64_t n,
                               std::uint64_t q) {
  require_coprime(a, q);
  auto tw = twiddle_table(q);
  // r_k = (a k^2 + n k) mod q advances by d_k = a(2k+1) + n, which itself
  // advances by 2a; both recurrences stay reduced mod q in integers.
  std::uint64_t am = a % q, nm = n % q;
  std::uint64_t r = (am + nm) % q;            // k = 1
  std::uint64_t d = (3 * am + nm) % q;        // r_2 - r_1
  std::uint64_t dd = (2 * am) % q;
  KahanCSum sum;
  for (std::uint64_t k = 1; k <= q; ++k) {
    sum.add(tw[r]);
    r += d;
    if (r >= q) r -= q;
    d += dd;
    if (d >= q) d -= q;
  }
  return sum.value();
}

std::complex<double> gauss_sum(std::uint64_t a, std::uint64_t q) {
  return gauss_sum(a, 0, q);
}

std::vector<std::complex<double>> gauss_sum_row(std::uint64_t a,
                                                std::uint64_t q) {
  require_coprime(a, q);
  auto tw = twiddle_table(q);
  // idx[k] tracks (a k^2 + n k) mod q; stepping n -> n+1 adds k.
  std::vector<std::uint64_t> idx(q + 1);
  std::uint64_t am = a % q;
  for (std::uint64_t k = 1; k <= q; ++k)
    idx[k] = (am * ((k * k) % q)) % q;
  std::vector<std::complex<double>> row(q);
  for (std::uint64_t n = 0; n < q; ++n) {
    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t k = 1; k <= q; ++k) {
      sum += tw[idx[k]];
      idx[k] += k;
      if (idx[k] >= q) idx[k] -= q;
    }
    row[n] = sum;
  }
  return row;
}

GaussBoundReport verify_gauss_bound(std::uint64_t q_max) {
  GaussBoundReport report;
  report.q_max = q_max;
  if (q_max < 2) return report;  // degenerate range, nothing to scan

  struct PerQ {
    std::uint64_t triples = 0;
    std::vector<GaussViolation> violations;
    double worst_ratio = 0.0;
    std::uint64_t worst_a = 0, worst_n = 0;
    bool trichotomy_ok = true;
    double max_integer_residue = 0.0;
  };
  std::vector<PerQ> per_q(q_max + 1);

  auto scan_q = [&](std::size_t chunk) {
    std::uint64_t q = chunk + 1;
    PerQ& out = per_q[q];
    auto tw = twiddle_table(q);
    std::vector<std::uint64_t> idx(q + 1);
    const double bound = 2.0 * static_cast<double>(q);
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::uint64_t k = 1; k <= q; ++k)
        idx[k] = (a * ((k * k) % q)) % q;
      for (std::uint64_t n = 0; n < q; ++n) {
        std::complex<double> sum{0.0, 0.0};
        for (std::uint64_t k = 1; k <= q; ++k) {
          sum += tw[idx[k]];
          idx[k] += k;
          if (idx[k] >= q) idx[k] -= q;
        }
        ++out.triples;
        double abs2 = std::norm(sum);
        double ratio = abs2 / bound;
        if (ratio > out.worst_ratio) {
          out.worst_ratio = ratio;
          out.worst_a = a;
          out.worst_n = n;
        }
        // |G|^2 lands on an integer (0, q or 2q in fact); 1e-6*q of slack
        // is pure float noise, far below the q-sized jump a violation needs.
        if (abs2 > bound + 1e-6 * static_cast<double>(q))
          out.violations.push_back({q, a, n, sum, abs2});
        double residue = std::abs(abs2 - std::round(abs2)) /
                         static_cast<double>(q);
        if (residue > out.max_integer_residue) out.max_integer_residue = residue;
        if (n == 0) {
          double g = std::abs(sum);
          double d0 = std::abs(g);
          double d1 = std::abs(g - std::sqrt(static_cast<double>(q)));
          double d2 = std::abs(g - std::sqrt(2.0 * static_cast<double>(q)));
          if (std::min({d0, d1, d2}) > 1e-9) out.trichotomy_ok = false;
        }
      }
    }
  };
  run_chunks(q_max, scan_q);

  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const PerQ& in = per_q[q];
    report.triples_checked += in.triples;
    report.violations.insert(report.violations.end(), in.violations.begin(),
                             in.violations.end());
    if (in.worst_ratio > report.worst_ratio) {
      report.worst_ratio = in.worst_ratio;
      report.worst_q = q;
      report.worst_a = in.worst_a;
      report.worst_n = in.worst_n;
    }
    report.classical_trichotomy_ok &= in.trichotomy_ok;
    if (in.max_integer_residue > report.max_integer_residue)
      report.max_integer_residue = in.max_integer_residue;
  }
  return report;
}

}  // namespace psq
