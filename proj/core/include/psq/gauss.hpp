#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace psq {

// Complete quadratic Gauss sum G(a,n;q) = sum_{k=1..q} e((a k^2 + n k)/q),
// e(x) = exp(2 pi i x). Phases are reduced mod q in exact integer arithmetic;
// the only floating step is the final lookup of e(r/q), so there is no phase
// drift even for q near 10^5.
std::complex<double> gauss_sum(std::uint64_t a, std::uint64_t n, std::uint64_t q);

// Classical case n = 0.
std::complex<double> gauss_sum(std::uint64_t a, std::uint64_t q);

// G(a,n;q) for all n = 0..q-1 at once. One pass over k per n with incremental
// index stepping against a shared e(j/q) table: O(q^2) adds, no transcendental
// calls in the inner loop.
std::vector<std::complex<double>> gauss_sum_row(std::uint64_t a, std::uint64_t q);

// Exhaustive scan of |G(a,n;q)|^2 <= 2q over all q <= q_max, a coprime to q,
// n in [0,q). Also checks two strictly stronger classical facts, flagged in
// the report as extra checks: |G(a,0;q)| lands in {0, sqrt q, sqrt 2q}, and
// |G(a,n;q)|^2 sits within 1e-9*q of an integer.
struct GaussViolation {
  std::uint64_t q, a, n;
  std::complex<double> value;
  double abs2;
};
struct GaussBoundReport {
  std::uint64_t q_max = 0;
  std::uint64_t triples_checked = 0;
  std::vector<GaussViolation> violations;   // |G|^2 > 2q
  double worst_ratio = 0.0;                 // max |G|^2 / (2q)
  std::uint64_t worst_q = 0, worst_a = 0, worst_n = 0;
  bool classical_trichotomy_ok = true;      // extra check on n = 0 values
  double max_integer_residue = 0.0;         // max dist(|G|^2, Z)/q, extra check
};
GaussBoundReport verify_gauss_bound(std::uint64_t q_max);

}  // namespace psq
