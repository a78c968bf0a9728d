#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "psq/gauss.hpp"

TEST_SUITE("gauss") {

TEST_CASE("hand-expanded quadratic sums") {
  auto g13 = psq::gauss_sum(1, 3);  // 1 + 2 e(1/3) = i sqrt(3)
  CHECK(std::abs(g13 - std::complex<double>{0.0, std::sqrt(3.0)}) < 1e-12);

  auto g12 = psq::gauss_sum(1, 2);  // e(1/2) + e(2) = 0
  CHECK(std::abs(g12) < 1e-12);

  auto g14 = psq::gauss_sum(1, 4);  // 2 + 2i
  CHECK(std::abs(g14 - std::complex<double>{2.0, 2.0}) < 1e-12);

  auto g113 = psq::gauss_sum(1, 1, 3);  // 3/2 - i sqrt(3)/2
  CHECK(std::abs(g113 - std::complex<double>{1.5, -std::sqrt(3.0) / 2.0}) <
        1e-12);

  CHECK(std::abs(psq::gauss_sum(1, 1) - 1.0) < 1e-15);
}

TEST_CASE("coprimality is enforced") {
  CHECK_THROWS_AS(psq::gauss_sum(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(psq::gauss_sum(3, 0, 6), std::invalid_argument);
}

TEST_CASE("row evaluation matches scalar evaluation") {
  for (std::uint64_t q : {1, 2, 3, 8, 15, 23, 40}) {
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      auto row = psq::gauss_sum_row(a, q);
      REQUIRE(row.size() == q);
      for (std::uint64_t n = 0; n < q; ++n)
        CHECK(std::abs(row[n] - psq::gauss_sum(a, n, q)) < 1e-10);
    }
  }
}

TEST_CASE("conjugation symmetry") {
  for (std::uint64_t q = 2; q <= 100; ++q)
    for (std::uint64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      auto lhs = psq::gauss_sum(q - a, q);
      auto rhs = std::conj(psq::gauss_sum(a, q));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("twisted multiplicativity of magnitudes") {
  for (std::uint64_t q1 = 2; q1 * 2 <= 300; ++q1)
    for (std::uint64_t q2 = q1 + 1; q1 * q2 <= 300; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      std::uint64_t q = q1 * q2;
      for (std::uint64_t a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        double lhs = std::abs(psq::gauss_sum(a, q));
        double rhs = std::abs(psq::gauss_sum(a * q2 % q1, q1)) *
                     std::abs(psq::gauss_sum(a * q1 % q2, q2));
        CHECK(std::abs(lhs - rhs) < 1e-9);
      }
    }
}

TEST_CASE("exhaustive bound report at small q_max") {
  auto report = psq::verify_gauss_bound(50);
  CHECK(report.q_max == 50);
  CHECK(report.violations.empty());
  CHECK(report.classical_trichotomy_ok);
  CHECK(report.max_integer_residue < 1e-9);
  CHECK(report.worst_ratio <= 1.0 + 1e-9);
  CHECK(report.triples_checked > 0);

  // q_max below 2 leaves nothing to check.
  auto empty = psq::verify_gauss_bound(1);
  CHECK(empty.triples_checked == 0);
  CHECK(empty.violations.empty());
}

}  // TEST_SUITE
