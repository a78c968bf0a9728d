#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "psq/sieve.hpp"

TEST_SUITE("sieve") {

TEST_CASE("small-range arithmetic functions") {
  auto t = psq::build_sieve(100);
  CHECK(t.lambda[1] == 0.0);
  CHECK(t.lambda[2] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(t.lambda[8] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(t.lambda[9] == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(t.lambda[6] == 0.0);
  CHECK(t.lambda[100] == 0.0);

  CHECK(t.mu[1] == 1);
  CHECK(t.mu[2] == -1);
  CHECK(t.mu[6] == 1);
  CHECK(t.mu[12] == 0);
  CHECK(t.mu[30] == -1);

  CHECK(t.phi[1] == 1);
  CHECK(t.phi[12] == 4);
  CHECK(t.phi[97] == 96);

  CHECK(t.tau[1] == 1);
  CHECK(t.tau[12] == 6);
  CHECK(t.tau[64] == 7);

  CHECK(t.primes.size() == 25);
  CHECK(t.primes.front() == 2);
  CHECK(t.primes.back() == 97);
  CHECK(t.is_prime(97));
  CHECK_FALSE(t.is_prime(91));
  CHECK_FALSE(t.is_prime(1));
}

TEST_CASE("prime-power witnesses match lambda support") {
  auto t = psq::build_sieve(1000);
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    if (t.pp_exp[n] > 0) {
      std::uint64_t v = 1;
      for (int k = 0; k < t.pp_exp[n]; ++k) v *= t.pp_base[n];
      CHECK(v == n);
      CHECK(t.lambda[n] ==
            doctest::Approx(std::log(double(t.pp_base[n]))).epsilon(1e-15));
    } else {
      CHECK(t.lambda[n] == 0.0);
    }
  }
  CHECK(t.pp_base[8] == 2);
  CHECK(t.pp_exp[8] == 3);
  CHECK(t.pp_exp[12] == 0);
  CHECK(t.pp_exp[1] == 0);
}

TEST_CASE("linear and segmented builders agree") {
  auto a = psq::detail::build_sieve_linear(300000);
  auto b = psq::detail::build_sieve_segmented(300000);
  REQUIRE(a.limit == b.limit);
  REQUIRE(a.primes == b.primes);
  for (std::uint64_t n = 1; n <= a.limit; ++n) {
    REQUIRE(a.mu[n] == b.mu[n]);
    REQUIRE(a.phi[n] == b.phi[n]);
    REQUIRE(a.tau[n] == b.tau[n]);
    REQUIRE(a.pp_base[n] == b.pp_base[n]);
    REQUIRE(a.pp_exp[n] == b.pp_exp[n]);
    REQUIRE(a.lambda[n] == b.lambda[n]);
  }
}

TEST_CASE("oversized request is refused") {
  CHECK_THROWS_AS(psq::build_sieve(psq::sieve_limit_budget + 1),
                  std::length_error);
}

TEST_CASE("legendre symbol") {
  CHECK(psq::legendre_symbol(5, 3) == -1);   // 5 = 2 mod 3, non-residue
  CHECK(psq::legendre_symbol(2, 7) == 1);    // 3^2 = 2 mod 7
  CHECK(psq::legendre_symbol(3, 7) == -1);
  CHECK(psq::legendre_symbol(21, 7) == 0);
  CHECK(psq::legendre_symbol(1, 3) == 1);
  // residues by exhaustion for p = 11: {1,3,4,5,9}
  for (std::uint64_t n : {1, 3, 4, 5, 9})
    CHECK(psq::legendre_symbol(n, 11) == 1);
  for (std::uint64_t n : {2, 6, 7, 8, 10})
    CHECK(psq::legendre_symbol(n, 11) == -1);
}

TEST_CASE("integer square roots") {
  CHECK(psq::isqrt(0) == 0);
  CHECK(psq::isqrt(1) == 1);
  CHECK(psq::isqrt(3) == 1);
  CHECK(psq::isqrt(4) == 2);
  CHECK(psq::isqrt(99) == 9);
  std::uint64_t big = 4294967295ull;  // floor(sqrt(2^64 - 1))
  CHECK(psq::isqrt(~0ull) == big);
  CHECK(psq::isqrt(big * big) == big);
  CHECK(psq::isqrt(big * big - 1) == big - 1);

  CHECK(psq::is_square(0));
  CHECK(psq::is_square(1));
  CHECK_FALSE(psq::is_square(2));
  CHECK(psq::is_square(4));
  CHECK(psq::is_square(big * big));
  CHECK_FALSE(psq::is_square(big * big + 1));
}

}  // TEST_SUITE
