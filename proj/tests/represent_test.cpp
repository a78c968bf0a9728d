#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "psq/represent.hpp"
#include "psq/sieve.hpp"

namespace {

const psq::SieveTables& shared_tables() {
  static auto tables = psq::build_sieve(20000);
  return tables;
}

// Independent oracle: hand-rolled Eratosthenes plus a double loop over
// (k, m). No shared code with the library path.
struct BruteRep {
  std::vector<double> weighted, prime_weighted;
  std::vector<std::uint32_t> count;
};

BruteRep brute_rep(std::uint64_t n_max) {
  std::vector<bool> composite(n_max + 1, false);
  for (std::uint64_t p = 2; p * p <= n_max; ++p)
    if (!composite[p])
      for (std::uint64_t j = p * p; j <= n_max; j += p) composite[j] = true;

  BruteRep out;
  out.weighted.assign(n_max + 1, 0.0);
  out.prime_weighted.assign(n_max + 1, 0.0);
  out.count.assign(n_max + 1, 0);
  for (std::uint64_t m = 1; m * m < n_max; ++m) {
    for (std::uint64_t k = 2; k + m * m <= n_max; ++k) {
      std::uint64_t n = k + m * m;
      if (!composite[k]) {
        out.weighted[n] += std::log(static_cast<double>(k));
        out.prime_weighted[n] += std::log(static_cast<double>(k));
        out.count[n] += 1;
      } else {
        // Lambda(k) = log p when k = p^e: test by stripping one prime.
        std::uint64_t p = 0;
        for (std::uint64_t d = 2; d * d <= k; ++d)
          if (k % d == 0) {
            p = d;
            break;
          }
        if (p == 0) continue;
        std::uint64_t r = k;
        while (r % p == 0) r /= p;
        if (r == 1) out.weighted[n] += std::log(static_cast<double>(p));
      }
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("represent") {

TEST_CASE("small values by hand") {
  auto rep = psq::rep_all(20, shared_tables());
  REQUIRE(rep.limit == 20);

  // n = 3 = 2 + 1^2 only.
  CHECK(rep.weighted[3] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(rep.prime_weighted[3] == rep.weighted[3]);
  CHECK(rep.count[3] == 1);

  // n = 5 = 4 + 1 = 2^2 + 1^2: Lambda(4) = log 2 contributes to R but not
  // to r; there is no prime representation.
  CHECK(rep.weighted[5] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(rep.prime_weighted[5] == 0.0);
  CHECK(rep.count[5] == 0);
  CHECK(rep.square_flag[4] == 1);
  CHECK(rep.square_flag[5] == 0);

  // n = 1, 2 have no representation with m >= 1, k >= 2.
  CHECK(rep.weighted[1] == 0.0);
  CHECK(rep.weighted[2] == 0.0);
  CHECK(rep.count[2] == 0);

  // n = 6 = 2 + 4 = 5 + 1.
  CHECK(rep.count[6] == 2);
  CHECK(rep.weighted[6] ==
        doctest::Approx(std::log(2.0) + std::log(5.0)).epsilon(1e-15));

  // n = 12 = 3 + 9 = 8 + 4 = 11 + 1.
  CHECK(rep.count[12] == 2);  // 3 and 11 prime, 8 is not
  CHECK(rep.weighted[12] ==
        doctest::Approx(std::log(3.0) + std::log(2.0) + std::log(11.0))
            .epsilon(1e-15));
}

TEST_CASE("witnesses enumerate exactly the prime-power pairs") {
  // Pairs come out in ascending m: 12 = 11 + 1 = 8 + 4 = 3 + 9.
  auto w12 = psq::rep_witnesses(12, shared_tables());
  REQUIRE(w12.size() == 3);
  CHECK(w12[0] == std::pair<std::uint64_t, std::uint64_t>{11, 1});
  CHECK(w12[1] == std::pair<std::uint64_t, std::uint64_t>{8, 2});
  CHECK(w12[2] == std::pair<std::uint64_t, std::uint64_t>{3, 3});

  // Witness log-weights reassemble the table entry.
  auto rep = psq::rep_all(12, shared_tables());
  double sum = 0.0;
  for (auto [k, m] : w12) {
    std::uint64_t p = 2;
    while (k % p != 0) ++p;
    sum += std::log(static_cast<double>(p));
  }
  CHECK(rep.weighted[12] == doctest::Approx(sum).epsilon(1e-15));

  CHECK(psq::rep_witnesses(2, shared_tables()).empty());
}

TEST_CASE("table agrees with an independent brute force") {
  std::uint64_t n_max = 10000;
  auto rep = psq::rep_all(n_max, shared_tables());
  auto brute = brute_rep(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    CHECK(std::abs(rep.weighted[n] - brute.weighted[n]) < 1e-9);
    CHECK(std::abs(rep.prime_weighted[n] - brute.prime_weighted[n]) < 1e-9);
    CHECK(rep.count[n] == brute.count[n]);
  }
}

TEST_CASE("structural invariants") {
  auto rep = psq::rep_all(10000, shared_tables());
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    CHECK(rep.weighted[n] >= rep.prime_weighted[n]);
    CHECK(rep.prime_weighted[n] >= 0.0);
    if (rep.count[n] > 0) CHECK(rep.prime_weighted[n] > 0.0);
    if (rep.count[n] == 0) CHECK(rep.prime_weighted[n] == 0.0);
  }
}

TEST_CASE("first moment tracks the integral scale") {
  std::uint64_t n_max = 1 << 16;
  auto tables = psq::build_sieve(n_max);
  auto rep = psq::rep_all(n_max, tables);
  double total = 0.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) total += rep.weighted[n];
  double expected = (2.0 / 3.0) * std::pow(static_cast<double>(n_max), 1.5);
  CHECK(total > 0.9 * expected);
  CHECK(total < 1.1 * expected);
}

TEST_CASE("exceptional set at 40 is known exactly") {
  auto report = psq::exceptional_set(40, {10, 20, 40}, shared_tables());
  std::vector<std::uint64_t> expected = {2, 5, 10, 13, 31, 34, 37};
  CHECK(report.exceptional == expected);
  // Running counts: {2,5,10} by 10, plus 13 by 20, plus {31,34,37} by 40.
  REQUIRE(report.counts.size() == 3);
  CHECK(report.counts[0] == std::pair<std::uint64_t, std::uint64_t>{10, 3});
  CHECK(report.counts[1] == std::pair<std::uint64_t, std::uint64_t>{20, 4});
  CHECK(report.counts[2] == std::pair<std::uint64_t, std::uint64_t>{40, 7});

  CHECK_THROWS_AS(psq::exceptional_set(3, {}, shared_tables()),
                  std::invalid_argument);
}

TEST_CASE("exceptional set cross-checked against the count table") {
  std::uint64_t limit = 10000;
  auto report = psq::exceptional_set(limit, {limit}, shared_tables());
  auto rep = psq::rep_all(limit, shared_tables());
  std::uint64_t found = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    bool exceptional = rep.count[n] == 0 && rep.square_flag[n] == 0;
    if (exceptional) ++found;
    bool listed = std::find(report.exceptional.begin(),
                            report.exceptional.end(),
                            n) != report.exceptional.end();
    CHECK(listed == exceptional);
  }
  CHECK(report.counts.back().second == found);
}

TEST_CASE("two-square counts by hand") {
  CHECK(psq::two_square_count(2) == 1);    // 1+1
  CHECK(psq::two_square_count(5) == 2);    // 1+4, 4+1
  CHECK(psq::two_square_count(3) == 0);
  CHECK(psq::two_square_count(25) == 2);   // 9+16, 16+9
  CHECK(psq::two_square_count(50) == 3);   // 1+49, 25+25, 49+1
  CHECK(psq::two_square_count(1) == 0);
}

TEST_CASE("two-square divisor identity up to boundary terms") {
  // r2(n)/4 = divisor sum counts representations over all of Z^2 including
  // zeros and signs; restricting to positive ordered pairs shifts it by at
  // most the zero-coordinate reps, i.e. by 1 when n is a square.
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    auto count = static_cast<std::int64_t>(psq::two_square_count(n));
    auto divisor = psq::two_square_divisor_sum(n);
    CHECK(std::llabs(count - divisor) <= 2);
  }
}

TEST_CASE("prime power correction is tiny and self-consistent") {
  auto tables = psq::build_sieve(4096);
  auto pc = psq::prime_power_correction(4096, tables);
  CHECK(pc.n_max == 4096);
  CHECK(pc.sum_sq > 0.0);
  CHECK(std::abs(pc.sum_sq - pc.sum_sq_direct) <=
        1e-6 * std::max(1.0, pc.sum_sq));
  CHECK(pc.ratio == pc.sum_sq / (std::pow(4096.0, 7.0 / 6.0) *
                                 std::log(4096.0)));

  // n_max = 4: the only representation is 3 + 1 with k prime, so R = r
  // everywhere and the correction vanishes.
  auto tiny = psq::prime_power_correction(4, shared_tables());
  CHECK(tiny.sum_sq == 0.0);
}

}  // TEST_SUITE
