#include "psq/sieve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "psq/parallel.hpp"

namespace psq {

std::uint64_t isqrt(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  // The double estimate can be off by one either way, and for n near 2^64
  // it lands on 2^32, whose square overflows; clamp before correcting.
  constexpr std::uint64_t r_max = 4294967295ull;  // floor(sqrt(2^64 - 1))
  if (r > r_max) r = r_max;
  while (r > 0 && r * r > n) --r;
  while (r < r_max && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::uint64_t n) {
  std::uint64_t r = isqrt(n);
  return r * r == n;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

void allocate(SieveTables& t, std::uint64_t limit) {
  t.limit = limit;
  t.lambda.assign(limit + 1, 0.0);
  t.pp_base.assign(limit + 1, 0);
  t.pp_exp.assign(limit + 1, 0);
  t.mu.assign(limit + 1, 0);
  t.phi.assign(limit + 1, 0);
  t.tau.assign(limit + 1, 0);
  t.primes.clear();
  if (limit >= 1) {
    t.mu[1] = 1;
    t.phi[1] = 1;
    t.tau[1] = 1;
  }
}

// Prime powers are sparse; fill their witness columns in one cheap pass over
// the prime list instead of tracking them inside the sieve loops.
void mark_prime_powers(SieveTables& t) {
  for (std::uint64_t p : t.primes) {
    double lp = std::log(static_cast<double>(p));
    std::uint64_t v = p;
    std::uint8_t k = 1;
    for (;;) {
      t.lambda[v] = lp;
      t.pp_base[v] = static_cast<std::uint32_t>(p);
      t.pp_exp[v] = k;
      if (v > t.limit / p) break;
      v *= p;
      ++k;
    }
  }
}

}  // namespace

int legendre_symbol(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = powmod(n % p, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

namespace detail {

SieveTables build_sieve_linear(std::uint64_t limit) {
  SieveTables t;
  allocate(t, limit);
  if (limit < 2) return t;

  // Linear (Euler) sieve; cnt[i] is the exponent of the smallest prime in i,
  // which is what tau needs to stay multiplicative across the p | i branch.
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint8_t> cnt(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      t.primes.push_back(i);
      t.mu[i] = -1;
      t.phi[i] = i - 1;
      t.tau[i] = 2;
      cnt[i] = 1;
    }
    for (std::uint64_t p : t.primes) {
      if (p > spf[i] || p > limit / i) break;
      std::uint64_t ip = i * p;
      spf[ip] = static_cast<std::uint32_t>(p);
      if (p == spf[i]) {
        t.mu[ip] = 0;
        t.phi[ip] = t.phi[i] * p;
        cnt[ip] = static_cast<std::uint8_t>(cnt[i] + 1);
        t.tau[ip] = t.tau[i] / (cnt[i] + 1) * (cnt[i] + 2);
        break;
      }
      t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
      t.phi[ip] = t.phi[i] * (p - 1);
      cnt[ip] = 1;
      t.tau[ip] = t.tau[i] * 2;
    }
  }
  mark_prime_powers(t);
  return t;
}

SieveTables build_sieve_segmented(std::uint64_t limit) {
  SieveTables t;
  allocate(t, limit);
  if (limit < 2) return t;

  SieveTables base = build_sieve_linear(isqrt(limit));

  constexpr std::uint64_t seg_size = 1ull << 20;
  std::uint64_t n_segs = (limit - 1) / seg_size + 1;  // covers [1, limit]
  std::vector<std::vector<std::uint64_t>> seg_primes(n_segs);

  auto do_segment = [&](std::size_t s) {
    std::uint64_t lo = 1 + s * seg_size;
    std::uint64_t hi = std::min(limit, lo + seg_size - 1);
    std::uint64_t len = hi - lo + 1;

    // rem[i] = unfactored cofactor of lo+i; the other arrays accumulate the
    // multiplicative pieces as base primes get divided out.
    std::vector<std::uint64_t> rem(len), phi(len, 1);
    std::vector<std::uint32_t> tau(len, 1);
    std::vector<std::int8_t> mu(len, 1);
    std::vector<std::uint8_t> distinct(len, 0);
    std::vector<std::uint32_t> one_base(len, 0);  // the prime, if distinct==1
    std::vector<std::uint8_t> one_exp(len, 0);
    for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;

    for (std::uint64_t p : base.primes) {
      std::uint64_t first = ((lo + p - 1) / p) * p;
      for (std::uint64_t v = first; v <= hi; v += p) {
        std::uint64_t i = v - lo;
        std::uint64_t pe = 1;
        std::uint8_t e = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          pe *= p;
          ++e;
        }
        phi[i] *= pe / p * (p - 1);
        tau[i] *= e + 1u;
        mu[i] = e >= 2 ? std::int8_t{0} : static_cast<std::int8_t>(-mu[i]);
        ++distinct[i];
        one_base[i] = static_cast<std::uint32_t>(p);
        one_exp[i] = e;
      }
    }

    auto& found = seg_primes[s];
    for (std::uint64_t i = 0; i < len; ++i) {
      std::uint64_t n = lo + i;
      if (n == 1) continue;
      if (rem[i] > 1) {  // one prime factor above sqrt(limit) is left
        std::uint64_t p = rem[i];
        phi[i] *= p - 1;
        tau[i] *= 2;
        mu[i] = static_cast<std::int8_t>(-mu[i]);
        ++distinct[i];
        one_base[i] = static_cast<std::uint32_t>(p);
        one_exp[i] = 1;
        if (p == n) found.push_back(n);
      }
      t.mu[n] = mu[i];
      t.phi[n] = phi[i];
      t.tau[n] = tau[i];
      if (distinct[i] == 1) {
        t.pp_base[n] = one_base[i];
        t.pp_exp[n] = one_exp[i];
        t.lambda[n] = std::log(static_cast<double>(one_base[i]));
      }
    }
  };

  run_chunks(n_segs, do_segment);

  t.primes = base.primes;
  for (auto& sp : seg_primes)
    t.primes.insert(t.primes.end(), sp.begin(), sp.end());
  return t;
}

}  // namespace detail

SieveTables build_sieve(std::uint64_t limit) {
  if (limit > sieve_limit_budget)
    throw std::length_error(
        "sieve limit " + std::to_string(limit) + " exceeds the budget " +
        std::to_string(sieve_limit_budget) +
        " (~26 bytes/entry; raise sieve_limit_budget deliberately)");
  if (limit < sieve_segment_threshold) return detail::build_sieve_linear(limit);
  return detail::build_sieve_segmented(limit);
}

}  // namespace psq
