#include "psq/represent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "psq/kahan.hpp"
#include "psq/parallel.hpp"

namespace psq {

namespace {

void require_tables(std::uint64_t n_max, const SieveTables& tables,
                    const char* who) {
  if (tables.limit < n_max)
    throw std::invalid_argument(std::string(who) + ": sieve tables reach " +
                                std::to_string(tables.limit) + ", need " +
                                std::to_string(n_max));
}

struct PrimePower {
  std::uint64_t value;
  double log_p;
  bool prime;
};

// Ascending list of prime powers <= n_max with exact witnesses; the batch
// fill walks windows of this list instead of testing every k.
std::vector<PrimePower> prime_power_list(std::uint64_t n_max,
                                         const SieveTables& tables) {
  std::vector<PrimePower> pps;
  for (std::uint64_t v = 2; v <= n_max; ++v)
    if (tables.pp_exp[v])
      pps.push_back({v, std::log(static_cast<double>(tables.pp_base[v])),
                     tables.pp_exp[v] == 1});
  return pps;
}

}  // namespace

RepTable rep_all(std::uint64_t n_max, const SieveTables& tables) {
  require_tables(n_max, tables, "rep_all");
  RepTable t;
  t.limit = n_max;
  t.weighted.assign(n_max + 1, 0.0);
  t.prime_weighted.assign(n_max + 1, 0.0);
  t.count.assign(n_max + 1, 0);
  t.square_flag.assign(n_max + 1, 0);
  for (std::uint64_t m = 1; m * m <= n_max; ++m) t.square_flag[m * m] = 1;
  if (n_max < 3) return t;

  auto pps = prime_power_list(n_max, tables);

  // Chunk over output ranges, not over m: each chunk owns the slice
  // [lo, hi) of every array, so the fill is race-free and the merge order
  // never depends on the thread count.
  std::vector<std::size_t> bounds;
  std::size_t n_chunks =
      chunk_bounds(n_max + 1, 8 * thread_count(), bounds);
  run_chunks(n_chunks, [&](std::size_t c) {
    std::uint64_t lo = bounds[c], hi = bounds[c + 1];
    if (hi < 4) return;
    std::vector<double> w_comp(hi - lo, 0.0), r_comp(hi - lo, 0.0);
    auto add = [](double& sum, double& comp, double v) {
      double s = sum + v;
      if (std::abs(sum) >= std::abs(v))
        comp += (sum - s) + v;
      else
        comp += (v - s) + sum;
      sum = s;
    };
    for (std::uint64_t m = 1; m * m + 2 < hi; ++m) {
      std::uint64_t mm = m * m;
      std::uint64_t k_lo = lo > mm + 2 ? lo - mm : 2;
      std::uint64_t k_hi = hi - mm;  // exclusive
      auto it = std::lower_bound(
          pps.begin(), pps.end(), k_lo,
          [](const PrimePower& pp, std::uint64_t v) { return pp.value < v; });
      for (; it != pps.end() && it->value < k_hi; ++it) {
        std::uint64_t n = it->value + mm;
        add(t.weighted[n], w_comp[n - lo], it->log_p);
        if (it->prime) {
          add(t.prime_weighted[n], r_comp[n - lo], it->log_p);
          ++t.count[n];
        }
      }
    }
    for (std::uint64_t n = lo; n < hi; ++n) {
      t.weighted[n] += w_comp[n - lo];
      t.prime_weighted[n] += r_comp[n - lo];
    }
  });
  return t;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> rep_witnesses(
    std::uint64_t n, const SieveTables& tables) {
  if (n >= 1) require_tables(n - 1, tables, "rep_witnesses");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t m = 1; m * m < n; ++m) {
    std::uint64_t k = n - m * m;
    if (k >= 2 && tables.pp_exp[k]) out.emplace_back(k, m);
  }
  return out;
}

ExceptionalReport exceptional_set(std::uint64_t limit,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const SieveTables& tables) {
  if (limit < 4)
    throw std::invalid_argument("exceptional_set: need limit >= 4");
  RepTable rep = rep_all(limit, tables);
  ExceptionalReport report;
  report.limit = limit;
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (!rep.square_flag[n] && rep.count[n] == 0)
      report.exceptional.push_back(n);
  for (std::uint64_t x : checkpoints) {
    auto it = std::upper_bound(report.exceptional.begin(),
                               report.exceptional.end(), std::min(x, limit));
    report.counts.emplace_back(
        x, static_cast<std::uint64_t>(it - report.exceptional.begin()));
  }
  return report;
}

std::uint64_t two_square_count(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t m = 1; m * m < n; ++m)
    if (is_square(n - m * m)) ++count;  // the pair (m, sqrt(n-m^2)), ordered
  return count;
}

std::int64_t two_square_divisor_sum(std::uint64_t n) {
  std::int64_t sum = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    std::uint64_t e = n / d;
    if (d % 2) sum += (d % 4 == 1) ? 1 : -1;
    if (e != d && e % 2) sum += (e % 4 == 1) ? 1 : -1;
  }
  return sum;
}

PowerCorrection prime_power_correction(std::uint64_t n_max,
                                       const SieveTables& tables) {
  require_tables(n_max, tables, "prime_power_correction");
  PowerCorrection out;
  out.n_max = n_max;

  RepTable rep = rep_all(n_max, tables);
  KahanSum s_table;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    double d = rep.weighted[n] - rep.prime_weighted[n];
    s_table.add(d * d);
  }
  out.sum_sq = s_table.value();

  // Independent route: accumulate only the k >= 2 prime-power layers.
  std::vector<double> diff(n_max + 1, 0.0);
  for (std::uint64_t v = 4; v <= n_max; ++v) {
    if (tables.pp_exp[v] < 2) continue;
    double lp = std::log(static_cast<double>(tables.pp_base[v]));
    for (std::uint64_t m = 1; v + m * m <= n_max; ++m) diff[v + m * m] += lp;
  }
  KahanSum s_direct;
  for (std::uint64_t n = 1; n <= n_max; ++n) s_direct.add(diff[n] * diff[n]);
  out.sum_sq_direct = s_direct.value();

  double nd = static_cast<double>(n_max);
  out.ratio = out.sum_sq / (std::pow(nd, 7.0 / 6.0) * std::log(nd));
  return out;
}

}  // namespace psq
