// Microbenchmarks for the hot paths: table construction, series evaluation,
// Gauss-sum rows, singular-series scans, representation counting, and the
// transforms. Run with --benchmark_filter=... to focus.

#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "psq/circle.hpp"
#include "psq/dft.hpp"
#include "psq/gauss.hpp"
#include "psq/represent.hpp"
#include "psq/series.hpp"
#include "psq/sieve.hpp"
#include "psq/singular.hpp"

namespace {

const psq::SieveTables& tables_1m() {
  static auto t = psq::build_sieve(1u << 20);
  return t;
}

void bm_sieve_build(benchmark::State& state) {
  auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto t = psq::build_sieve(limit);
    benchmark::DoNotOptimize(t.phi.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(state.range(0)));
}
BENCHMARK(bm_sieve_build)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24)
    ->Unit(benchmark::kMillisecond);

void bm_prime_series(benchmark::State& state) {
  const auto& t = tables_1m();
  psq::GenParams p(static_cast<std::uint64_t>(state.range(0)));
  double alpha = 0.123456789;
  for (auto _ : state) {
    auto v = psq::prime_series(p, alpha, t);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_prime_series)->Arg(1 << 10)->Arg(1 << 13)
    ->Unit(benchmark::kMicrosecond);

void bm_square_series(benchmark::State& state) {
  psq::GenParams p(static_cast<std::uint64_t>(state.range(0)));
  double alpha = 0.123456789;
  for (auto _ : state) {
    auto v = psq::square_series(p, alpha);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_square_series)->Arg(1 << 10)->Arg(1 << 16)
    ->Unit(benchmark::kMicrosecond);

void bm_gauss_row(benchmark::State& state) {
  auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto row = psq::gauss_sum_row(1, q);
    benchmark::DoNotOptimize(row.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_gauss_row)->Arg(101)->Arg(1009)->Arg(10007)
    ->Unit(benchmark::kMicrosecond);

void bm_singular_euler_batch(benchmark::State& state) {
  const auto& t = tables_1m();
  auto n_hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto v = psq::singular_series_euler_batch(1, n_hi, 10000, t);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_singular_euler_batch)->Arg(1 << 12)->Arg(1 << 16)
    ->Unit(benchmark::kMillisecond);

void bm_singular_truncated_batch(benchmark::State& state) {
  const auto& t = tables_1m();
  for (auto _ : state) {
    auto v = psq::singular_series_truncated_batch(
        1, static_cast<std::uint64_t>(state.range(0)) + 1,
        static_cast<double>(state.range(1)), t);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(bm_singular_truncated_batch)->Args({100, 100})->Args({1000, 1000})
    ->Unit(benchmark::kMillisecond);

void bm_rep_all(benchmark::State& state) {
  const auto& t = tables_1m();
  auto n_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto rep = psq::rep_all(n_max, t);
    benchmark::DoNotOptimize(rep.weighted.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(state.range(0)));
}
BENCHMARK(bm_rep_all)->Arg(1 << 14)->Arg(1 << 18)->Arg(1 << 20)
    ->Unit(benchmark::kMillisecond);

void bm_dft(benchmark::State& state) {
  auto m = static_cast<std::size_t>(state.range(0));
  std::vector<std::complex<double>> seed(m);
  for (std::size_t k = 0; k < m; ++k)
    seed[k] = {1.0 / (1.0 + static_cast<double>(k)), 0.25};
  for (auto _ : state) {
    auto data = seed;
    psq::dft_forward(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_dft)->Arg(1 << 12)->Arg(1 << 16)->Arg((1 << 16) + 1)
    ->Unit(benchmark::kMicrosecond);

void bm_hankel(benchmark::State& state) {
  for (auto _ : state) {
    auto v = psq::hankel_integral(static_cast<std::uint64_t>(state.range(0)),
                                  1024);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_hankel)->Arg(16)->Arg(512)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
