#include "psq/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace psq {

namespace {
std::atomic<unsigned> g_threads{0};
// Set inside pool workers so nested run_chunks calls degrade to serial
// execution instead of oversubscribing the machine.
thread_local bool g_in_worker = false;
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return n;
}

void run_chunks(std::size_t n_chunks,
                const std::function<void(std::size_t)>& fn) {
  if (n_chunks == 0) return;
  std::size_t workers = thread_count();
  if (workers > n_chunks) workers = n_chunks;
  if (workers <= 1 || g_in_worker) {
    for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto worker = [&] {
    g_in_worker = true;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_chunks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (first_error) std::rethrow_exception(first_error);
}

std::size_t chunk_bounds(std::size_t n, std::size_t target_chunks,
                         std::vector<std::size_t>& bounds) {
  if (target_chunks == 0) target_chunks = 1;
  if (target_chunks > n) target_chunks = n ? n : 1;
  bounds.assign(target_chunks + 1, 0);
  for (std::size_t i = 0; i <= target_chunks; ++i)
    bounds[i] = n * i / target_chunks;
  return target_chunks;
}

}  // namespace psq
