#include "dphase/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace dphase {

namespace {
std::atomic<int> g_max_threads{1};
}

void set_max_threads(int n) { g_max_threads.store(std::max(1, n)); }
int max_threads() { return g_max_threads.load(); }

namespace detail {

std::vector<std::size_t> chunk_bounds(std::size_t n) {
  // 64 chunks once the sweep is big enough to be worth splitting.
  const std::size_t n_chunks = n < 4096 ? 1 : 64;
  std::vector<std::size_t> bounds(n_chunks + 1);
  for (std::size_t c = 0; c <= n_chunks; ++c) bounds[c] = n * c / n_chunks;
  return bounds;
}

}  // namespace detail

void run_chunks(const std::vector<std::size_t>& bounds,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t n_chunks = bounds.size() - 1;
  const int workers = std::min<int>(max_threads(), static_cast<int>(n_chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) body(c, bounds[c], bounds[c + 1]);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto drain = [&] {
    try {
      for (std::size_t c = next.fetch_add(1); c < n_chunks;
           c = next.fetch_add(1))
        body(c, bounds[c], bounds[c + 1]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dphase
