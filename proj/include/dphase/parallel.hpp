#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dphase {

// Worker cap for pair-sweep assemblies. 1 = sequential (default).
void set_max_threads(int n);
int max_threads();

namespace detail {

// Accumulates a sequence of terms with Kahan compensation. Overflow to
// infinity is propagated as-is instead of poisoning the carry with NaN;
// Luxemburg bracketing relies on overflow comparing as "large".
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    if (t - t != 0.0) {  // inf or nan
      sum = t;
      carry = 0.0;
      return;
    }
    carry = (t - sum) - y;
    sum = t;
  }
};

// Chunk boundaries used by every sweep. The chunking is a function of n only,
// never of the thread count, so reductions below are bit-identical for any
// --threads value.
std::vector<std::size_t> chunk_bounds(std::size_t n);

}  // namespace detail

// Runs body(chunk_index, lo, hi) over each chunk, possibly on worker threads.
// Chunks are disjoint, so bodies may write to per-chunk slots without locks.
void run_chunks(const std::vector<std::size_t>& bounds,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

// Sum of term(i) for i in [0, n). Chunk partials are combined in chunk order.
template <class Term>
double chunked_sum(std::size_t n, Term&& term) {
  auto bounds = detail::chunk_bounds(n);
  std::vector<double> partial(bounds.size() - 1, 0.0);
  run_chunks(bounds, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    detail::Kahan acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[c] = acc.sum;
  });
  detail::Kahan total;
  for (double p : partial) total.add(p);
  return total.sum;
}

}  // namespace dphase
