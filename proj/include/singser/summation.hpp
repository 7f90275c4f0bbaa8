#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace singser {

// Neumaier-compensated accumulator.  Used for every sum long enough that
// plain accumulation would lose digits (> ~1e4 terms).
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }

  double value() const { return s + c; }
};

// Sums values[lo, hi) by recursive halving.  The reduction tree depends only
// on the index range, so results are bit-identical however the leaves were
// produced.
inline double pairwise_sum(const std::vector<double>& values, std::size_t lo,
                           std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = values[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) s += values[i];
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum(values, lo, mid) + pairwise_sum(values, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(values, 0, values.size());
}

// Evaluates sum_{i=0}^{n-1} term(i) with a fixed-shape reduction: the range
// is cut into chunks of `chunk` indices, each chunk is accumulated with
// compensation, and the chunk results are combined pairwise in index order.
// Worker threads pull chunks from an atomic counter; since every chunk is
// computed independently and the final combine ignores completion order, the
// result is byte-identical for any thread count.
template <class TermFn>
double parallel_sum(std::int64_t n, TermFn&& term, int threads,
                    std::int64_t chunk = 4096) {
  if (n <= 0) return 0.0;
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);

  auto run_chunk = [&](std::int64_t ci) {
    const std::int64_t lo = ci * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    CompensatedSum acc;
    for (std::int64_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[static_cast<std::size_t>(ci)] = acc.value();
  };

  if (threads <= 1 || nchunks == 1) {
    for (std::int64_t ci = 0; ci < nchunks; ++ci) run_chunk(ci);
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::int64_t ci = next.fetch_add(1);
        if (ci >= nchunks) return;
        run_chunk(ci);
      }
    };
    std::vector<std::thread> pool;
    const int nt = std::min<std::int64_t>(threads, nchunks);
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return pairwise_sum(partial);
}

}  // namespace singser
