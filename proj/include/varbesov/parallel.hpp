#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace varbesov {

// Resolution order: explicit request > VARBESOV_THREADS > hardware concurrency.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("VARBESOV_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

inline int& thread_count() {
  static int n = resolve_threads();
  return n;
}

inline void set_thread_count(int requested) { thread_count() = resolve_threads(requested); }

// Chunked parallel loop over [0, n). Deterministic partition; fn(i) must be
// independent across i.
template <typename F>
inline void parallel_for(std::size_t n, F&& fn) {
  int nt = std::min<std::size_t>(thread_count(), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& w : workers) w.join();
}

// Parallel max-reduction of fn(i) over [0, n); order-independent hence deterministic.
template <typename F>
inline double parallel_max(std::size_t n, F&& fn) {
  int nt = std::min<std::size_t>(thread_count(), n);
  if (nt <= 1) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, fn(i));
    return m;
  }
  std::vector<double> partial(nt, 0.0);
  std::vector<std::thread> workers;
  workers.reserve(nt);
  std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, t, &fn, &partial] {
      double m = 0.0;
      for (std::size_t i = lo; i < hi; ++i) m = std::max(m, fn(i));
      partial[t] = m;
    });
  }
  for (std::thread& w : workers) w.join();
  double m = 0.0;
  for (double p : partial) m = std::max(m, p);
  return m;
}

}  // namespace varbesov
