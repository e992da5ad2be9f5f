#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace fdtc {

/// Sum with a fixed recursive halving order, independent of how the inputs
/// were produced.
inline double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Runs fn(r) for r in [0, count) on up to `workers` threads and returns the
/// results in index order. The first exception thrown by any task is rethrown.
template <class T, class F>
std::vector<T> map_realizations(std::size_t count, std::size_t workers, F&& fn) {
  std::vector<std::optional<T>> slots(count);
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= count) return;
      try {
        slots[r].emplace(fn(r));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct MeanStderr {
  double mean = 0.0;
  double sem = 0.0;
};

/// Mean and standard error (sample deviation / sqrt(n); zero for n < 2),
/// both accumulated with pairwise_sum.
inline MeanStderr mean_stderr(std::span<const double> v) {
  MeanStderr m;
  if (v.empty()) return m;
  const double n = static_cast<double>(v.size());
  m.mean = pairwise_sum(v) / n;
  if (v.size() > 1) {
    std::vector<double> sq(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) sq[k] = (v[k] - m.mean) * (v[k] - m.mean);
    m.sem = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  }
  return m;
}

}  // namespace fdtc
