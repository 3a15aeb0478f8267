/**
 * @file parallel.hpp
 * @brief First-failure search over a flat index space, serial and OpenMP.
 *
 * Both variants return the smallest failing index, so aggregated reports do
 * not depend on the number of workers.
 */
#pragma once

#include <omp.h>

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>

namespace vakit {

/// Number of OpenMP workers used by checkers; 1 selects the serial path.
int worker_count();
void set_worker_count(int n);

class ScopedWorkers {
 public:
  explicit ScopedWorkers(int n) : saved_(worker_count()) { set_worker_count(n); }
  ~ScopedWorkers() { set_worker_count(saved_); }
  ScopedWorkers(const ScopedWorkers&) = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int saved_;
};

template <class Pred>
std::optional<std::size_t> first_failure_serial(std::size_t n, Pred&& fails) {
  for (std::size_t i = 0; i < n; ++i) {
    if (fails(i)) return i;
  }
  return std::nullopt;
}

template <class Pred>
std::optional<std::size_t> first_failure_parallel(std::size_t n, Pred&& fails, int workers) {
  std::atomic<std::size_t> best{n};
  std::atomic<std::size_t> err_index{n};
  std::exception_ptr err;
  const long long total = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 32) num_threads(workers)
  for (long long k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (i >= best.load(std::memory_order_relaxed) || i >= err_index.load(std::memory_order_relaxed)) continue;
    bool failed = false;
    try {
      failed = fails(i);
    } catch (...) {
#pragma omp critical(vakit_first_failure_error)
      {
        if (i < err_index.load()) {
          err_index.store(i);
          err = std::current_exception();
        }
      }
      continue;
    }
    if (!failed) continue;
    std::size_t cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  }
  if (err && err_index.load() < best.load()) std::rethrow_exception(err);
  std::size_t b = best.load();
  if (b == n) return std::nullopt;
  return b;
}

template <class Pred>
std::optional<std::size_t> first_failure(std::size_t n, Pred&& fails) {
  int w = worker_count();
  if (w <= 1 || n < 64) return first_failure_serial(n, fails);
  return first_failure_parallel(n, fails, w);
}

}  // namespace vakit
