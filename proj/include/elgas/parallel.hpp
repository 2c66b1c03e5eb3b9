#pragma once

// Order-fixed parallel map. Work items are claimed dynamically, but every
// result lands in its own slot, so reductions done afterwards in index order
// are bit-identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace elgas {

/// Thread count from ELGAS_THREADS, else hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("ELGAS_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

class WorkerPool {
 public:
  /// threads == 0 selects default_thread_count().
  explicit WorkerPool(unsigned threads = 0) : threads_(threads == 0 ? default_thread_count() : threads) {}

  unsigned threads() const { return threads_; }

  /// out[i] = fn(i) for i in [0, n).
  template <class Fn>
  auto map(std::size_t n, Fn&& fn) const -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(n);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads_, n));
    if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
      return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
          return;
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers - 1);
      for (unsigned t = 1; t < workers; ++t) pool.emplace_back(body);
      body();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
  }

 private:
  unsigned threads_;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace elgas
