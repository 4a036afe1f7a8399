#ifndef OSCIMAX_PARALLEL_HPP
#define OSCIMAX_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace oscimax {

namespace detail {
inline std::atomic<std::size_t>& worker_setting() {
  static std::atomic<std::size_t> w{0};
  return w;
}
}  // namespace detail

/// Worker count: explicit setting, else OSCIMAX_WORKERS, else hardware concurrency.
inline std::size_t worker_count() {
  std::size_t w = detail::worker_setting().load();
  if (w > 0) return w;
  if (const char* env = std::getenv("OSCIMAX_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return std::size_t(v);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

inline void set_worker_count(std::size_t w) { detail::worker_setting().store(w); }

/// Calls fn(i) for i in [0, count). Each index is handled exactly once; callers
/// write results into per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace oscimax

#endif  // OSCIMAX_PARALLEL_HPP
