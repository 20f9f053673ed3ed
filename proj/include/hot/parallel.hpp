#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace hot {

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Splits [0, total) into `threads` contiguous ranges, runs body(begin, end)
/// for each and returns the per-range results in range order. The first
/// exception thrown by any worker is rethrown.
template <typename Body>
auto run_partitioned(std::uint64_t total, unsigned threads, Body&& body) {
  using R = decltype(body(std::uint64_t{0}, std::uint64_t{0}));
  threads = std::max(1u, threads);
  if (total < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(1, total));
  std::vector<R> results(threads);
  if (threads == 1) {
    results[0] = body(0, total);
    return results;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b = total * t / threads, e = total * (t + 1) / threads;
      pool.emplace_back([&, t, b, e] {
        try {
          results[t] = body(b, e);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace hot
