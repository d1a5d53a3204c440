#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "zetapprox/error.hpp"

namespace zetapprox {

/// Worker count: an explicit request wins, then ZETAPPROX_WORKERS, then 1.
inline int resolve_workers(std::optional<int> requested = std::nullopt) {
  if (requested) {
    if (*requested < 1) throw InvalidArgument("worker count must be at least 1");
    return *requested;
  }
  if (const char* env = std::getenv("ZETAPPROX_WORKERS"); env && *env) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(env, &used);
      if (used == std::string(env).size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("ZETAPPROX_WORKERS must be a positive integer, got '") +
                          env + "'");
  }
  return 1;
}

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Every index runs
/// exactly once and callers write results into slot i, so the outcome does
/// not depend on scheduling. If several calls throw, the exception of the
/// smallest index is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace zetapprox
