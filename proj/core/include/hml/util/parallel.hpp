#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace hml::util {

/// Worker count from HML_THREADS; 1 when unset or invalid.
inline int thread_count() {
  const char* env = std::getenv("HML_THREADS");
  if (env == nullptr) return 1;
  try {
    const int n = std::stoi(env);
    return std::clamp(n, 1, 256);
  } catch (const std::exception&) {
    return 1;
  }
}

/// results[i] = fn(i).  Work is handed out in index order; results keep their index,
/// so output never depends on completion order.  fn must not throw.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn, int threads = thread_count()) {
  std::vector<T> results(count);
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) results[i] = fn(i);
    });
  pool.clear();  // joins
  return results;
}

}  // namespace hml::util
