#pragma once
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace skycov {

// Static block partition of [begin, end) across hardware threads.
// fn(i) must derive all randomness from the index i alone, so the result is
// identical whatever the thread count (including 1).
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn&& fn) {
  const std::int64_t n = end - begin;
  if (n <= 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::int64_t nworkers = std::min<std::int64_t>(hw, n);
  if (nworkers == 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(static_cast<size_t>(nworkers));
  for (std::int64_t w = 0; w < nworkers; ++w) {
    const std::int64_t lo = begin + n * w / nworkers;
    const std::int64_t hi = begin + n * (w + 1) / nworkers;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errs[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace skycov
