#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "subpoisson/hifloat.hpp"

namespace subpoisson {

/// Worker count used when the caller passes 0.
inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Evaluates fn(i) for i in [0, n) on `workers` threads, each taking one
/// contiguous block. Results come back in index order, so the output does
/// not depend on the worker count. Workers inherit the caller's working
/// precision. The first exception (by block order) is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned workers, F&& fn) {
  std::vector<std::optional<T>> slots(n);
  const Bits bits = WorkingPrecision::current();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::exception_ptr> errors(workers);
  auto run_block = [&](unsigned w) {
    try {
      WorkingPrecision guard(bits);
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i) slots[i].emplace(fn(i));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_block, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace subpoisson
