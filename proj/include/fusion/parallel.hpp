#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <utility>

#include "fusion/verify.hpp"

namespace fusion {

/// Runs `check(i)` for i in [0, n) and returns the smallest index whose check
/// reports a violation, together with its message. The parallel variant
/// yields the same answer as the serial one.
template <class Check>
std::optional<std::pair<std::size_t, std::string>> first_violation(std::size_t n, Execution ex, Check&& check) {
  auto run = [&](std::size_t i) -> std::optional<std::string> {
    try {
      return check(i);
    } catch (const std::exception& e) {
      return std::string("exception: ") + e.what();
    }
  };
  if (ex == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i)
      if (auto msg = run(i)) return std::make_pair(i, *msg);
    return std::nullopt;
  }
  std::size_t best = n;
  std::string best_msg;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    std::size_t cur;
#pragma omp atomic read
    cur = best;
    if (static_cast<std::size_t>(i) > cur) continue;
    if (auto msg = run(static_cast<std::size_t>(i))) {
#pragma omp critical(fusion_first_violation)
      {
        if (static_cast<std::size_t>(i) < best) {
          best_msg = *msg;
#pragma omp atomic write
          best = static_cast<std::size_t>(i);
        }
      }
    }
  }
  if (best == n) return std::nullopt;
  return std::make_pair(best, best_msg);
}

/// Runs `body(i)` for i in [0, n); the parallel variant distributes indices
/// dynamically. The first exception is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, Execution ex, Body&& body) {
  if (ex == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(fusion_parallel_for)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace fusion
