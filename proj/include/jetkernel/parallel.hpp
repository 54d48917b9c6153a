#pragma once

// Index-parallel loops over independent work items. The serial path is the
// reference; both fill results by index so output order never depends on
// scheduling.

#include <cstddef>
#include <exception>
#include <vector>

namespace jetkernel {

enum class Execution { serial, parallel };

/// Calls fn(i) for i in [0, n). The first exception (by index) is rethrown
/// after the loop.
template <class Fn>
void for_each_index(std::size_t n, Execution ex, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  if (ex == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Execution ex, Fn&& fn) {
  std::vector<T> out(n);
  for_each_index(n, ex, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace jetkernel
