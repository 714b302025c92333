#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace rmp {

/// Worker count: set_thread_count() override, else RMPLAB_THREADS, else hardware concurrency.
std::size_t thread_count();

/// Override the worker count for this process; 0 restores the default lookup.
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n) on contiguous static chunks. Rethrows the first exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Results are stored by index, so output never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace rmp
