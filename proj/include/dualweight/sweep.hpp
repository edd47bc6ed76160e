#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace dw {

/// Applies f to 0..count-1 in order. Reference for map_parallel.
template <class F>
auto map_serial(std::size_t count, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(f(i));
  return out;
}

/// Same results as map_serial, computed by an OpenMP worker pool of `jobs`
/// threads. Results are stored by index, so their order never depends on
/// scheduling. The first exception (by index) is rethrown after the loop.
template <class F>
auto map_parallel(std::size_t count, int jobs, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  if (jobs <= 1) return map_serial(count, f);
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace dw
