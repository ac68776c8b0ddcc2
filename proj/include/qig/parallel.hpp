#pragma once

// Loop drivers shared by every verification sweep. Each sweep computes one
// independent result per index; the serial driver is the reference the
// OpenMP driver is tested against (results must be bit-identical).

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qig {

enum class Execution { Serial, Parallel };

/// splitmix64 finalizer; used to derive independent per-sample seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return mix_seed(mix_seed(base ^ mix_seed(stream)) + index);
}

/// Caps the OpenMP team size; 0 leaves the runtime default.
void set_max_threads(int threads);
int max_threads();

template <class T, class Fn>
std::vector<T> serial_map(std::size_t n, Fn&& fn) {
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  // Rethrow the lowest-index failure so error reporting does not depend on
  // thread scheduling.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class T, class Fn>
std::vector<T> map_indices(Execution ex, std::size_t n, Fn&& fn) {
  if (ex == Execution::Serial) return serial_map<T>(n, fn);
  return parallel_map<T>(n, fn);
}

}  // namespace qig
