#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spectral::par {

// Thread cap from SPECTRAL_DECAY_THREADS, else the OpenMP default. Returns 1
// when built without OpenMP.
int max_threads();

// Evaluates fn(i) for i in [0, n) into a vector. Items are independent, so the
// result is identical whatever the thread count; reductions over the result
// must scan in ascending index order to stay bit-reproducible.
template <class T, class F>
std::vector<T> indexed_map(std::size_t n, F&& fn) {
  std::vector<T> out(n);
#ifdef _OPENMP
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  }
#else
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
#endif
  return out;
}

}  // namespace spectral::par
