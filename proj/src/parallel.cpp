#include "spectral/parallel.hpp"

#include <cstdlib>
#include <string>

namespace spectral::par {

int max_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("SPECTRAL_DECAY_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) return std::min(cap, omp_get_max_threads());
    } catch (...) {
      // Unparseable cap: fall through to the OpenMP default.
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace spectral::par
