#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hybridsim {

enum class Exec { serial, parallel };

/// Index-space parallel loop. The parallel path uses OpenMP dynamic
/// scheduling (per-point cost varies strongly near resonances); the serial
/// path is the reference implementation used by the correctness tests.
template <typename Body>
void for_each_index(Exec exec, std::ptrdiff_t n, const Body& body) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)exec;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace hybridsim
