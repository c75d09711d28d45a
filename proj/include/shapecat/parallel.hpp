#pragma once

#include <cstddef>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shapecat::par {

// Worker cap. SHAPECAT_THREADS=0 (or unset) means all available cores.
int thread_cap();
void override_thread_cap(int n);  // 0 restores env/auto behavior

// Runs body(i) for i in [0, n). Every iteration writes only its own output
// slots, so results are identical for any thread count.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
  const int workers = thread_cap();
  if (workers > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(workers)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace shapecat::par
