#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace brwre {

// Execution mode for the replica/walker kernels. Parallel distributes
// iterations over OpenMP threads; Serial is the reference path. Both write
// per-index result slots and reduce in index order, so the two modes give
// bit-identical output for any thread count.
enum class Exec { Serial, Parallel };

// Applies BRWRE_THREADS (if set) to the OpenMP runtime. Returns the thread
// count parallel kernels will use.
int configure_threads();

template <typename Fn>
void for_each_index(std::int64_t count, Exec exec, Fn&& body) {
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
#endif
  (void)exec;
  for (std::int64_t i = 0; i < count; ++i) body(i);
}

}  // namespace brwre
