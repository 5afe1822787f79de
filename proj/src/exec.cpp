#include "brwre/exec.hpp"

#include <cstdlib>

namespace brwre {

int configure_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("BRWRE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace brwre
