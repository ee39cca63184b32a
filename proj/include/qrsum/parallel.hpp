#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qrsum {

/// Worker count for an OpenMP region; 0 selects the runtime default.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qrsum
