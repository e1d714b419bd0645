#pragma once

#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fedpower {

// Global thread budget for the OpenMP kernels. 0 means "use the OpenMP
// default". Every parallel kernel writes to disjoint slots and reduces in
// index order, so results are bit-identical for any thread count.
int thread_count();
void set_thread_count(int n);

// Resolve the budget from an explicit request, the FEDPOWER_THREADS
// environment variable, or the OpenMP default, in that order.
int resolve_thread_count(int requested);

// Runs fn(i) for i in [0, n). Parallel when OpenMP is enabled and the grain
// is worth it; the serial path is the reference semantics.
template <typename Fn>
void parallel_for(long n, Fn&& fn, long grain = 1) {
#ifdef _OPENMP
  if (n >= 2 * grain) {
    const int requested = thread_count();
#pragma omp parallel for schedule(static) num_threads(requested > 0 ? requested : omp_get_max_threads())
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
#endif
  (void)grain;
  for (long i = 0; i < n; ++i) fn(i);
}

// Serial reference loop, kept so tests can compare against the parallel path.
template <typename Fn>
void serial_for(long n, Fn&& fn) {
  for (long i = 0; i < n; ++i) fn(i);
}

}  // namespace fedpower
