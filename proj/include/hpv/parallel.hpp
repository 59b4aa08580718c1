#pragma once

#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hpv {

/// Execution mode for trial loops. Every trial owns a stream derived from
/// (master seed, purpose, trial index) and writes only its own slot, so both
/// modes produce byte-identical results; Serial is the reference
/// implementation the tests compare against.
enum class ExecMode { Serial, Parallel };

template <class F>
void run_indexed(long n, ExecMode mode, F&& fn) {
  if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
    std::exception_ptr first_error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
#endif
  }
  for (long i = 0; i < n; ++i) fn(i);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hpv
