#pragma once

// Reduction kernels over per-cell arrays.
//
// Two implementations are kept side by side:
//   serial::    straightforward left-to-right loops; the reference the tests
//               compare against.
//   parallel::  OpenMP kernels. Sums are taken over fixed-size blocks whose
//               partials are combined in index order, so the result does not
//               depend on the thread count.
// The unqualified functions dispatch to parallel:: (which falls back to a
// single thread when built without OpenMP).

#include <cstddef>
#include <span>

#include "orlicz/common.hpp"

#ifdef ORLICZ_LAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace orlicz::kernels {

/// Cells per block in the deterministic blocked sum.
inline constexpr std::size_t kBlock = 2048;

namespace serial {
double sum(std::span<const double> v);
double max(std::span<const double> v);
double min(std::span<const double> v);
/// log(sum_i exp(v_i)); -inf for an empty span or all -inf entries.
double log_sum_exp(std::span<const double> v);
}  // namespace serial

namespace parallel {
double sum(std::span<const double> v);
double max(std::span<const double> v);
double min(std::span<const double> v);
double log_sum_exp(std::span<const double> v);
}  // namespace parallel

inline double sum(std::span<const double> v) { return parallel::sum(v); }
inline double max(std::span<const double> v) { return parallel::max(v); }
inline double min(std::span<const double> v) { return parallel::min(v); }
inline double log_sum_exp(std::span<const double> v) { return parallel::log_sum_exp(v); }

/// Caps the number of OpenMP threads used by the kernels (0 = runtime default).
void set_thread_limit(int threads);
int thread_limit();

/// Below this many cells the parallel kernels run on one thread.
inline constexpr std::size_t kParallelThreshold = 4096;

/// out[i] = fn(i) for i in [0, n). fn must be pure and must not throw.
template <class Fn>
void map_cells(std::size_t n, std::span<double> out, Fn&& fn) {
#ifdef ORLICZ_LAB_HAVE_OPENMP
  const auto count = static_cast<long long>(n);
  const int threads = thread_limit();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold) num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
#endif
}

}  // namespace orlicz::kernels
