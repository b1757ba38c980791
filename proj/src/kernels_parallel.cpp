#include "orlicz/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

namespace orlicz::kernels {

namespace {

std::atomic<int> g_thread_limit{0};

int team_size() {
#ifdef ORLICZ_LAB_HAVE_OPENMP
  const int limit = g_thread_limit.load(std::memory_order_relaxed);
  return limit > 0 ? limit : omp_get_max_threads();
#else
  return 1;
#endif
}

// Block partials of f(v[i]) summed in index order.
template <class Fn>
double blocked_sum(std::span<const double> v, Fn&& f) {
  const std::size_t n = v.size();
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<long long>(blocks);
  [[maybe_unused]] const int threads = team_size();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold) num_threads(threads)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(v[i]);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

void set_thread_limit(int threads) { g_thread_limit.store(threads < 0 ? 0 : threads); }

int thread_limit() { return g_thread_limit.load(std::memory_order_relaxed); }

namespace parallel {

double sum(std::span<const double> v) {
  return blocked_sum(v, [](double x) { return x; });
}

double max(std::span<const double> v) {
  double m = -kInf;
  const auto n = static_cast<long long>(v.size());
  [[maybe_unused]] const int threads = team_size();
#pragma omp parallel for reduction(max : m) schedule(static) if (v.size() >= kParallelThreshold) num_threads(threads)
  for (long long i = 0; i < n; ++i) m = std::max(m, v[static_cast<std::size_t>(i)]);
  return m;
}

double min(std::span<const double> v) {
  double m = kInf;
  const auto n = static_cast<long long>(v.size());
  [[maybe_unused]] const int threads = team_size();
#pragma omp parallel for reduction(min : m) schedule(static) if (v.size() >= kParallelThreshold) num_threads(threads)
  for (long long i = 0; i < n; ++i) m = std::min(m, v[static_cast<std::size_t>(i)]);
  return m;
}

double log_sum_exp(std::span<const double> v) {
  const double m = max(v);
  if (m == -kInf || m == kInf) return m;
  return m + std::log(blocked_sum(v, [m](double x) { return std::exp(x - m); }));
}

}  // namespace parallel

}  // namespace orlicz::kernels
