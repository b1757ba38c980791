#include "orlicz/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz::kernels::serial {

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double max(std::span<const double> v) {
  double m = -kInf;
  for (double x : v) m = std::max(m, x);
  return m;
}

double min(std::span<const double> v) {
  double m = kInf;
  for (double x : v) m = std::min(m, x);
  return m;
}

double log_sum_exp(std::span<const double> v) {
  const double m = max(v);
  if (m == -kInf || m == kInf) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace orlicz::kernels::serial
