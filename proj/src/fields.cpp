#include "orlicz/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orlicz::fields {

namespace {
void zero(std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); }
}  // namespace

FieldExpr constant(double value) {
  return FieldExpr::scalar([value](Point) { return value; },
                           [](Point, std::span<double> g) { zero(g); });
}

FieldExpr linear(double slope, std::size_t axis) {
  return FieldExpr::scalar(
      [slope, axis](Point x) { return slope * x[axis]; },
      [slope, axis](Point, std::span<double> g) {
        zero(g);
        g[axis] = slope;
      });
}

FieldExpr monomial(double k) {
  return FieldExpr::scalar(
      [k](Point x) { return std::pow(x[0], k); },
      [k](Point x, std::span<double> g) {
        zero(g);
        g[0] = k == 0.0 ? 0.0 : k * std::pow(x[0], k - 1.0);
      });
}

FieldExpr clamp_linear(double cap) {
  return FieldExpr::scalar(
      [cap](Point x) { return std::min(cap, x[0]); },
      [cap](Point x, std::span<double> g) {
        zero(g);
        g[0] = x[0] < cap ? 1.0 : 0.0;
      });
}

FieldExpr radial() {
  auto r = [](Point x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  };
  return FieldExpr::scalar(r, [r](Point x, std::span<double> g) {
    const double rad = r(x);
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = rad > 0.0 ? x[i] / rad : 0.0;
  });
}

FieldExpr oscillation(FieldExpr base, double n) {
  if (!(n > 0.0)) throw Error("oscillation: n must be positive");
  if (base.components != 1 || !base.has_gradient())
    throw Error("oscillation: base must be scalar with an analytic gradient");
  const double w = n * std::numbers::pi;
  FieldExpr e;
  e.components = 1;
  e.value = [base, w, n](Point x, std::span<double> out) {
    base.value(x, out);
    out[0] += std::sin(w * x[0]) / n;
  };
  e.gradient = [base, w](Point x, std::span<double> g) {
    base.gradient(x, g);
    g[0] += std::numbers::pi * std::cos(w * x[0]);
  };
  return e;
}

}  // namespace orlicz::fields
