#pragma once

// Builtin analytic fields with exact gradients.

#include "orlicz/grid.hpp"

namespace orlicz::fields {

/// u == value
FieldExpr constant(double value);
/// u(x) = slope * x_axis
FieldExpr linear(double slope = 1.0, std::size_t axis = 0);
/// u(x) = x_0^k
FieldExpr monomial(double k);
/// u(x) = min(cap, x_0)
FieldExpr clamp_linear(double cap = 1.0);
/// u(x) = |x|
FieldExpr radial();
/// u(x) = base(x) + sin(n pi x_0) / n, the oscillating sequence converging
/// weakly to base; requires base to carry an analytic gradient.
FieldExpr oscillation(FieldExpr base, double n);

}  // namespace orlicz::fields
