#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

struct Interval {
  double lo;
  double hi;
};

using MaskPredicate = std::function<bool(Point)>;

/// Axis-aligned box split into a uniform grid; only cells whose center
/// satisfies the mask predicate belong to the domain. Masked cells are stored
/// in row-major order of their multi-index (axis 0 varies slowest).
class GridDomain {
 public:
  GridDomain(std::vector<Interval> box, std::vector<std::size_t> resolution,
             const MaskPredicate& inside);

  std::size_t dimension() const { return box_.size(); }
  std::size_t cell_count() const { return cell_count_; }
  double cell_measure() const { return cell_measure_; }
  double measure() const { return static_cast<double>(cell_count_) * cell_measure_; }
  double cell_width(std::size_t axis) const { return width_[axis]; }

  const std::vector<Interval>& box() const { return box_; }
  const std::vector<std::size_t>& resolution() const { return resolution_; }

  Point center(std::size_t cell) const {
    return {centers_.data() + cell * dimension(), dimension()};
  }
  std::span<const std::uint32_t> index(std::size_t cell) const {
    return {indices_.data() + cell * dimension(), dimension()};
  }

 private:
  std::vector<Interval> box_;
  std::vector<std::size_t> resolution_;
  std::vector<double> width_;
  double cell_measure_ = 0.0;
  std::size_t cell_count_ = 0;
  std::vector<double> centers_;
  std::vector<std::uint32_t> indices_;
};

GridDomain build_grid(std::vector<Interval> box, std::vector<std::size_t> resolution,
                      const MaskPredicate& inside);

inline double measure(const GridDomain& domain) { return domain.measure(); }

namespace masks {
MaskPredicate everywhere();
/// Open ball |x - center| < radius.
MaskPredicate ball(std::vector<double> center, double radius);
/// Open annulus inner < |x - center| < outer.
MaskPredicate annulus(std::vector<double> center, double inner, double outer);
}  // namespace masks

/// Values on the masked cells of a grid: cell_count rows of `components`
/// extended reals. NaN is rejected at construction.
class SampledField {
 public:
  SampledField() = default;
  SampledField(std::size_t cells, std::size_t components, std::vector<double> values);

  static SampledField scalar(std::vector<double> values);
  static SampledField constant(std::size_t cells, double value);

  std::size_t cell_count() const { return cells_; }
  std::size_t components() const { return components_; }
  bool is_scalar() const { return components_ == 1; }

  double at(std::size_t cell, std::size_t component = 0) const {
    return values_[cell * components_ + component];
  }
  std::span<const double> row(std::size_t cell) const {
    return {values_.data() + cell * components_, components_};
  }
  std::span<const double> values() const { return values_; }

  /// Euclidean magnitude per cell (absolute value for scalar fields).
  SampledField magnitude() const;
  SampledField scaled(double factor) const;

 private:
  std::size_t cells_ = 0;
  std::size_t components_ = 1;
  std::vector<double> values_;
};

/// Analytic description of u: Omega -> R^d with an optional analytic gradient.
/// Gradient layout: out[c * N + i] = d u_c / d x_i.
struct FieldExpr {
  using Evaluator = std::function<void(Point x, std::span<double> out)>;

  std::size_t components = 1;
  Evaluator value;
  Evaluator gradient;
  /// False marks u as outside W^{1,1}_loc; energies are +inf for it.
  bool weakly_differentiable = true;

  bool has_gradient() const { return static_cast<bool>(gradient); }

  static FieldExpr scalar(ScalarFn value,
                          std::function<void(Point, std::span<double>)> gradient = {});
};

SampledField sample(const FieldExpr& expr, const GridDomain& domain);

/// Analytic gradient when present, otherwise central differences with step
/// half the cell width along each axis.
SampledField gradient(const FieldExpr& expr, const GridDomain& domain);

/// Midpoint rule: sum of values times the cell measure. +inf if any value is.
double integrate(const SampledField& field, const GridDomain& domain);

/// Grid maximum over masked cells.
double ess_sup(const SampledField& field, const GridDomain& domain);

/// Finitely supported probability measure on R^k.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::size_t dimension, std::vector<double> atoms, std::vector<double> weights);

  static DiscreteMeasure dirac(std::span<const double> point);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> atom(std::size_t i) const { return {atoms_.data() + i * dim_, dim_}; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::vector<double> barycenter() const;

 private:
  std::size_t dim_;
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

// CSV import/export: header `i0,...,i{N-1},c0,...,c{d-1}`, one row per
// masked cell in storage order, values with 17 significant digits and
// +inf written as `inf`.
void write_field_csv(const SampledField& field, const GridDomain& domain, const std::string& path);
std::string format_field_csv(const SampledField& field, const GridDomain& domain);
SampledField read_field_csv(const std::string& path, const GridDomain& domain);

}  // namespace orlicz
