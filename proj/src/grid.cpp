#include "orlicz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orlicz/kernels.hpp"

namespace orlicz {

GridDomain::GridDomain(std::vector<Interval> box, std::vector<std::size_t> resolution,
                       const MaskPredicate& inside)
    : box_(std::move(box)), resolution_(std::move(resolution)) {
  const std::size_t n = box_.size();
  if (n == 0) throw Error("grid: box must have at least one axis");
  if (resolution_.size() != n) throw Error("grid: resolution must list one count per axis");
  cell_measure_ = 1.0;
  width_.resize(n);
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) {
    if (!(box_[a].hi > box_[a].lo) || !std::isfinite(box_[a].lo) || !std::isfinite(box_[a].hi))
      throw Error("grid: degenerate box along axis " + std::to_string(a));
    if (resolution_[a] < 1) throw Error("grid: resolution must be >= 1");
    width_[a] = (box_[a].hi - box_[a].lo) / static_cast<double>(resolution_[a]);
    cell_measure_ *= width_[a];
    total *= resolution_[a];
  }
  if (!(cell_measure_ > 0.0)) throw Error("grid: cell measure underflows");

  std::vector<std::uint32_t> idx(n, 0);
  std::vector<double> x(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < n; ++a)
      x[a] = box_[a].lo + (static_cast<double>(idx[a]) + 0.5) * width_[a];
    if (!inside || inside(Point(x))) {
      centers_.insert(centers_.end(), x.begin(), x.end());
      indices_.insert(indices_.end(), idx.begin(), idx.end());
      ++cell_count_;
    }
    for (std::size_t a = n; a-- > 0;) {
      if (++idx[a] < resolution_[a]) break;
      idx[a] = 0;
    }
  }
  if (cell_count_ == 0) throw Error("grid: mask selects no cells");
}

GridDomain build_grid(std::vector<Interval> box, std::vector<std::size_t> resolution,
                      const MaskPredicate& inside) {
  return GridDomain(std::move(box), std::move(resolution), inside);
}

namespace masks {

MaskPredicate everywhere() {
  return [](Point) { return true; };
}

namespace {
double distance(Point x, const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - (i < c.size() ? c[i] : 0.0);
    s += d * d;
  }
  return std::sqrt(s);
}
}  // namespace

MaskPredicate ball(std::vector<double> center, double radius) {
  if (!(radius > 0.0)) throw Error("ball mask: radius must be positive");
  return [c = std::move(center), radius](Point x) { return distance(x, c) < radius; };
}

MaskPredicate annulus(std::vector<double> center, double inner, double outer) {
  if (!(inner >= 0.0) || !(outer > inner)) throw Error("annulus mask: need 0 <= inner < outer");
  return [c = std::move(center), inner, outer](Point x) {
    const double r = distance(x, c);
    return r > inner && r < outer;
  };
}

}  // namespace masks

SampledField::SampledField(std::size_t cells, std::size_t components, std::vector<double> values)
    : cells_(cells), components_(components), values_(std::move(values)) {
  if (components_ == 0) throw Error("field: component count must be >= 1");
  if (values_.size() != cells_ * components_) throw Error("field: value array has wrong shape");
  for (double v : values_)
    if (std::isnan(v)) throw Error("field: NaN values are not allowed");
}

SampledField SampledField::scalar(std::vector<double> values) {
  const std::size_t n = values.size();
  return SampledField(n, 1, std::move(values));
}

SampledField SampledField::constant(std::size_t cells, double value) {
  return SampledField(cells, 1, std::vector<double>(cells, value));
}

SampledField SampledField::magnitude() const {
  std::vector<double> out(cells_);
  if (components_ == 1) {
    for (std::size_t i = 0; i < cells_; ++i) out[i] = std::abs(values_[i]);
  } else {
    for (std::size_t i = 0; i < cells_; ++i) {
      double s = 0.0;
      for (double v : row(i)) s += v * v;
      out[i] = std::sqrt(s);
    }
  }
  return SampledField(cells_, 1, std::move(out));
}

SampledField SampledField::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return SampledField(cells_, components_, std::move(out));
}

FieldExpr FieldExpr::scalar(ScalarFn value, std::function<void(Point, std::span<double>)> gradient) {
  FieldExpr e;
  e.components = 1;
  e.value = [v = std::move(value)](Point x, std::span<double> out) { out[0] = v(x); };
  e.gradient = std::move(gradient);
  return e;
}

namespace {
void require_cells(const SampledField& field, const GridDomain& domain) {
  if (field.cell_count() != domain.cell_count())
    throw Error("field does not match the domain's masked cell count");
}
}  // namespace

SampledField sample(const FieldExpr& expr, const GridDomain& domain) {
  if (!expr.value) throw Error("sample: expression has no value evaluator");
  const std::size_t d = expr.components;
  const std::size_t cells = domain.cell_count();
  std::vector<double> values(cells * d);
  for (std::size_t c = 0; c < cells; ++c)
    expr.value(domain.center(c), std::span<double>(values.data() + c * d, d));
  for (double v : values)
    if (std::isnan(v)) throw Error("sample: expression produced NaN at a cell center");
  return SampledField(cells, d, std::move(values));
}

SampledField gradient(const FieldExpr& expr, const GridDomain& domain) {
  const std::size_t n = domain.dimension();
  const std::size_t d = expr.components;
  const std::size_t cells = domain.cell_count();
  const std::size_t width = n * d;
  std::vector<double> values(cells * width);
  if (expr.has_gradient()) {
    for (std::size_t c = 0; c < cells; ++c)
      expr.gradient(domain.center(c), std::span<double>(values.data() + c * width, width));
  } else {
    if (!expr.value) throw Error("gradient: expression has no value evaluator");
    std::vector<double> x(n), plus(d), minus(d);
    for (std::size_t c = 0; c < cells; ++c) {
      const Point center = domain.center(c);
      for (std::size_t i = 0; i < n; ++i) {
        const double h = 0.5 * domain.cell_width(i);
        std::copy(center.begin(), center.end(), x.begin());
        x[i] = center[i] + h;
        expr.value(Point(x), plus);
        x[i] = center[i] - h;
        expr.value(Point(x), minus);
        for (std::size_t k = 0; k < d; ++k)
          values[c * width + k * n + i] = (plus[k] - minus[k]) / (2.0 * h);
      }
    }
  }
  for (double v : values)
    if (!std::isfinite(v)) throw Error("gradient: evaluation failed at a stencil point");
  return SampledField(cells, width, std::move(values));
}

double integrate(const SampledField& field, const GridDomain& domain) {
  require_cells(field, domain);
  if (!field.is_scalar()) throw Error("integrate: scalar field required");
  return kernels::sum(field.values()) * domain.cell_measure();
}

double ess_sup(const SampledField& field, const GridDomain& domain) {
  require_cells(field, domain);
  if (!field.is_scalar()) throw Error("ess_sup: scalar field required");
  return kernels::max(field.values());
}

DiscreteMeasure::DiscreteMeasure(std::size_t dimension, std::vector<double> atoms,
                                 std::vector<double> weights)
    : dim_(dimension), atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (dim_ == 0) throw Error("measure: dimension must be >= 1");
  if (weights_.empty()) throw Error("measure: needs at least one atom");
  if (atoms_.size() != weights_.size() * dim_) throw Error("measure: atoms/weights shape mismatch");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error("measure: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("measure: weights must sum to 1");
  for (double a : atoms_)
    if (!std::isfinite(a)) throw Error("measure: atoms must be finite");
}

DiscreteMeasure DiscreteMeasure::dirac(std::span<const double> point) {
  return DiscreteMeasure(point.size(), std::vector<double>(point.begin(), point.end()), {1.0});
}

std::vector<double> DiscreteMeasure::barycenter() const {
  std::vector<double> b(dim_, 0.0);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t k = 0; k < dim_; ++k) b[k] += weights_[i] * atoms_[i * dim_ + k];
  return b;
}

}  // namespace orlicz
