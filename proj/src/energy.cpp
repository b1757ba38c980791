#include "orlicz/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orlicz/kernels.hpp"

namespace orlicz {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

}  // namespace

namespace integrands {

Integrand abs_xi() {
  return {"abs_xi", [](Point, std::span<const double>, std::span<const double> xi) { return norm2(xi); },
          Coercivity{1.0, 1.0}, true};
}

Integrand abs_xi_pow(double k) {
  if (!(k > 0.0)) throw Error("abs_xi_pow: exponent must be positive");
  return {"abs_xi_pow(" + std::to_string(k) + ")",
          [k](Point, std::span<const double>, std::span<const double> xi) { return std::pow(norm2(xi), k); },
          Coercivity{1.0, k}, true};
}

Integrand sqrt_abs_xi() {
  return {"sqrt_abs_xi",
          [](Point, std::span<const double>, std::span<const double> xi) { return std::sqrt(norm2(xi)); },
          Coercivity{1.0, 0.5}, true};
}

Integrand constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw Error("constant integrand: value must be finite and >= 0");
  return {"constant", [value](Point, std::span<const double>, std::span<const double>) { return value; },
          std::nullopt, true};
}

Integrand affine_max(std::vector<std::vector<double>> slopes, std::vector<double> offsets) {
  if (slopes.empty() || slopes.size() != offsets.size())
    throw Error("affine_max: need one offset per slope row");
  return {"affine_max",
          [slopes = std::move(slopes), offsets = std::move(offsets)](Point, std::span<const double>,
                                                                     std::span<const double> xi) {
            double m = 0.0;
            for (std::size_t j = 0; j < slopes.size(); ++j) {
              double v = offsets[j];
              const std::size_t n = std::min(slopes[j].size(), xi.size());
              for (std::size_t i = 0; i < n; ++i) v += slopes[j][i] * xi[i];
              m = std::max(m, v);
            }
            return m;
          },
          std::nullopt, true};
}

}  // namespace integrands

SampledField composite(const Integrand& f, const FieldExpr& u, const GridDomain& domain) {
  if (!u.weakly_differentiable) throw Error("composite: u is marked as not weakly differentiable");
  const auto values = sample(u, domain);
  const auto grad = gradient(u, domain);
  std::vector<double> out(domain.cell_count());
  kernels::map_cells(out.size(), out, [&](std::size_t c) {
    return f(domain.center(c), values.row(c), grad.row(c));
  });
  return SampledField::scalar(std::move(out));
}

EnergyValue norm_energy(const PhiFunction& phi, const Integrand& f, const FieldExpr& u,
                        const GridDomain& domain, double rel_tol) {
  if (!u.weakly_differentiable) return {kInf, EnergyKind::norm_energy};
  return {luxemburg_norm(phi, composite(f, u, domain), domain, rel_tol).value, EnergyKind::norm_energy};
}

EnergyValue modular_energy(const PhiFunction& phi, const Integrand& f, const FieldExpr& u,
                           const GridDomain& domain) {
  if (!u.weakly_differentiable) return {kInf, EnergyKind::modular_energy};
  return {modular(phi, composite(f, u, domain), domain), EnergyKind::modular_energy};
}

EnergyValue sup_energy(const Integrand& f, const FieldExpr& u, const GridDomain& domain) {
  if (!u.weakly_differentiable) return {kInf, EnergyKind::sup_energy};
  return {ess_sup(composite(f, u, domain), domain), EnergyKind::sup_energy};
}

EnergyValue indicator_energy(const Integrand& f, const FieldExpr& u, const GridDomain& domain) {
  if (!u.weakly_differentiable) return {kInf, EnergyKind::indicator_energy};
  const double s = ess_sup(composite(f, u, domain), domain);
  return {s <= 1.0 ? 0.0 : kInf, EnergyKind::indicator_energy};
}

std::vector<double> default_theta_grid() { return lin_spaced(0.0, 1.0, 33); }

LevelConvexReport check_level_convex(const Integrand& f, const std::vector<Vec>& x_samples,
                                     const std::vector<Vec>& u_samples,
                                     const std::vector<std::pair<Vec, Vec>>& xi_pairs,
                                     std::span<const double> theta_grid) {
  if (x_samples.empty() || u_samples.empty() || xi_pairs.empty() || theta_grid.empty())
    throw Error("check_level_convex: sample grids must be nonempty");
  LevelConvexReport report;
  Vec mid;
  for (std::size_t ix = 0; ix < x_samples.size(); ++ix) {
    const Point x(x_samples[ix]);
    for (std::size_t iu = 0; iu < u_samples.size(); ++iu) {
      const auto& u = u_samples[iu];
      for (std::size_t ip = 0; ip < xi_pairs.size(); ++ip) {
        const auto& [a, b] = xi_pairs[ip];
        if (a.size() != b.size()) throw Error("check_level_convex: xi pair dimension mismatch");
        const double bound = std::max(f(x, u, a), f(x, u, b));
        mid.resize(a.size());
        for (double theta : theta_grid) {
          for (std::size_t k = 0; k < a.size(); ++k) mid[k] = theta * a[k] + (1.0 - theta) * b[k];
          const double v = f(x, u, mid);
          ++report.checked;
          if (v > bound + 1e-12 * std::max(1.0, std::abs(bound)))
            report.violations.push_back({ix, iu, ip, theta, v, bound});
        }
      }
    }
  }
  return report;
}

CoercivityReport check_coercivity(const Integrand& f, double alpha, double gamma,
                                  const std::vector<CoercivitySample>& samples) {
  if (!(alpha > 0.0) || !(gamma > 0.0)) throw Error("check_coercivity: alpha and gamma must be positive");
  CoercivityReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const double lower = alpha * std::pow(norm2(s.xi), gamma);
    if (f(Point(s.x), s.u, s.xi) < lower * (1.0 - 1e-12)) report.violations.push_back(i);
  }
  return report;
}

JensenReport discrete_jensen_check(const std::function<double(std::span<const double>)>& g,
                                   const DiscreteMeasure& mu) {
  JensenReport r;
  const auto bary = mu.barycenter();
  r.at_barycenter = g(bary);
  r.max_over_atoms = -kInf;
  for (std::size_t i = 0; i < mu.size(); ++i) r.max_over_atoms = std::max(r.max_over_atoms, g(mu.atom(i)));
  r.margin = r.max_over_atoms - r.at_barycenter;
  return r;
}

LevelConvexSample random_level_convex(std::mt19937_64& rng, std::size_t dimension) {
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_int_distribution<int> pick(0, 4);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k = count(rng);
  std::vector<double> slopes(static_cast<std::size_t>(k) * dimension);
  std::vector<double> offsets(static_cast<std::size_t>(k));
  for (double& s : slopes) s = normal(rng);
  for (double& b : offsets) b = normal(rng);
  const int outer = pick(rng);
  static constexpr const char* kOuterNames[] = {"identity", "exp", "atan", "cubic", "tanh"};

  auto inner = [slopes, offsets, dimension](std::span<const double> xi) {
    double m = -kInf;
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      double v = offsets[j];
      for (std::size_t i = 0; i < dimension; ++i) v += slopes[j * dimension + i] * xi[i];
      m = std::max(m, v);
    }
    return m;
  };
  std::function<double(std::span<const double>)> fn;
  switch (outer) {
    case 0: fn = inner; break;
    case 1: fn = [inner](std::span<const double> xi) { return std::exp(inner(xi)); }; break;
    case 2: fn = [inner](std::span<const double> xi) { return std::atan(inner(xi)); }; break;
    case 3: fn = [inner](std::span<const double> xi) { const double t = inner(xi); return t * t * t + t; }; break;
    default: fn = [inner](std::span<const double> xi) { return std::tanh(inner(xi)); }; break;
  }
  return {std::move(fn), std::string(kOuterNames[outer]) + " of max of " + std::to_string(k) + " affine maps"};
}

YoungProbe young_limit_probe(const Integrand& f, const FieldExpr& u,
                             const std::vector<DiscreteMeasure>& measures, const GridDomain& domain,
                             std::span<const double> p_list) {
  const std::size_t cells = domain.cell_count();
  if (measures.size() != cells) throw Error("young_limit_probe: need one measure per masked cell");
  const std::size_t width = domain.dimension() * u.components;
  const auto values = sample(u, domain);

  // Per-cell log f at every atom, computed once.
  std::vector<std::vector<double>> log_f(cells);
  YoungProbe probe;
  for (std::size_t c = 0; c < cells; ++c) {
    const auto& mu = measures[c];
    if (mu.dimension() != width) throw Error("young_limit_probe: atoms must live in R^{N d}");
    log_f[c].resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double v = f(domain.center(c), values.row(c), mu.atom(i));
      probe.double_max = std::max(probe.double_max, v);
      log_f[c][i] = safe_log(v);
    }
  }
  std::vector<double> per_cell(cells);
  for (double p : p_list) {
    if (!(p > 0.0)) throw Error("young_limit_probe: p must be positive");
    kernels::map_cells(cells, per_cell, [&](std::size_t c) {
      const auto& mu = measures[c];
      double acc = -kInf;
      for (std::size_t i = 0; i < mu.size(); ++i) acc = log_add(acc, std::log(mu.weight(i)) + p * log_f[c][i]);
      return acc;
    });
    const double log_integral = kernels::log_sum_exp(per_cell) + std::log(domain.cell_measure());
    probe.rows.push_back({p, std::exp(log_integral / p)});
  }
  return probe;
}

std::vector<DiscreteMeasure> dirac_measures(const FieldExpr& u, const GridDomain& domain) {
  const auto grad = gradient(u, domain);
  std::vector<DiscreteMeasure> out;
  out.reserve(domain.cell_count());
  for (std::size_t c = 0; c < domain.cell_count(); ++c) out.push_back(DiscreteMeasure::dirac(grad.row(c)));
  return out;
}

}  // namespace orlicz
