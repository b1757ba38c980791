#include <algorithm>
#include <cmath>

#include "orlicz/kernels.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw Error("log_spaced: need 0 < lo <= hi, count >= 1");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<double> lin_spaced(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count == 0) throw Error("lin_spaced: need lo <= hi, count >= 1");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  v.back() = hi;
  return v;
}

std::vector<double> default_t_grid() { return log_spaced(1e-4, 1e4, 64); }

std::vector<double> default_lambda_grid() { return lin_spaced(1e-3, 1.0, 64); }

namespace {

std::vector<std::size_t> strided_cells(const GridDomain& domain, std::size_t max_samples) {
  const std::size_t n = domain.cell_count();
  std::vector<std::size_t> cells;
  if (max_samples == 0 || n <= max_samples) {
    cells.resize(n);
    for (std::size_t i = 0; i < n; ++i) cells[i] = i;
    return cells;
  }
  if (max_samples == 1) return {n / 2};
  cells.reserve(max_samples);
  for (std::size_t k = 0; k < max_samples; ++k)
    cells.push_back(k * (n - 1) / (max_samples - 1));
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

struct CellScan {
  double log_sup = -kInf;
  std::size_t admissible = 0;
  std::vector<AincViolation> violations;
};

}  // namespace

GrowthReport estimate_ainc_constant(const PhiFunction& phi, double p, const GridDomain& domain,
                                    std::span<const double> t_grid,
                                    std::span<const double> lambda_grid,
                                    const AincOptions& options) {
  if (t_grid.empty() || lambda_grid.empty()) throw Error("estimate_ainc_constant: empty sample grid");
  for (double t : t_grid)
    if (!(t > 0.0) || !std::isfinite(t)) throw Error("estimate_ainc_constant: t grid must be positive");
  for (double l : lambda_grid)
    if (!(l > 0.0 && l <= 1.0)) throw Error("estimate_ainc_constant: lambda grid must lie in (0, 1]");
  if (!(p > 0.0)) throw Error("estimate_ainc_constant: p must be positive");

  GrowthReport report;
  report.p = p;
  if (options.declared_L) {
    report.checked_L = options.declared_L;
  } else if (phi.declared_L() && (!phi.declared_p() || p <= *phi.declared_p())) {
    report.checked_L = phi.declared_L();
  }
  const double log_bound = report.checked_L ? std::log(*report.checked_L) + 1e-9 : kInf;

  const auto cells = strided_cells(domain, options.max_x_samples);
  report.x_samples = cells.size();
  report.t_samples = t_grid.size();
  report.lambda_samples = lambda_grid.size();

  std::vector<double> log_lambda_p(lambda_grid.size());
  for (std::size_t j = 0; j < lambda_grid.size(); ++j) log_lambda_p[j] = p * std::log(lambda_grid[j]);

  std::vector<CellScan> scans(cells.size());
  const auto count = static_cast<long long>(cells.size());
  const int limit = kernels::thread_limit();
  (void)limit;
#pragma omp parallel for schedule(dynamic, 4) if (count > 8) num_threads(limit > 0 ? limit : omp_get_max_threads())
  for (long long k = 0; k < count; ++k) {
    CellScan& scan = scans[static_cast<std::size_t>(k)];
    const std::size_t cell = cells[static_cast<std::size_t>(k)];
    const Point x = domain.center(cell);
    for (double t : t_grid) {
      const double log_den = phi.log_value(x, t);
      if (log_den == kInf) continue;  // vacuous: anything <= +inf
      for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
        const double lambda = lambda_grid[j];
        const double log_num = phi.log_value(x, lambda * t);
        double log_ratio;
        if (log_den == -kInf) {
          if (log_num == -kInf) continue;  // 0 <= 0
          log_ratio = kInf;                 // phi(lambda t) > 0 = phi(t)
        } else if (log_num == kInf) {
          log_ratio = kInf;
        } else {
          log_ratio = log_num - log_lambda_p[j] - log_den;
        }
        ++scan.admissible;
        scan.log_sup = std::max(scan.log_sup, log_ratio);
        if (log_ratio > log_bound && scan.violations.size() < options.max_violations)
          scan.violations.push_back({cell, t, lambda, std::exp(log_ratio)});
      }
    }
  }

  double log_sup = -kInf;
  for (auto& scan : scans) {
    report.admissible += scan.admissible;
    log_sup = std::max(log_sup, scan.log_sup);
    for (const auto& v : scan.violations) {
      if (report.violations.size() >= options.max_violations) break;
      report.violations.push_back(v);
    }
  }
  if (report.admissible == 0) throw Error("estimate_ainc_constant: no admissible samples");
  // L >= 1 by definition; a lambda grid without lambda = 1 may miss the ratio 1.
  report.estimated_L = std::max(1.0, std::exp(log_sup));
  return report;
}

WeakPhiReport check_weak_phi_axioms(const PhiFunction& phi, const GridDomain& domain,
                                    std::span<const double> t_grid, const WeakPhiOptions& options) {
  if (t_grid.size() < 2) throw Error("check_weak_phi_axioms: t grid needs at least two points");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw Error("check_weak_phi_axioms: t grid must be increasing");
  if (!(t_grid.front() < 1.0 && t_grid.back() > 1.0))
    throw Error("check_weak_phi_axioms: t grid must straddle 1");

  WeakPhiReport report;
  const auto cells = strided_cells(domain, 256);
  for (std::size_t cell : cells) {
    const Point x = domain.center(cell);
    if (phi(x, 0.0) != 0.0) report.zero_at_origin = false;
    if (!(phi(x, t_grid.front()) <= options.small_t_tolerance)) report.small_t_limit = false;
    if (!(phi(x, t_grid.back()) >= options.divergence_threshold)) report.divergence = false;
    double prev = phi(x, t_grid.front());
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
      const double v = phi(x, t_grid[i]);
      if (v < prev) report.monotone = false;
      prev = v;
    }
  }
  try {
    const auto growth = estimate_ainc_constant(phi, 1.0, domain, t_grid, default_lambda_grid());
    if (is_inf(growth.estimated_L)) report.ainc1 = false;
  } catch (const Error&) {
    // No finite positive value on the sample: the aInc inequality is vacuous.
  }
  if (!report.zero_at_origin) report.failures.emplace_back("phi(x,0) != 0");
  if (!report.small_t_limit) report.failures.emplace_back("phi(x,t) does not vanish as t -> 0");
  if (!report.divergence) report.failures.emplace_back("phi(x,t) stays bounded as t -> inf");
  if (!report.monotone) report.failures.emplace_back("t -> phi(x,t) is not nondecreasing");
  if (!report.ainc1) report.failures.emplace_back("aInc(1) fails on the sample");
  return report;
}

}  // namespace orlicz
