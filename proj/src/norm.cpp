#include "orlicz/norm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/csv.hpp"
#include "orlicz/kernels.hpp"

namespace orlicz {

namespace {

constexpr double kBracketFactor = 4.0;
constexpr int kBracketSteps = 60;
constexpr int kMaxIterations = 200;

void require_cells(const SampledField& field, const GridDomain& domain) {
  if (field.cell_count() != domain.cell_count())
    throw Error("field does not match the domain's masked cell count");
}

std::vector<double> magnitudes(const SampledField& field) {
  const auto mag = field.magnitude();
  return {mag.values().begin(), mag.values().end()};
}

// log of sum over stacked magnitude arrays of phi(x, m/lambda), times the
// cell measure.
double log_modular_stack(const PhiFunction& phi, const GridDomain& domain,
                         const std::vector<std::vector<double>>& stack, double lambda,
                         std::vector<double>& scratch) {
  const std::size_t cells = domain.cell_count();
  scratch.resize(cells * stack.size());
  const double inv = 1.0 / lambda;
  for (std::size_t s = 0; s < stack.size(); ++s) {
    const auto& m = stack[s];
    kernels::map_cells(cells, std::span<double>(scratch.data() + s * cells, cells),
                       [&](std::size_t c) { return phi.log_value(domain.center(c), m[c] * inv); });
  }
  const double lse = kernels::log_sum_exp(scratch);
  return lse + std::log(domain.cell_measure());
}

double stack_max(const std::vector<std::vector<double>>& stack) {
  double s = 0.0;
  for (const auto& m : stack) s = std::max(s, kernels::max(m));
  return s;
}

NormResult norm_of_stack(const PhiFunction& phi, const GridDomain& domain,
                         const std::vector<std::vector<double>>& stack, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw Error("luxemburg_norm: rel_tol must lie in (0, 1e-2]");
  const double scale = stack_max(stack);
  if (const auto tau = phi.indicator_threshold(); tau && scale > 0.0 && !is_inf(scale)) {
    // rho(f/lambda) is 0 for lambda >= max|f|/tau and +inf below: exact.
    const double v = scale / *tau;
    return {v, 0, v, v, true};
  }
  std::vector<double> scratch;
  return detail::bisect_norm(
      [&](double lambda) { return log_modular_stack(phi, domain, stack, lambda, scratch); }, scale,
      rel_tol);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

namespace detail {

NormResult bisect_norm(const std::function<double(double)>& log_modular_at, double scale,
                       double rel_tol) {
  NormResult r;
  if (scale == 0.0) {
    r.tolerance_met = true;
    return r;
  }
  if (is_inf(scale)) {
    r.value = r.lo = r.hi = kInf;
    return r;
  }
  auto within = [&](double lambda) {
    ++r.iterations;
    return log_modular_at(lambda) <= 0.0;
  };

  double lo = scale / kBracketFactor;
  double hi = scale * kBracketFactor;
  for (int k = 0; !within(hi); ++k) {
    if (k == kBracketSteps) {
      r.value = kInf;
      r.lo = hi;
      r.hi = kInf;
      return r;
    }
    lo = hi;
    hi *= 2.0;
  }
  for (int k = 0; within(lo); ++k) {
    if (k == kBracketSteps) {
      r.value = 0.0;
      r.lo = 0.0;
      r.hi = lo;
      return r;
    }
    hi = lo;
    lo *= 0.5;
  }
  int steps = 0;
  while (hi - lo > rel_tol * lo && steps < kMaxIterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (within(mid))
      hi = mid;
    else
      lo = mid;
    ++steps;
  }
  r.lo = lo;
  r.hi = hi;
  r.value = 0.5 * (lo + hi);
  r.tolerance_met = hi - lo <= rel_tol * lo;
  return r;
}

}  // namespace detail

double modular(const PhiFunction& phi, const SampledField& field, const GridDomain& domain) {
  require_cells(field, domain);
  const auto m = magnitudes(field);
  std::vector<double> v(m.size());
  kernels::map_cells(m.size(), v, [&](std::size_t c) { return phi(domain.center(c), m[c]); });
  return kernels::sum(v) * domain.cell_measure();
}

double log_modular(const PhiFunction& phi, const SampledField& field, const GridDomain& domain) {
  require_cells(field, domain);
  std::vector<double> scratch;
  return log_modular_stack(phi, domain, {magnitudes(field)}, 1.0, scratch);
}

NormResult luxemburg_norm(const PhiFunction& phi, const SampledField& field, const GridDomain& domain,
                          double rel_tol) {
  require_cells(field, domain);
  return norm_of_stack(phi, domain, {magnitudes(field)}, rel_tol);
}

double lp_norm(const SampledField& field, double p, const GridDomain& domain) {
  require_cells(field, domain);
  if (!(p >= 1.0)) throw Error("lp_norm: p must lie in [1, inf]");
  const auto m = magnitudes(field);
  const double s = kernels::max(m);
  if (is_inf(p) || s == 0.0 || is_inf(s)) return s;
  std::vector<double> v(m.size());
  kernels::map_cells(m.size(), v, [&](std::size_t c) { return std::pow(m[c] / s, p); });
  return s * std::pow(kernels::sum(v) * domain.cell_measure(), 1.0 / p);
}

namespace {

std::vector<std::vector<double>> sobolev_stack(const FieldExpr& u, const GridDomain& domain) {
  std::vector<std::vector<double>> stack;
  stack.push_back(magnitudes(sample(u, domain)));
  const auto grad = gradient(u, domain);
  const std::size_t n = domain.dimension();
  const std::size_t d = u.components;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> partial(domain.cell_count());
    for (std::size_t c = 0; c < domain.cell_count(); ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double g = grad.at(c, k * n + i);
        s += g * g;
      }
      partial[c] = std::sqrt(s);
    }
    stack.push_back(std::move(partial));
  }
  return stack;
}

}  // namespace

double sobolev_modular(const PhiFunction& phi, const FieldExpr& u, const GridDomain& domain) {
  if (!u.weakly_differentiable) return kInf;
  double total = 0.0;
  for (const auto& m : sobolev_stack(u, domain)) {
    std::vector<double> v(m.size());
    kernels::map_cells(m.size(), v, [&](std::size_t c) { return phi(domain.center(c), m[c]); });
    total += kernels::sum(v) * domain.cell_measure();
  }
  return total;
}

NormResult sobolev_norm(const PhiFunction& phi, const FieldExpr& u, const GridDomain& domain,
                        double rel_tol) {
  if (!u.weakly_differentiable) return {kInf, 0, kInf, kInf, false};
  return norm_of_stack(phi, domain, sobolev_stack(u, domain), rel_tol);
}

UnitBallReport unit_ball_check(const PhiFunction& phi, const SampledField& field,
                               const GridDomain& domain, double rel_tol) {
  UnitBallReport r;
  r.norm = luxemburg_norm(phi, field, domain, std::min(kDefaultRelTol, rel_tol * 1e-2)).value;
  r.modular = modular(phi, field, domain);
  if (r.norm < 1.0 - rel_tol) r.first_implication = r.modular <= 1.0 + rel_tol;
  if (r.modular <= 1.0) r.second_implication = r.norm <= 1.0 + rel_tol;
  return r;
}

double embedding_constant(double L, double c, double omega_measure, double p) {
  if (!(L >= 1.0) || !(c >= 1.0) || !(p >= 1.0) || !(omega_measure > 0.0))
    throw Error("embedding_constant: need L, c, p >= 1 and |Omega| > 0");
  return std::pow(2.0 * L * (omega_measure + c), 1.0 / p);
}

bool EmbeddingReport::pass() const {
  if (!hypotheses_hold) return false;
  return std::all_of(cases.begin(), cases.end(), [](const EmbeddingCase& e) { return e.holds; });
}

EmbeddingReport embedding_check(const PhiFunction& phi, double p, double L, double c,
                                const std::vector<SampledField>& fields, const GridDomain& domain,
                                double rel_tol) {
  EmbeddingReport report;
  const auto anchors = anchor_bounds(phi, domain);
  constexpr double slack = 1e-12;
  if (!(anchors.minus >= (1.0 / c) * (1.0 - slack) && anchors.plus <= c * (1.0 + slack))) {
    report.hypotheses_hold = false;
    report.hypothesis_failure = "phi(x,1) leaves [1/c, c]";
    return report;
  }
  try {
    AincOptions opts;
    opts.declared_L = L;
    const auto growth = estimate_ainc_constant(phi, p, domain, default_t_grid(), default_lambda_grid(), opts);
    if (!growth.violations.empty()) {
      report.hypotheses_hold = false;
      report.hypothesis_failure = "aInc(p) with the declared L fails on the sample";
      return report;
    }
  } catch (const Error& e) {
    report.hypotheses_hold = false;
    report.hypothesis_failure = e.what();
    return report;
  }
  report.constant = embedding_constant(L, c, domain.measure(), p);
  for (const auto& f : fields) {
    EmbeddingCase e;
    e.lp = lp_norm(f, p, domain);
    e.phi_norm = luxemburg_norm(phi, f, domain).value;
    e.bound = report.constant * e.phi_norm;
    e.holds = e.lp <= e.bound * (1.0 + rel_tol);
    report.cases.push_back(e);
  }
  return report;
}

ModularBound norm_from_modular_bound(const PhiFunction& phi, const SampledField& field, double p,
                                     double L, const GridDomain& domain, double rel_tol) {
  if (!(p > 0.0) || !(L >= 1.0)) throw Error("norm_from_modular_bound: need p > 0 and L >= 1");
  ModularBound b;
  const double rho = modular(phi, field, domain);
  b.bound = is_inf(rho) ? kInf : std::max(std::pow(L * rho, 1.0 / p), 1.0);
  b.norm = luxemburg_norm(phi, field, domain).value;
  b.holds = b.norm <= b.bound * (1.0 + rel_tol);
  return b;
}

std::string format_norm_records(const std::vector<NormRecord>& records) {
  std::ostringstream os;
  os << "field,phi,modular,norm,iterations,tolerance_met\n";
  for (const auto& r : records) {
    os << csv_field(r.field_id) << ',' << csv_field(r.phi_id) << ',' << csv::format_number(r.modular)
       << ',' << csv::format_number(r.norm.value) << ',' << r.norm.iterations << ','
       << (r.norm.tolerance_met ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace orlicz
