#include "orlicz/phi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <utility>

#include "orlicz/kernels.hpp"

namespace orlicz {

namespace {

constexpr std::array<std::pair<PhiFamily, std::string_view>, 10> kFamilyNames{{
    {PhiFamily::power, "power"},
    {PhiFamily::scaled_power, "scaled_power"},
    {PhiFamily::variable_exponent, "variable_exponent"},
    {PhiFamily::double_phase, "double_phase"},
    {PhiFamily::infinity, "infinity"},
    {PhiFamily::scaled_infinity, "scaled_infinity"},
    {PhiFamily::linear_plus_infinity, "linear_plus_infinity"},
    {PhiFamily::scaled_base, "scaled_base"},
    {PhiFamily::normalized, "normalized"},
    {PhiFamily::custom, "custom"},
}};

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double log_t(double t) { return t <= 0.0 ? -kInf : std::log(t); }

void require_exponent(double p, const char* what) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(std::string(what) + ": exponent must be >= 1");
}

}  // namespace

std::string_view to_string(PhiFamily family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "unknown";
}

PhiFamily parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames)
    if (n == name) return f;
  throw Error("unknown phi family '" + std::string(name) + "'");
}

PhiFunction::PhiFunction(PhiFamily family, std::string name, PhiEvaluator value,
                         PhiEvaluator log_value, Growth growth)
    : family_(family),
      name_(std::move(name)),
      value_(std::move(value)),
      log_value_(std::move(log_value)),
      growth_(growth) {
  if (!value_) throw Error("phi: missing evaluator");
  if (!log_value_) {
    log_value_ = [v = value_](Point x, double t) { return safe_log(v(x, t)); };
  }
  if (growth_.L && !(*growth_.L >= 1.0)) throw Error("phi: declared L must be >= 1");
  if (growth_.p && !(*growth_.p >= 1.0)) throw Error("phi: declared p must be >= 1");
}

namespace phi {

PhiFunction power(double p) {
  require_exponent(p, "power");
  return PhiFunction(
      PhiFamily::power, "power(p=" + short_number(p) + ")",
      [p](Point, double t) { return std::pow(t, p); },
      [p](Point, double t) { return p * log_t(t); }, {p, 1.0, std::nullopt});
}

PhiFunction scaled_power(double p, double scale) {
  require_exponent(p, "scaled_power");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error("scaled_power: scale must be positive");
  const double log_scale = std::log(scale);
  return PhiFunction(
      PhiFamily::scaled_power, "scaled_power(p=" + short_number(p) + ",s=" + short_number(scale) + ")",
      [p, scale](Point, double t) { return scale * std::pow(t, p); },
      [p, log_scale](Point, double t) { return log_scale + p * log_t(t); }, {p, 1.0, std::nullopt});
}

PhiFunction variable_exponent(ScalarFn exponent, std::optional<double> p_lower, std::string label) {
  if (!exponent) throw Error("variable_exponent: missing exponent field");
  if (p_lower) require_exponent(*p_lower, "variable_exponent");
  return PhiFunction(
      PhiFamily::variable_exponent, std::move(label),
      [exponent](Point x, double t) { return std::pow(t, exponent(x)); },
      [exponent](Point x, double t) { return exponent(x) * log_t(t); },
      {p_lower, 1.0, std::nullopt});
}

PhiFunction double_phase(double p, double q, ScalarFn weight) {
  require_exponent(p, "double_phase");
  if (!(q >= p) || !std::isfinite(q)) throw Error("double_phase: need q >= p");
  if (!weight) throw Error("double_phase: missing weight field");
  return PhiFunction(
      PhiFamily::double_phase, "double_phase(p=" + short_number(p) + ",q=" + short_number(q) + ")",
      [p, q, weight](Point x, double t) { return std::pow(t, p) + weight(x) * std::pow(t, q); },
      [p, q, weight](Point x, double t) {
        const double lt = log_t(t);
        return log_add(p * lt, safe_log(weight(x)) + q * lt);
      },
      {p, 1.0, std::nullopt});
}

PhiFunction infinity() {
  return PhiFunction(
      PhiFamily::infinity, "infinity",
      [](Point, double t) { return t > 1.0 ? kInf : 0.0; },
      [](Point, double t) { return t > 1.0 ? kInf : -kInf; }, {std::nullopt, 1.0, 1.0});
}

PhiFunction scaled_infinity(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error("scaled_infinity: a must be positive");
  const double tau = 1.0 / a;
  return PhiFunction(
      PhiFamily::scaled_infinity, "scaled_infinity(a=" + short_number(a) + ")",
      [tau](Point, double t) { return t > tau ? kInf : 0.0; },
      [tau](Point, double t) { return t > tau ? kInf : -kInf; }, {std::nullopt, 1.0, tau});
}

PhiFunction linear_plus_infinity() {
  const auto value = [](Point, double t) { return t > 1.0 ? kInf : std::max(0.0, 2.0 * t - 1.0); };
  return PhiFunction(
      PhiFamily::linear_plus_infinity, "linear_plus_infinity", value,
      [value](Point x, double t) { return safe_log(value(x, t)); }, {1.0, 1.0, std::nullopt});
}

PhiFunction scaled_base(double a, double n) {
  require_exponent(n, "scaled_base");
  if (!(a > 0.0) || !std::isfinite(a)) throw Error("scaled_base: a must be positive");
  const double log_a = std::log(a);
  return PhiFunction(
      PhiFamily::scaled_base, "scaled_base(a=" + short_number(a) + ",n=" + short_number(n) + ")",
      [a, n](Point, double t) { return std::pow(a * t, n); },
      [log_a, n](Point, double t) { return n * (log_a + log_t(t)); }, {n, 1.0, std::nullopt});
}

PhiFunction custom(PhiEvaluator value, std::string name) {
  return PhiFunction(PhiFamily::custom, std::move(name), std::move(value), {}, {});
}

}  // namespace phi

PhiFunction make_family(PhiFamily family, const FamilyParams& params,
                        const CoefficientFields& coeffs, const GridDomain* validate_on) {
  switch (family) {
    case PhiFamily::power:
      return phi::power(params.p);
    case PhiFamily::scaled_power:
      return phi::scaled_power(params.p, params.scale);
    case PhiFamily::variable_exponent: {
      if (!coeffs.exponent) throw Error("variable_exponent: exponent field required");
      if (validate_on) {
        for (std::size_t c = 0; c < validate_on->cell_count(); ++c) {
          const double px = coeffs.exponent(validate_on->center(c));
          if (!(px >= 1.0) || !std::isfinite(px))
            throw Error("variable_exponent: p(x) must be >= 1 at every cell center");
        }
      }
      return phi::variable_exponent(coeffs.exponent, params.p_lower);
    }
    case PhiFamily::double_phase: {
      if (!coeffs.weight) throw Error("double_phase: weight field a(x) required");
      if (validate_on) {
        for (std::size_t c = 0; c < validate_on->cell_count(); ++c) {
          const double a = coeffs.weight(validate_on->center(c));
          if (!(a >= 0.0) || !std::isfinite(a))
            throw Error("double_phase: a(x) must be finite and >= 0 at every cell center");
        }
      }
      return phi::double_phase(params.p, params.q, coeffs.weight);
    }
    case PhiFamily::infinity:
      return phi::infinity();
    case PhiFamily::scaled_infinity:
      return phi::scaled_infinity(params.scale);
    case PhiFamily::linear_plus_infinity:
      return phi::linear_plus_infinity();
    case PhiFamily::scaled_base:
      return phi::scaled_base(params.scale, params.p);
    case PhiFamily::normalized:
      throw Error("normalized functions are produced by normalize(), not make_family");
    case PhiFamily::custom:
      throw Error("custom functions are produced by phi::custom(), not make_family");
  }
  throw Error("unknown phi family tag");
}

namespace {

std::vector<double> values_at_one(const PhiFunction& phi, const GridDomain& domain) {
  std::vector<double> v(domain.cell_count());
  kernels::map_cells(v.size(), v, [&](std::size_t c) { return phi(domain.center(c), 1.0); });
  return v;
}

}  // namespace

AnchorBounds anchor_bounds(const PhiFunction& phi, const GridDomain& domain) {
  const auto v = values_at_one(phi, domain);
  return {kernels::min(v), kernels::max(v)};
}

bool check_a0(const PhiFunction& phi, double beta, const GridDomain& domain) {
  if (!(beta > 0.0 && beta <= 1.0)) throw Error("check_a0: beta must lie in (0, 1]");
  const double inv = 1.0 / beta;
  std::vector<double> ok(domain.cell_count());
  kernels::map_cells(ok.size(), ok, [&](std::size_t c) {
    const Point x = domain.center(c);
    return (phi(x, beta) <= 1.0 && 1.0 <= phi(x, inv)) ? 1.0 : 0.0;
  });
  return kernels::min(ok) > 0.0;
}

PhiFunction normalize(const PhiFunction& phi, const GridDomain& domain) {
  const auto v = values_at_one(phi, domain);
  for (double a : v)
    if (!(a > 0.0) || is_inf(a))
      throw Error("normalize: phi(x,1) must lie in (0, inf) at every cell center");
  PhiFunction base = phi;
  return PhiFunction(
      PhiFamily::normalized, "normalized(" + phi.name() + ")",
      [base](Point x, double t) { return base(x, t) / base(x, 1.0); },
      [base](Point x, double t) { return base.log_value(x, t) - base.log_value(x, 1.0); },
      {phi.declared_p(), phi.declared_L(), std::nullopt});
}

bool lower_bound_check(const PhiFunction& phi, double p, double L, double c,
                       const GridDomain& domain, std::span<const double> t_grid) {
  if (!(L > 0.0) || !(c > 0.0)) throw Error("lower_bound_check: L and c must be positive");
  std::vector<double> rhs(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k)
    rhs[k] = std::pow(t_grid[k], p) / (L * c) - 1.0 / c;
  std::vector<double> ok(domain.cell_count());
  kernels::map_cells(ok.size(), ok, [&](std::size_t cell) {
    const Point x = domain.center(cell);
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const double lhs = phi(x, t_grid[k]);
      if (is_inf(rhs[k])) {
        if (!is_inf(lhs)) return 0.0;
      } else if (lhs < rhs[k] - 1e-12 * std::abs(rhs[k])) {
        return 0.0;
      }
    }
    return 1.0;
  });
  return kernels::min(ok) > 0.0;
}

}  // namespace orlicz
