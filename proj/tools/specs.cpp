#include "specs.hpp"

#include <cmath>

#include "orlicz/csv.hpp"
#include "orlicz/fields.hpp"

namespace orlicz::cli {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double to_number(std::string_view text) {
  try {
    return csv::parse_number(text);
  } catch (const Error&) {
    throw Error("expected a number, got '" + std::string(text) + "'");
  }
}

}  // namespace

double SpecTokens::number(const std::string& key, double fallback) const {
  const auto it = keys.find(key);
  return it == keys.end() ? fallback : to_number(it->second);
}

std::vector<double> SpecTokens::numbers(const std::string& key) const {
  const auto it = keys.find(key);
  if (it == keys.end()) return {};
  return parse_number_list(it->second);
}

SpecTokens tokenize(std::string_view spec) {
  if (spec.empty()) throw Error("empty spec");
  const auto parts = split(spec, ':');
  SpecTokens t;
  t.name = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos)
      t.positional.push_back(parts[i]);
    else
      t.keys[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
  }
  return t;
}

std::vector<double> parse_number_list(std::string_view spec) {
  std::vector<double> out;
  for (const auto& part : split(spec, ',')) out.push_back(to_number(part));
  return out;
}

std::vector<long> parse_n_list(std::string_view spec) {
  std::vector<long> out;
  const auto dots = spec.find("..");
  if (dots != std::string_view::npos) {
    const double a = to_number(spec.substr(0, dots));
    const double b = to_number(spec.substr(dots + 2));
    if (!(a >= 1.0) || !(b >= a) || a != std::floor(a) || b != std::floor(b))
      throw Error("n range must be a..b with integers 1 <= a <= b");
    for (long n = static_cast<long>(a); n <= static_cast<long>(b); n *= 2) out.push_back(n);
    return out;
  }
  for (double v : parse_number_list(spec)) {
    if (!(v >= 1.0) || v != std::floor(v)) throw Error("n values must be integers >= 1");
    out.push_back(static_cast<long>(v));
  }
  return out;
}

GridDomain parse_domain(std::string_view spec) {
  const auto t = tokenize(spec);
  if (t.positional.size() != 1) throw Error("domain spec needs box coordinates, e.g. box:0,1:res=1000");
  const auto coords = parse_number_list(t.positional.front());
  if (coords.empty() || coords.size() % 2 != 0) throw Error("domain: coordinates must come in lo,hi pairs");
  const std::size_t n = coords.size() / 2;
  std::vector<Interval> box;
  for (std::size_t a = 0; a < n; ++a) box.push_back({coords[2 * a], coords[2 * a + 1]});

  std::vector<std::size_t> res(n, 100);
  if (t.has("res")) {
    const auto r = t.numbers("res");
    if (r.size() != 1 && r.size() != n) throw Error("domain: res takes one value or one per axis");
    for (std::size_t a = 0; a < n; ++a) {
      const double v = r.size() == 1 ? r[0] : r[a];
      if (!(v >= 1.0) || v != std::floor(v)) throw Error("domain: res must be a positive integer");
      res[a] = static_cast<std::size_t>(v);
    }
  }
  std::vector<double> center = t.numbers("center");
  if (center.empty()) center.assign(n, 0.0);
  if (center.size() != n) throw Error("domain: center needs one coordinate per axis");

  MaskPredicate mask;
  if (t.name == "box")
    mask = masks::everywhere();
  else if (t.name == "ball")
    mask = masks::ball(center, t.number("r", 1.0));
  else if (t.name == "annulus")
    mask = masks::annulus(center, t.number("rin", 0.5), t.number("rout", 1.0));
  else
    throw Error("unknown mask '" + t.name + "' (expected box, ball or annulus)");
  return build_grid(std::move(box), std::move(res), mask);
}

PhiFunction parse_phi(std::string_view spec) {
  const auto t = tokenize(spec);
  const PhiFamily family = parse_family(t.name);
  FamilyParams params;
  params.p = t.number("p", 2.0);
  params.q = t.number("q", 2.0 * params.p);
  switch (family) {
    case PhiFamily::scaled_power:
      params.scale = t.number("s", 1.0 / params.p);
      break;
    case PhiFamily::scaled_base:
      params.p = t.number("n", params.p);
      params.scale = t.number("a", 2.0);
      break;
    case PhiFamily::scaled_infinity:
      params.scale = t.number("a", 2.0);
      break;
    default:
      params.scale = t.number("a", 1.0);
      break;
  }
  CoefficientFields coeffs;
  if (family == PhiFamily::double_phase) {
    const double a = t.number("a", 1.0);
    const std::string weight = t.has("weight") ? t.keys.at("weight") : "x0";
    if (weight == "x0")
      coeffs.weight = [a](Point x) { return a * x[0]; };
    else if (weight == "const")
      coeffs.weight = [a](Point) { return a; };
    else
      throw Error("double_phase: weight must be x0 or const");
  }
  if (family == PhiFamily::variable_exponent) {
    const double p0 = t.number("p0", 2.0);
    const std::string kind = t.has("kind") ? t.keys.at("kind") : "linear";
    if (kind == "linear") {
      const double slope = t.number("slope", 1.0);
      coeffs.exponent = [p0, slope](Point x) { return p0 + slope * x[0]; };
    } else if (kind == "inv_radius") {
      const double k = t.number("k", 1.0);
      coeffs.exponent = [p0, k](Point x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return p0 + k / std::sqrt(s);
      };
    } else {
      throw Error("variable_exponent: kind must be linear or inv_radius");
    }
    if (t.has("p_lower")) params.p_lower = t.number("p_lower", p0);
  }
  return make_family(family, params, coeffs);
}

FieldExpr parse_field(std::string_view spec) {
  const auto t = tokenize(spec);
  const double first = t.positional.empty() ? 1.0 : to_number(t.positional.front());
  if (t.name == "const") return fields::constant(t.number("value", first));
  if (t.name == "linear")
    return fields::linear(t.number("slope", 1.0), static_cast<std::size_t>(t.number("axis", 0.0)));
  if (t.name == "monomial") return fields::monomial(t.number("k", t.positional.empty() ? 2.0 : first));
  if (t.name == "clamp") return fields::clamp_linear(t.number("cap", first));
  if (t.name == "radial") return fields::radial();
  if (t.name == "oscillation")
    return fields::oscillation(fields::linear(t.number("slope", 1.0)), t.number("n", first));
  throw Error("unknown field '" + t.name + "' (const, linear, monomial, clamp, radial, oscillation)");
}

Integrand parse_integrand(std::string_view spec) {
  const auto t = tokenize(spec);
  if (t.name == "abs_xi") return integrands::abs_xi();
  if (t.name == "abs_xi_pow") return integrands::abs_xi_pow(t.number("k", 2.0));
  if (t.name == "sqrt_abs_xi") return integrands::sqrt_abs_xi();
  if (t.name == "constant")
    return integrands::constant(t.number("value", t.positional.empty() ? 1.0 : to_number(t.positional.front())));
  if (t.name == "affine_max") {
    if (!t.has("rows")) throw Error("affine_max needs rows=a,b/c,d");
    std::vector<std::vector<double>> rows;
    for (const auto& row : split(t.keys.at("rows"), '/')) rows.push_back(parse_number_list(row));
    std::vector<double> offsets = t.has("offsets") ? t.numbers("offsets") : std::vector<double>(rows.size(), 0.0);
    return integrands::affine_max(std::move(rows), std::move(offsets));
  }
  throw Error("unknown integrand '" + t.name + "' (abs_xi, abs_xi_pow, sqrt_abs_xi, constant, affine_max)");
}

}  // namespace orlicz::cli
