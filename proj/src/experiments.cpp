#include "orlicz/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "orlicz/csv.hpp"
#include "orlicz/norm.hpp"

namespace orlicz {

void ConvergenceTable::add(long n, double p_n, double quantity, double reference) {
  double err;
  if (quantity == reference)
    err = 0.0;
  else if (is_inf(quantity) || is_inf(reference))
    err = kInf;
  else
    err = std::abs(quantity - reference);
  rows_.push_back({n, p_n, quantity, reference, err});
}

void ConvergenceTable::set_meta(std::string key, std::string value) {
  for (auto& [k, v] : meta_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  meta_.emplace_back(std::move(key), std::move(value));
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::passed: return "passed";
    case RunStatus::failed: return "failed";
    case RunStatus::informational: return "informational";
  }
  return "unknown";
}

const ConvergenceTable& ExperimentResult::table(std::string_view table_id) const {
  for (const auto& t : tables)
    if (t.id() == table_id) return t;
  throw Error("experiment " + id + " has no table '" + std::string(table_id) + "'");
}

namespace sequences {

PhiSequence power() {
  return {"power", [](long n) { return phi::power(static_cast<double>(n)); }, 1.0, 1.0};
}

PhiSequence scaled_power() {
  return {"scaled_power",
          [](long n) {
            const double p = static_cast<double>(n);
            return phi::scaled_power(p, 1.0 / p);
          },
          std::nullopt, 1.0};
}

PhiSequence scaled_base(double a) {
  return {"scaled_base",
          [a](long n) { return phi::scaled_base(a, static_cast<double>(n)); },
          a == 1.0 ? std::optional<double>(1.0) : std::nullopt, 1.0};
}

PhiSequence variable_linear() {
  return {"variable_linear",
          [](long n) {
            const double p = static_cast<double>(n);
            return phi::variable_exponent([p](Point x) { return p + x[0]; }, p,
                                          "t^(" + std::to_string(n) + "+x0)");
          },
          1.0, 1.0};
}

PhiSequence variable_inverse_radius() {
  return {"variable_inverse_radius",
          [](long n) {
            const double p = static_cast<double>(n);
            return phi::variable_exponent(
                [p](Point x) {
                  double s = 0.0;
                  for (double v : x) s += v * v;
                  return p + 1.0 / std::sqrt(s);
                },
                p, "t^(" + std::to_string(n) + "+1/|x|)");
          },
          1.0, 1.0};
}

PhiSequence double_phase(double a) {
  if (!(a >= 0.0)) throw Error("double_phase sequence: a must be >= 0");
  return {"double_phase",
          [a](long n) {
            const double p = static_cast<double>(n);
            return phi::double_phase(p, 2.0 * p, [a](Point x) { return a * std::clamp(x[0], 0.0, 1.0); });
          },
          1.0 + a, 1.0};
}

PhiSequence by_name(std::string_view name, double param) {
  if (name == "power") return power();
  if (name == "scaled_power") return scaled_power();
  if (name == "scaled_base") return scaled_base(param);
  if (name == "variable_linear") return variable_linear();
  if (name == "variable_inverse_radius") return variable_inverse_radius();
  if (name == "double_phase") return double_phase(param);
  throw Error("unknown phi family sequence '" + std::string(name) + "'");
}

}  // namespace sequences

std::vector<long> default_n_list() { return {1, 2, 4, 8, 16, 32, 64, 128}; }

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void prepare_list(std::vector<long>& list, const char* what) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  if (list.empty()) throw Error(std::string(what) + ": empty index list");
  if (list.front() < 1) throw Error(std::string(what) + ": indices must be >= 1");
}

std::string domain_description(const GridDomain& domain) {
  std::string s;
  for (std::size_t a = 0; a < domain.dimension(); ++a) {
    if (a) s += 'x';
    s += std::to_string(domain.resolution()[a]);
  }
  return s + " cells (" + std::to_string(domain.cell_count()) + " masked)";
}

void stamp(ConvergenceTable& t, const std::string& experiment, const GridDomain& domain,
           const ExperimentOptions& o) {
  t.set_meta("experiment", experiment);
  t.set_meta("grid", domain_description(domain));
  t.set_meta("tolerance", num(o.tolerance));
  t.set_meta("rel_tol", num(o.rel_tol));
}

double sup_abs(const FieldExpr& u, const GridDomain& domain) {
  return ess_sup(sample(u, domain).magnitude(), domain);
}

// Hypotheses shared by the norm-type results: 1/c <= phi_n(x,1) <= c and
// aInc(p_n) with the family's L, both on the sample.
std::optional<std::string> norm_hypothesis_failure(const PhiSequence& family, const PhiFunction& phi,
                                                   long n, const GridDomain& domain,
                                                   const ExperimentOptions& o, bool need_anchor) {
  const std::string at = " (n=" + std::to_string(n) + ")";
  if (!phi.declared_p()) return "no declared aInc exponent" + at;
  if (need_anchor) {
    if (!family.c) return "no uniform constant c with 1/c <= phi_n(x,1) <= c" + at;
    const auto anchors = anchor_bounds(phi, domain);
    const double c = *family.c;
    if (!(anchors.minus >= (1.0 / c) * (1.0 - 1e-12) && anchors.plus <= c * (1.0 + 1e-12)))
      return "phi_n(x,1) leaves [1/c, c]" + at;
  }
  AincOptions opts;
  opts.declared_L = family.L;
  opts.max_x_samples = o.ainc_x_samples;
  try {
    const auto g = estimate_ainc_constant(phi, *phi.declared_p(), domain, default_t_grid(),
                                          default_lambda_grid(), opts);
    if (!g.violations.empty()) return "aInc(p_n) with constant L fails on the sample" + at;
  } catch (const Error& e) {
    return std::string(e.what()) + at;
  }
  return std::nullopt;
}

// Level convexity of xi -> f(x,u,xi) and coercivity, on a fixed sample.
std::optional<std::string> integrand_hypothesis_failure(const Integrand& f, const GridDomain& domain,
                                                        std::size_t components) {
  if (!f.coercivity) return "integrand declares no coercivity bound alpha |xi|^gamma";
  const std::size_t width = domain.dimension() * components;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal(0.0, 3.0);
  auto draw = [&] {
    Vec v(width);
    for (double& a : v) a = normal(rng);
    return v;
  };
  std::vector<Vec> xs;
  for (std::size_t c : {std::size_t{0}, domain.cell_count() / 2, domain.cell_count() - 1}) {
    const Point p = domain.center(c);
    xs.emplace_back(p.begin(), p.end());
  }
  const std::vector<Vec> us{Vec(components, 0.0), Vec(components, 1.0)};
  std::vector<std::pair<Vec, Vec>> pairs;
  std::vector<CoercivitySample> samples;
  for (int k = 0; k < 32; ++k) {
    pairs.emplace_back(draw(), draw());
    samples.push_back({xs[static_cast<std::size_t>(k) % xs.size()], us[static_cast<std::size_t>(k) % 2], pairs.back().first});
  }
  if (!check_level_convex(f, xs, us, pairs, default_theta_grid()).pass())
    return "integrand is not level convex on the sample";
  if (!check_coercivity(f, f.coercivity->alpha, f.coercivity->gamma, samples).pass())
    return "integrand violates its declared coercivity bound";
  return std::nullopt;
}

}  // namespace

ExperimentResult norm_convergence_experiment(const PhiSequence& family, const FieldExpr& u,
                                             const GridDomain& domain, std::vector<long> n_list,
                                             const ExperimentOptions& o) {
  prepare_list(n_list, "norm_convergence_experiment");
  ExperimentResult r;
  r.id = "norm-convergence";
  r.config = {{"phi_family", family.name}, {"grid", domain_description(domain)}};
  const double sup = sup_abs(u, domain);
  const auto field = sample(u, domain);
  ConvergenceTable table("norm-convergence");
  stamp(table, r.id, domain, o);
  for (long n : n_list) {
    const PhiFunction phi = family.make(n);
    if (auto fail = norm_hypothesis_failure(family, phi, n, domain, o, true)) {
      r.hypotheses_hold = false;
      r.notes.push_back(*fail);
    }
    const double norm = luxemburg_norm(phi, field, domain, o.rel_tol).value;
    table.add(n, phi.declared_p().value_or(static_cast<double>(n)), norm, sup);
  }
  const double final_err = table.rows().back().abs_error;
  r.notes.push_back("final |norm - sup|u|| = " + num(final_err));
  if (!r.hypotheses_hold)
    r.status = RunStatus::informational;
  else
    r.status = final_err < o.tolerance ? RunStatus::passed : RunStatus::failed;
  r.tables.push_back(std::move(table));
  return r;
}

ExperimentResult counterexample_scaled_base(double a, const FieldExpr& u, const GridDomain& domain,
                                            std::vector<long> n_list, const ExperimentOptions& o) {
  prepare_list(n_list, "counterexample_scaled_base");
  if (!(a > 0.0)) throw Error("counterexample_scaled_base: a must be positive");
  ExperimentResult r;
  r.id = "scaled-base";
  r.config = {{"a", num(a)}, {"grid", domain_description(domain)}};
  const double beta = std::min(a, 1.0 / a);
  const double sup = sup_abs(u, domain);
  const auto field = sample(u, domain);
  ConvergenceTable table("scaled-base");
  stamp(table, r.id, domain, o);
  table.set_meta("reference", "a * sup|u|");
  bool anchored = true, a0 = true;
  for (long n : n_list) {
    const PhiFunction phi = phi::scaled_base(a, static_cast<double>(n));
    if (!check_a0(phi, beta, domain)) {
      a0 = false;
      r.notes.push_back("(A0) fails with beta = min(a, 1/a) at n=" + std::to_string(n));
    }
    const auto anchors = anchor_bounds(phi, domain);
    if (anchors.plus != 1.0 || anchors.minus != 1.0) anchored = false;
    table.add(n, static_cast<double>(n), luxemburg_norm(phi, field, domain, o.rel_tol).value, a * sup);
  }
  // Only (A0) is assumed here. Without a uniform c the sup-norm limit is not
  // asserted; what is asserted is the limit a * sup|u| itself.
  if (!anchored) {
    r.hypotheses_hold = false;
    r.notes.push_back("phi_n(1) = a^n is unbounded or vanishing: no uniform c, only (A0) holds");
  }
  const double final_err = table.rows().back().abs_error;
  r.notes.push_back("limit a*sup|u| = " + num(a * sup) + " vs sup|u| = " + num(sup));
  if (!a0)
    r.status = RunStatus::informational;
  else if (final_err >= o.tolerance)
    r.status = RunStatus::failed;
  else
    r.status = anchored ? RunStatus::passed : RunStatus::informational;
  r.tables.push_back(std::move(table));
  return r;
}

std::vector<double> nonuniform_t_grid() { return lin_spaced(0.5, 1.0, 201); }

std::vector<double> nonuniform_lambda_grid() { return lin_spaced(1e-3, 1.0, 1000); }

ExperimentResult counterexample_nonuniform_ainc(std::vector<double> p_list, const FieldExpr& u,
                                                const GridDomain& domain, const ExperimentOptions& o) {
  std::sort(p_list.begin(), p_list.end());
  p_list.erase(std::unique(p_list.begin(), p_list.end()), p_list.end());
  if (p_list.empty() || !(p_list.front() >= 1.0))
    throw Error("counterexample_nonuniform_ainc: need p values >= 1");
  ExperimentResult r;
  r.id = "nonuniform-ainc";
  r.config = {{"grid", domain_description(domain)}};
  const PhiFunction phi = phi::linear_plus_infinity();
  const auto field = sample(u, domain);
  const double sup = sup_abs(u, domain);
  const auto anchors = anchor_bounds(phi, domain);

  ConvergenceTable norms("nonuniform-ainc.norm");
  ConvergenceTable constants("nonuniform-ainc.constant");
  stamp(norms, r.id, domain, o);
  stamp(constants, r.id, domain, o);
  norms.set_meta("reference", "sup|u|");
  constants.set_meta("reference", "2^(p-1)");
  AincOptions opts;
  opts.max_x_samples = 1;  // phi does not depend on x
  bool within_bound = true;
  long index = 0;
  for (double p : p_list) {
    ++index;
    // Same phi at every index: the norm column is one bisection repeated.
    norms.add(index, p, luxemburg_norm(phi, field, domain, o.rel_tol).value, sup);
    const double bound = std::pow(2.0, p - 1.0);
    const auto g = estimate_ainc_constant(phi, p, domain, nonuniform_t_grid(), nonuniform_lambda_grid(), opts);
    constants.add(index, p, g.estimated_L, bound);
    if (g.estimated_L > bound * (1.0 + 1e-12)) within_bound = false;
  }
  const auto& nr = norms.rows();
  const bool constant_norm = std::all_of(nr.begin(), nr.end(), [&](const TableRow& row) {
    return row.quantity == nr.front().quantity;
  });
  const auto& cr = constants.rows();
  const bool growing = cr.size() < 2 || cr.back().quantity > cr.front().quantity;
  if (anchors.minus != 1.0 || anchors.plus != 1.0) {
    r.hypotheses_hold = false;
    r.notes.push_back("phi(1) != 1");
  }
  if (growing) {
    r.hypotheses_hold = false;
    r.notes.push_back("no aInc constant uniform in n: the sup-norm limit is not asserted");
  }
  r.notes.push_back(constant_norm ? "norm column constant in n" : "norm column varies with n");
  r.notes.push_back(within_bound ? "estimated L_n <= 2^(p_n-1) everywhere" : "estimated L_n exceeds 2^(p_n-1)");
  r.notes.push_back(growing ? "estimated L_n grows with p_n" : "estimated L_n does not grow");
  r.notes.push_back("norm " + num(nr.front().quantity) + " vs sup|u| " + num(sup));
  if (!constant_norm || !within_bound)
    r.status = RunStatus::failed;
  else
    r.status = r.hypotheses_hold ? RunStatus::passed : RunStatus::informational;
  r.tables.push_back(std::move(norms));
  r.tables.push_back(std::move(constants));
  return r;
}

ExperimentResult gamma_norm_experiment(const PhiSequence& family, const Integrand& f, const FieldExpr& u,
                                       const std::function<FieldExpr(long)>& u_sequence,
                                       const GridDomain& domain, std::vector<long> n_list,
                                       const ExperimentOptions& o) {
  prepare_list(n_list, "gamma_norm_experiment");
  ExperimentResult r;
  r.id = "gamma-norm";
  r.config = {{"phi_family", family.name}, {"integrand", f.name}, {"grid", domain_description(domain)}};
  if (auto fail = integrand_hypothesis_failure(f, domain, u.components)) {
    r.hypotheses_hold = false;
    r.notes.push_back(*fail);
  }
  const double f_inf = sup_energy(f, u, domain).value;
  ConvergenceTable limsup("gamma-norm.limsup");
  ConvergenceTable liminf("gamma-norm.liminf");
  stamp(limsup, r.id, domain, o);
  stamp(liminf, r.id, domain, o);
  limsup.set_meta("quantity", "F_n(u)");
  liminf.set_meta("quantity", "F_n(u_n)");
  for (long n : n_list) {
    const PhiFunction phi = family.make(n);
    if (auto fail = norm_hypothesis_failure(family, phi, n, domain, o, true)) {
      r.hypotheses_hold = false;
      r.notes.push_back(*fail);
    }
    const double p_n = phi.declared_p().value_or(static_cast<double>(n));
    limsup.add(n, p_n, norm_energy(phi, f, u, domain, o.rel_tol).value, f_inf);
    liminf.add(n, p_n, norm_energy(phi, f, u_sequence(n), domain, o.rel_tol).value, f_inf);
  }
  const bool limsup_ok = is_inf(f_inf) || limsup.rows().back().abs_error <= o.tolerance * std::max(1.0, f_inf);
  const auto& lr = liminf.rows();
  double tail_min = kInf;
  for (std::size_t i = lr.size() >= 3 ? lr.size() - 3 : 0; i < lr.size(); ++i)
    tail_min = std::min(tail_min, lr[i].quantity);
  const bool liminf_ok = tail_min >= f_inf - 0.05 * f_inf;
  r.notes.push_back("F_inf(u) = " + num(f_inf) + ", last F_n(u) = " + num(limsup.rows().back().quantity) +
                    ", min of last three F_n(u_n) = " + num(tail_min));
  if (!r.hypotheses_hold)
    r.status = RunStatus::informational;
  else
    r.status = limsup_ok && liminf_ok ? RunStatus::passed : RunStatus::failed;
  r.tables.push_back(std::move(limsup));
  r.tables.push_back(std::move(liminf));
  return r;
}

ExperimentResult gamma_modular_experiment(const PhiSequence& family, const Integrand& f,
                                          const FieldExpr& u, const GridDomain& domain,
                                          std::vector<long> n_list, const ExperimentOptions& o) {
  prepare_list(n_list, "gamma_modular_experiment");
  ExperimentResult r;
  r.id = "gamma-modular";
  r.config = {{"phi_family", family.name}, {"integrand", f.name}, {"grid", domain_description(domain)}};
  if (auto fail = integrand_hypothesis_failure(f, domain, u.components)) {
    r.hypotheses_hold = false;
    r.notes.push_back(*fail);
  }
  const double e_inf = indicator_energy(f, u, domain).value;
  ConvergenceTable energy("gamma-modular.energy");
  ConvergenceTable plus("gamma-modular.phi-plus");
  ConvergenceTable minus("gamma-modular.phi-minus-root");
  for (auto* t : {&energy, &plus, &minus}) stamp(*t, r.id, domain, o);
  energy.set_meta("quantity", "E_n(u)");
  plus.set_meta("quantity", "phi_n^+(1)");
  minus.set_meta("quantity", "phi_n^-(1)^(1/p_n)");
  for (long n : n_list) {
    const PhiFunction phi = family.make(n);
    if (auto fail = norm_hypothesis_failure(family, phi, n, domain, o, false)) {
      r.hypotheses_hold = false;
      r.notes.push_back(*fail);
    }
    const double p_n = phi.declared_p().value_or(static_cast<double>(n));
    const auto anchors = anchor_bounds(phi, domain);
    plus.add(n, p_n, anchors.plus, 0.0);
    minus.add(n, p_n, std::pow(anchors.minus, 1.0 / p_n), 1.0);
    energy.add(n, p_n, modular_energy(phi, f, u, domain).value, e_inf);
  }
  const double last_plus = plus.rows().back().quantity;
  const double last_root = minus.rows().back().quantity;
  if (!(last_plus <= o.tolerance)) {
    r.hypotheses_hold = false;
    r.notes.push_back("phi_n^+(1) does not tend to 0 (last value " + num(last_plus) + ")");
  }
  if (!(last_root >= 1.0 - o.tolerance)) {
    r.hypotheses_hold = false;
    r.notes.push_back("phi_n^-(1)^(1/p_n) stays below 1 (last value " + num(last_root) + ")");
  }
  const double last_energy = energy.rows().back().quantity;
  const bool limsup_ok = is_inf(e_inf) || last_energy <= o.tolerance;
  if (!limsup_ok)
    r.notes.push_back("limsup E_n(u) = " + num(last_energy) + " > E_inf(u) = " + num(e_inf) +
                      ": the limsup inequality is violated");
  if (is_inf(e_inf)) r.notes.push_back("E_inf(u) = inf: the limsup side is vacuous");
  if (!r.hypotheses_hold)
    r.status = RunStatus::informational;
  else
    r.status = limsup_ok ? RunStatus::passed : RunStatus::failed;
  r.tables.push_back(std::move(energy));
  r.tables.push_back(std::move(plus));
  r.tables.push_back(std::move(minus));
  return r;
}

ExperimentResult embedding_sharpness_experiment(const PhiSequence& family, double gamma,
                                                const std::vector<SampledField>& fields,
                                                const GridDomain& domain, std::vector<long> q_list,
                                                const ExperimentOptions& o) {
  prepare_list(q_list, "embedding_sharpness_experiment");
  if (!(gamma > 0.0)) throw Error("embedding_sharpness_experiment: gamma must be positive");
  if (fields.empty()) throw Error("embedding_sharpness_experiment: no fields");
  ExperimentResult r;
  r.id = "embedding-sharpness";
  r.config = {{"phi_family", family.name}, {"gamma", num(gamma)}, {"grid", domain_description(domain)}};
  const double c = family.c.value_or(1.0);
  ConvergenceTable table("embedding-sharpness");
  stamp(table, r.id, domain, o);
  table.set_meta("quantity", "max ratio ||g||_{q/gamma} / ||g||_phi");
  table.set_meta("reference", "C_q");
  bool ratios_ok = true;
  for (long q : q_list) {
    const double p = static_cast<double>(q) / gamma;
    if (!(p >= 1.0)) throw Error("embedding_sharpness_experiment: q/gamma must be >= 1");
    const PhiFunction phi = family.make(q);
    const auto check = family.c ? embedding_check(phi, p, family.L, c, fields, domain, o.rel_tol * 10)
                                : EmbeddingReport{false, "no uniform constant c", 0.0, {}};
    if (!check.hypotheses_hold) {
      r.hypotheses_hold = false;
      r.notes.push_back(check.hypothesis_failure + " (q=" + std::to_string(q) + ")");
    }
    const double cq = embedding_constant(family.L, c, domain.measure(), p);
    double ratio = 0.0;
    for (const auto& g : fields) {
      const double denom = luxemburg_norm(phi, g, domain, o.rel_tol).value;
      if (denom > 0.0) ratio = std::max(ratio, lp_norm(g, p, domain) / denom);
    }
    if (ratio > cq * (1.0 + 1e-6)) ratios_ok = false;
    table.add(q, p, ratio, cq);
  }
  bool decreasing = true;
  const auto& rows = table.rows();
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].reference < rows[i - 1].reference)) decreasing = false;
  r.notes.push_back(decreasing ? "C_q strictly decreasing" : "C_q not strictly decreasing");
  r.notes.push_back("last C_q = " + num(rows.back().reference));
  if (!r.hypotheses_hold)
    r.status = RunStatus::informational;
  else
    r.status = ratios_ok && decreasing ? RunStatus::passed : RunStatus::failed;
  r.tables.push_back(std::move(table));
  return r;
}

}  // namespace orlicz
