#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <random>

#include "orlicz/csv.hpp"
#include "orlicz/fields.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/norm.hpp"
#include "specs.hpp"

namespace orlicz::cli {

namespace {

// Prints a value to the precision the computation supports, keeping a
// decimal point so that 1 prints as 1.0.
std::string format_result(double v, double rel_tol) {
  if (is_inf(v)) return "inf";
  const int digits = std::clamp(static_cast<int>(std::floor(-std::log10(rel_tol))), 1, 17);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  std::string s = buf;
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string or_default(const std::string& value, const char* fallback) {
  return value.empty() ? fallback : value;
}

std::vector<SampledField> random_fields(const GridDomain& domain, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.0, 2.0);
  std::uniform_int_distribution<int> pieces(1, 12);
  std::vector<SampledField> out;
  for (std::size_t k = 0; k < count; ++k) {
    const int m = pieces(rng);
    std::vector<double> levels(static_cast<std::size_t>(m));
    for (double& l : levels) l = value(rng);
    const auto& box = domain.box().front();
    std::vector<double> v(domain.cell_count());
    for (std::size_t c = 0; c < v.size(); ++c) {
      const double s = (domain.center(c)[0] - box.lo) / (box.hi - box.lo);
      v[c] = levels[std::min(static_cast<std::size_t>(s * m), levels.size() - 1)];
    }
    out.push_back(SampledField::scalar(std::move(v)));
  }
  return out;
}

void print_result(const ExperimentResult& r, std::ostream& out) {
  out << r.id << ": " << to_string(r.status) << " (hypotheses " << (r.hypotheses_hold ? "hold" : "fail")
      << ")\n";
  for (const auto& note : r.notes) out << "  " << note << '\n';
}

int exit_code(const ExperimentResult& r) {
  return r.status == RunStatus::failed ? kAssertionFailed : kOk;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"norm-convergence", "scaled-base",     "nonuniform-ainc",
                                            "gamma-norm",       "gamma-modular",   "embedding-sharpness"};
  return ids;
}

ExperimentResult run_experiment(const ExperimentRequest& q) {
  ExperimentOptions opts;
  if (!(q.tolerance > 0.0 && q.tolerance <= 0.1)) throw Error("tolerance must lie in (0, 0.1]");
  if (!(q.rel_tol > 0.0 && q.rel_tol <= 0.1)) throw Error("rel-tol must lie in (0, 0.1]");
  opts.tolerance = q.tolerance;
  opts.rel_tol = q.rel_tol;
  const auto n_list = parse_n_list(or_default(q.n_list, "1..128"));

  if (q.id == "norm-convergence") {
    const auto domain = parse_domain(or_default(q.domain, "box:0,1:res=10000"));
    return norm_convergence_experiment(sequences::by_name(or_default(q.phi_family, "power"), q.param),
                                       parse_field(or_default(q.field, "linear")), domain, n_list, opts);
  }
  if (q.id == "scaled-base") {
    const auto domain = parse_domain(or_default(q.domain, "box:0,1:res=1000"));
    return counterexample_scaled_base(q.param, parse_field(or_default(q.field, "const:1")), domain, n_list, opts);
  }
  if (q.id == "nonuniform-ainc") {
    const auto domain = parse_domain(or_default(q.domain, "box:0,4:res=4000"));
    return counterexample_nonuniform_ainc(parse_number_list(or_default(q.p_list, "1,2,5,10,20")),
                                          parse_field(or_default(q.field, "clamp:1")), domain, opts);
  }
  if (q.id == "gamma-norm") {
    const auto domain = parse_domain(or_default(q.domain, "box:0,1:res=10000"));
    const auto u = parse_field(or_default(q.field, "linear"));
    auto u_sequence = [u](long n) { return fields::oscillation(u, static_cast<double>(n)); };
    return gamma_norm_experiment(sequences::by_name(or_default(q.phi_family, "power"), q.param),
                                 parse_integrand(or_default(q.integrand, "abs_xi")), u, u_sequence, domain,
                                 n_list, opts);
  }
  if (q.id == "gamma-modular") {
    const auto domain = parse_domain(or_default(q.domain, "box:0,1,0,1:res=100"));
    return gamma_modular_experiment(sequences::by_name(or_default(q.phi_family, "scaled_power"), q.param),
                                    parse_integrand(or_default(q.integrand, "abs_xi")),
                                    parse_field(or_default(q.field, "linear")), domain, n_list, opts);
  }
  if (q.id == "embedding-sharpness") {
    const auto domain = parse_domain(or_default(q.domain, "box:0,1:res=2000"));
    auto fields = random_fields(domain, q.seed, 6);
    fields.push_back(sample(parse_field(or_default(q.field, "linear")), domain));
    return embedding_sharpness_experiment(sequences::by_name(or_default(q.phi_family, "power"), q.param), q.gamma,
                                          fields, domain, parse_n_list(or_default(q.n_list, "8..1024")), opts);
  }
  throw Error("unknown experiment '" + q.id + "'");
}

bool apply_thread_env() {
  const char* env = std::getenv(kThreadsEnv);
  if (!env || !*env) return true;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) return false;
  kernels::set_thread_limit(static_cast<int>(v));
  return true;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"modulars, Luxemburg norms and growth-rate experiments in generalized Orlicz spaces", "orlicz-lab"};
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);
  int threads = -1;
  app.add_option("--threads", threads, "Cap on parallel threads (overrides " + std::string(kThreadsEnv) + ")");

  std::string phi_spec = "power:p=2", field_spec = "linear", domain_spec = "box:0,1:res=1000", out_path;
  double rel_tol = kDefaultRelTol;
  auto add_common = [&](CLI::App* sub, bool with_field) {
    sub->add_option("--phi", phi_spec, "Phi function spec, e.g. power:p=2")->capture_default_str();
    if (with_field) sub->add_option("--field", field_spec, "Field spec, e.g. const:1")->capture_default_str();
    sub->add_option("--domain", domain_spec, "Domain spec, e.g. box:0,1:res=1000")->capture_default_str();
  };

  auto* norm = app.add_subcommand("norm", "Luxemburg quasinorm of a field by monotone bisection");
  add_common(norm, true);
  norm->add_option("--rel-tol", rel_tol, "Relative bisection tolerance in (0, 1e-2]")->capture_default_str();
  norm->add_option("--out", out_path, "Also write a CSV record: field,phi,modular,norm,iterations,tolerance_met");
  norm->footer("Reference: Luxemburg quasinorm inf{lambda > 0 : rho(f/lambda) <= 1}");

  auto* mod = app.add_subcommand("modular", "Modular rho(f) = integral of phi(x, |f(x)|)");
  add_common(mod, true);
  mod->footer("Reference: the modular of a generalized Orlicz space");

  std::string lp_text = "2";
  auto* lp = app.add_subcommand("lp-norm", "Lebesgue norm (integral |f|^p)^(1/p); p may be inf");
  lp->add_option("--field", field_spec)->capture_default_str();
  lp->add_option("--domain", domain_spec)->capture_default_str();
  lp->add_option("--p", lp_text, "Exponent in [1, inf]")->capture_default_str();
  lp->footer("Reference: L^p norms used by the asymptotically sharp embedding");

  auto* sob = app.add_subcommand("sobolev", "Orlicz-Sobolev modular and quasinorm of a field");
  add_common(sob, true);
  sob->footer("Reference: Orlicz-Sobolev modular rho(u) + sum_i rho(d_i u)");

  double ainc_p = 2.0;
  auto* ainc = app.add_subcommand("ainc", "Brute-force estimate of the aInc(p) constant on the default grids");
  add_common(ainc, false);
  ainc->add_option("--p", ainc_p, "Exponent p")->capture_default_str();
  ainc->footer("Reference: almost increasing condition phi(x, lambda t) <= L lambda^p phi(x, t)");

  auto* axioms = app.add_subcommand("axioms", "Sampled check of the weak Phi-function axioms");
  add_common(axioms, false);
  axioms->footer("Reference: definition of generalized weak Phi-functions");

  ExperimentRequest request;
  std::string out_dir = "out";
  auto* exp = app.add_subcommand("experiment", "Run one experiment and write its CSV tables");
  exp->add_option("id", request.id, "Experiment id")->required()->check(CLI::IsMember(experiment_ids()));
  exp->add_option("--phi-family", request.phi_family,
                  "power, scaled_power, scaled_base, variable_linear, variable_inverse_radius, double_phase");
  exp->add_option("--param", request.param, "Family parameter (a for scaled_base/double_phase)")->capture_default_str();
  exp->add_option("--field", request.field, "Field spec");
  exp->add_option("--integrand", request.integrand, "Integrand spec");
  exp->add_option("--domain", request.domain, "Domain spec");
  exp->add_option("--n", request.n_list, "Index list: a..b (doubling) or comma list; q list for embedding-sharpness");
  exp->add_option("--p-list", request.p_list, "Exponents for nonuniform-ainc");
  exp->add_option("--gamma", request.gamma, "Coercivity exponent for embedding-sharpness")->capture_default_str();
  exp->add_option("--tol", request.tolerance, "Acceptance tolerance in (0, 0.1]")->capture_default_str();
  exp->add_option("--rel-tol", request.rel_tol, "Bisection tolerance")->capture_default_str();
  exp->add_option("--seed", request.seed, "Seed for randomized fields")->capture_default_str();
  exp->add_option("--out", out_dir, "Output directory")->capture_default_str();
  exp->footer(
      "Reference ids:\n"
      "  norm-convergence     norms under phi_n converge to the sup norm\n"
      "  scaled-base          (A0) alone is not enough: (a_n t)^n converges to a times the sup norm\n"
      "  nonuniform-ainc      a uniform aInc constant is needed: max{0,2t-1} + phi_infinity\n"
      "  gamma-norm           limsup/liminf inequalities for norm energies\n"
      "  gamma-modular        limsup/liminf inequalities for modular energies and the t^n counterexample\n"
      "  embedding-sharpness  L^{q/gamma} embedding constant C_q decreasing to 1");

  auto* suite = app.add_subcommand("suite", "Run every experiment with defaults and write index.csv");
  suite->add_option("--out", out_dir, "Output directory")->capture_default_str();
  suite->add_option("--seed", request.seed, "Seed for randomized fields")->capture_default_str();
  suite->footer("Reference: all experiment ids listed under `experiment --help`");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  if (!apply_thread_env()) {
    err << "error: " << kThreadsEnv << " must be a nonnegative integer\n";
    return kConfigError;
  }
  if (threads >= 0) kernels::set_thread_limit(threads);

  try {
    if (norm->parsed()) {
      if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw Error("rel-tol must lie in (0, 1e-2]");
      const auto domain = parse_domain(domain_spec);
      const auto phi = parse_phi(phi_spec);
      const auto field = sample(parse_field(field_spec), domain);
      const auto r = luxemburg_norm(phi, field, domain, rel_tol);
      out << format_result(r.value, rel_tol) << '\n';
      if (!out_path.empty())
        csv::write_file(out_path, format_norm_records({{field_spec, phi.name(), modular(phi, field, domain), r}}));
      return r.tolerance_met || r.value == 0.0 ? kOk : kAssertionFailed;
    }
    if (mod->parsed()) {
      const auto domain = parse_domain(domain_spec);
      out << csv::format_number(modular(parse_phi(phi_spec), sample(parse_field(field_spec), domain), domain)) << '\n';
      return kOk;
    }
    if (lp->parsed()) {
      const auto domain = parse_domain(domain_spec);
      const double p = csv::parse_number(lp_text);
      out << csv::format_number(lp_norm(sample(parse_field(field_spec), domain), p, domain)) << '\n';
      return kOk;
    }
    if (sob->parsed()) {
      const auto domain = parse_domain(domain_spec);
      const auto phi = parse_phi(phi_spec);
      const auto u = parse_field(field_spec);
      out << "modular " << csv::format_number(sobolev_modular(phi, u, domain)) << '\n';
      out << "norm " << format_result(sobolev_norm(phi, u, domain).value, kDefaultRelTol) << '\n';
      return kOk;
    }
    if (ainc->parsed()) {
      const auto domain = parse_domain(domain_spec);
      const auto phi = parse_phi(phi_spec);
      const auto g = estimate_ainc_constant(phi, ainc_p, domain, default_t_grid(), default_lambda_grid());
      out << "estimated_L " << csv::format_number(g.estimated_L) << '\n';
      out << "samples " << g.x_samples << 'x' << g.t_samples << 'x' << g.lambda_samples << '\n';
      if (g.checked_L) out << "violations of L=" << csv::format_number(*g.checked_L) << ": " << g.violations.size() << '\n';
      return g.violations.empty() ? kOk : kAssertionFailed;
    }
    if (axioms->parsed()) {
      const auto domain = parse_domain(domain_spec);
      const auto report = check_weak_phi_axioms(parse_phi(phi_spec), domain, default_t_grid());
      out << "zero_at_origin " << report.zero_at_origin << "\nsmall_t_limit " << report.small_t_limit
          << "\ndivergence " << report.divergence << "\nmonotone " << report.monotone << "\nainc1 "
          << report.ainc1 << '\n';
      return report.all_pass() ? kOk : kAssertionFailed;
    }
    if (exp->parsed()) {
      const auto result = run_experiment(request);
      for (const auto& path : emit_experiment(result, out_dir)) out << "wrote " << path << '\n';
      print_result(result, out);
      return exit_code(result);
    }
    if (suite->parsed()) {
      std::vector<ExperimentResult> results;
      int code = kOk;
      for (const auto& id : experiment_ids()) {
        ExperimentRequest q;
        q.id = id;
        q.seed = request.seed;
        results.push_back(run_experiment(q));
        emit_experiment(results.back(), out_dir);
        print_result(results.back(), out);
        if (exit_code(results.back()) != kOk) code = kAssertionFailed;
      }
      const auto index = (std::filesystem::path(out_dir) / "index.csv").string();
      csv::write_file(index, format_index(results));
      out << "wrote " << index << '\n';
      return code;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace orlicz::cli
