#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

inline constexpr double kDefaultRelTol = 1e-8;

/// Result of the Luxemburg bisection.
///
/// `value` is the midpoint of the final bracket [lo, hi], where
/// rho(f/hi) <= 1 < rho(f/lo). The midpoint convention is used because the
/// modular need not be lower semicontinuous in lambda, so rho(f/value) <= 1
/// is never asserted.
struct NormResult {
  double value = 0.0;
  int iterations = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool tolerance_met = false;
};

/// integral of phi(x, |f(x)|); vector fields enter through their magnitude.
double modular(const PhiFunction& phi, const SampledField& field, const GridDomain& domain);

/// log of the modular, accumulated with log-sum-exp (no overflow for high powers).
double log_modular(const PhiFunction& phi, const SampledField& field, const GridDomain& domain);

/// inf{lambda > 0 : rho(f/lambda) <= 1} by bracketing and bisection.
/// rel_tol must lie in (0, 1e-2].
NormResult luxemburg_norm(const PhiFunction& phi, const SampledField& field, const GridDomain& domain,
                          double rel_tol = kDefaultRelTol);

/// (integral |f|^p)^{1/p}, or the grid maximum for p = +inf.
double lp_norm(const SampledField& field, double p, const GridDomain& domain);

/// rho(u) + sum_i rho(d u / d x_i).
double sobolev_modular(const PhiFunction& phi, const FieldExpr& u, const GridDomain& domain);
NormResult sobolev_norm(const PhiFunction& phi, const FieldExpr& u, const GridDomain& domain,
                        double rel_tol = kDefaultRelTol);

struct UnitBallReport {
  double norm = 0.0;
  double modular = 0.0;
  bool first_implication = true;   ///< norm < 1 - tol  =>  modular <= 1 + tol
  bool second_implication = true;  ///< modular <= 1     =>  norm <= 1 + tol
  bool pass() const { return first_implication && second_implication; }
};

UnitBallReport unit_ball_check(const PhiFunction& phi, const SampledField& field,
                               const GridDomain& domain, double rel_tol = 1e-6);

/// (2 L (|Omega| + c))^{1/p}
double embedding_constant(double L, double c, double omega_measure, double p);

struct EmbeddingCase {
  double lp = 0.0;
  double phi_norm = 0.0;
  double bound = 0.0;  ///< embedding_constant * phi_norm
  bool holds = true;
};

struct EmbeddingReport {
  bool hypotheses_hold = true;
  std::string hypothesis_failure;
  double constant = 0.0;
  std::vector<EmbeddingCase> cases;
  /// False on a hypothesis failure; the inequality is not evaluated then.
  bool pass() const;
};

/// Checks ||f||_{L^p} <= C ||f||_phi for each field after verifying the
/// hypotheses 1/c <= phi(x,1) <= c and aInc(p) with constant L on the sample.
EmbeddingReport embedding_check(const PhiFunction& phi, double p, double L, double c,
                                const std::vector<SampledField>& fields, const GridDomain& domain,
                                double rel_tol = 1e-6);

struct ModularBound {
  double bound = 0.0;  ///< max{(L rho(f))^{1/p}, 1}
  double norm = 0.0;
  bool holds = true;   ///< norm <= bound (1 + tol)
};

ModularBound norm_from_modular_bound(const PhiFunction& phi, const SampledField& field, double p,
                                     double L, const GridDomain& domain, double rel_tol = 1e-6);

/// One CSV row per (field, phi) pair:
/// `field,phi,modular,norm,iterations,tolerance_met`.
struct NormRecord {
  std::string field_id;
  std::string phi_id;
  double modular = 0.0;
  NormResult norm;
};
std::string format_norm_records(const std::vector<NormRecord>& records);

namespace detail {
/// Bisection on a nonincreasing lambda -> log rho(f/lambda). `scale` seeds
/// the bracket [scale/4, 4 scale].
NormResult bisect_norm(const std::function<double(double)>& log_modular_at, double scale,
                       double rel_tol);
}  // namespace detail

}  // namespace orlicz
