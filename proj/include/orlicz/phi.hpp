#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/common.hpp"
#include "orlicz/grid.hpp"

namespace orlicz {

enum class PhiFamily {
  power,
  scaled_power,
  variable_exponent,
  double_phase,
  infinity,
  scaled_infinity,
  linear_plus_infinity,
  scaled_base,
  normalized,
  custom,
};

std::string_view to_string(PhiFamily family);
/// Throws orlicz::Error for unknown names.
PhiFamily parse_family(std::string_view name);

/// phi(x, t) for t >= 0, valued in [0, +inf].
using PhiEvaluator = std::function<double(Point x, double t)>;

/// Generalized weak Φ-function with declared growth metadata.
///
/// Evaluators are pure and immutable, so a PhiFunction may be shared across
/// threads. `log_value` returns log phi(x,t) (-inf at zeros, +inf at +inf) and
/// lets modulars of high powers be accumulated without overflow; families
/// with a closed form provide it directly, others derive it from `value`.
class PhiFunction {
 public:
  struct Growth {
    std::optional<double> p;  ///< aInc exponent
    std::optional<double> L;  ///< aInc constant
    /// phi = 0 on [0, tau] and +inf on (tau, inf): the modular is an indicator.
    std::optional<double> indicator_threshold;
  };

  PhiFunction(PhiFamily family, std::string name, PhiEvaluator value, PhiEvaluator log_value,
              Growth growth);

  double operator()(Point x, double t) const { return value_(x, t); }
  double log_value(Point x, double t) const { return log_value_(x, t); }

  PhiFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  std::optional<double> declared_p() const { return growth_.p; }
  std::optional<double> declared_L() const { return growth_.L; }
  std::optional<double> indicator_threshold() const { return growth_.indicator_threshold; }
  const Growth& growth() const { return growth_; }

 private:
  PhiFamily family_;
  std::string name_;
  PhiEvaluator value_;
  PhiEvaluator log_value_;
  Growth growth_;
};

/// Parameters for make_family. Unused fields are ignored per family.
struct FamilyParams {
  double p = 1.0;      ///< exponent: power, scaled_power, double_phase (lower), scaled_base (n)
  double q = 2.0;      ///< double_phase upper exponent
  double scale = 1.0;  ///< scaled_power multiplier, scaled_base base a, scaled_infinity a
  /// variable_exponent: declared infimum of p(x), used as the aInc exponent.
  std::optional<double> p_lower;
};

/// Spatial coefficients sampled at cell centers: a(x) for double_phase and
/// p(x) for variable_exponent.
struct CoefficientFields {
  ScalarFn weight;
  ScalarFn exponent;
};

namespace phi {
PhiFunction power(double p);
/// scale * t^p
PhiFunction scaled_power(double p, double scale);
/// t^{p(x)}; p_lower (if known) becomes the declared aInc exponent.
PhiFunction variable_exponent(ScalarFn exponent, std::optional<double> p_lower = std::nullopt,
                              std::string label = "variable_exponent");
/// t^p + a(x) t^q
PhiFunction double_phase(double p, double q, ScalarFn weight);
/// +inf * chi_(1,inf)(t)
PhiFunction infinity();
/// +inf * chi_(1/a,inf)(t)
PhiFunction scaled_infinity(double a);
/// max{0, 2t-1} + phi_infinity(t)
PhiFunction linear_plus_infinity();
/// (a t)^n
PhiFunction scaled_base(double a, double n);
PhiFunction custom(PhiEvaluator value, std::string name = "custom");
}  // namespace phi

/// Builds a family by tag. When `validate_on` is given the spatial
/// coefficients are checked at its cell centers (a >= 0, p(x) >= 1).
PhiFunction make_family(PhiFamily family, const FamilyParams& params,
                        const CoefficientFields& coeffs = {},
                        const GridDomain* validate_on = nullptr);

struct AnchorBounds {
  double minus;  ///< min over cells of phi(x, 1)
  double plus;   ///< max over cells of phi(x, 1), possibly +inf
};

AnchorBounds anchor_bounds(const PhiFunction& phi, const GridDomain& domain);

/// (A0): phi(x, beta) <= 1 <= phi(x, 1/beta) at every cell center.
bool check_a0(const PhiFunction& phi, double beta, const GridDomain& domain);

/// phi(x,t) / phi(x,1). Requires phi(x,1) in (0, inf) on the grid.
PhiFunction normalize(const PhiFunction& phi, const GridDomain& domain);

/// phi(x,t) >= t^p/(L c) - 1/c at every sampled (x, t).
bool lower_bound_check(const PhiFunction& phi, double p, double L, double c,
                       const GridDomain& domain, std::span<const double> t_grid);

// ---------------------------------------------------------------------------
// Growth estimation

/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);
/// `count` evenly spaced points from lo to hi inclusive.
std::vector<double> lin_spaced(double lo, double hi, std::size_t count);
/// 64 log-spaced points in [1e-4, 1e4].
std::vector<double> default_t_grid();
/// 64 evenly spaced points in [1e-3, 1].
std::vector<double> default_lambda_grid();

struct AincViolation {
  std::size_t cell;
  double t;
  double lambda;
  double ratio;
};

struct GrowthReport {
  double p = 1.0;
  double estimated_L = 1.0;
  std::size_t x_samples = 0;
  std::size_t t_samples = 0;
  std::size_t lambda_samples = 0;
  std::size_t admissible = 0;
  /// Bound the violations were checked against (if any was declared).
  std::optional<double> checked_L;
  std::vector<AincViolation> violations;
};

struct AincOptions {
  /// Constant to check against; defaults to phi.declared_L() when p does
  /// not exceed phi.declared_p().
  std::optional<double> declared_L;
  /// Cells are strided down to at most this many x samples (0 = all cells).
  std::size_t max_x_samples = 256;
  std::size_t max_violations = 1000;
};

/// sup over sampled (x, t, lambda) of phi(x, lambda t) / (lambda^p phi(x, t)).
///
/// Only samples with phi(x,t) finite and positive count. A +inf numerator
/// over such a denominator forces +inf. Samples with phi(x,t) = 0 or +inf are
/// skipped, except that phi(x,t) = 0 < phi(x, lambda t) also forces +inf.
/// Throws orlicz::Error when no admissible sample exists.
GrowthReport estimate_ainc_constant(const PhiFunction& phi, double p, const GridDomain& domain,
                                    std::span<const double> t_grid,
                                    std::span<const double> lambda_grid,
                                    const AincOptions& options = {});

struct WeakPhiReport {
  bool zero_at_origin = true;
  bool small_t_limit = true;
  bool divergence = true;
  bool monotone = true;
  bool ainc1 = true;
  std::vector<std::string> failures;

  bool all_pass() const {
    return zero_at_origin && small_t_limit && divergence && monotone && ainc1;
  }
};

struct WeakPhiOptions {
  /// phi(x, t_min) must not exceed this.
  double small_t_tolerance = 1e-3;
  /// phi(x, t_max) must reach at least this.
  double divergence_threshold = 1e3;
};

/// Sampled check of the weak Φ-function axioms. The t grid must be increasing,
/// start below 1 and end well above 1.
WeakPhiReport check_weak_phi_axioms(const PhiFunction& phi, const GridDomain& domain,
                                    std::span<const double> t_grid,
                                    const WeakPhiOptions& options = {});

}  // namespace orlicz
