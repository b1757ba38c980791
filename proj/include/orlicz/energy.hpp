#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "orlicz/grid.hpp"
#include "orlicz/norm.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

/// f(x, u, xi) >= alpha |xi|^gamma
struct Coercivity {
  double alpha;
  double gamma;
};

/// Energy density f(x, u, xi) >= 0 with u in R^d and xi in R^{N d}.
struct Integrand {
  using Evaluator = std::function<double(Point x, std::span<const double> u, std::span<const double> xi)>;

  std::string name;
  Evaluator evaluate;
  std::optional<Coercivity> coercivity;
  bool level_convex_declared = false;

  double operator()(Point x, std::span<const double> u, std::span<const double> xi) const {
    return evaluate(x, u, xi);
  }
};

namespace integrands {
/// |xi|; alpha = gamma = 1.
Integrand abs_xi();
/// |xi|^k; alpha = 1, gamma = k.
Integrand abs_xi_pow(double k);
/// sqrt|xi|; alpha = 1, gamma = 1/2.
Integrand sqrt_abs_xi();
/// f == value; no coercivity.
Integrand constant(double value);
/// max{0, max_j (slopes_j . xi + offsets_j)}; slopes are rows of length N d.
Integrand affine_max(std::vector<std::vector<double>> slopes, std::vector<double> offsets);
}  // namespace integrands

enum class EnergyKind { norm_energy, modular_energy, sup_energy, indicator_energy };

struct EnergyValue {
  double value = 0.0;
  EnergyKind kind = EnergyKind::norm_energy;
};

/// Samples x -> f(x, u(x), Du(x)) on the masked cells.
SampledField composite(const Integrand& f, const FieldExpr& u, const GridDomain& domain);

/// ||f(., u, Du)||_phi
EnergyValue norm_energy(const PhiFunction& phi, const Integrand& f, const FieldExpr& u,
                        const GridDomain& domain, double rel_tol = kDefaultRelTol);
/// rho_phi(f(., u, Du))
EnergyValue modular_energy(const PhiFunction& phi, const Integrand& f, const FieldExpr& u,
                           const GridDomain& domain);
/// ess sup f(., u, Du)
EnergyValue sup_energy(const Integrand& f, const FieldExpr& u, const GridDomain& domain);
/// 0 if f(., u, Du) <= 1 on the grid, +inf otherwise.
EnergyValue indicator_energy(const Integrand& f, const FieldExpr& u, const GridDomain& domain);

// ---------------------------------------------------------------------------
// Sampled structural checks. A pass means no violation was found on the sample.

using Vec = std::vector<double>;

/// 33 evenly spaced theta values in [0, 1].
std::vector<double> default_theta_grid();

struct LevelConvexViolation {
  std::size_t x_index;
  std::size_t u_index;
  std::size_t pair_index;
  double theta;
  double value;  ///< f(theta a + (1 - theta) b)
  double bound;  ///< max{f(a), f(b)}
};

struct LevelConvexReport {
  std::size_t checked = 0;
  std::vector<LevelConvexViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// f(theta a + (1-theta) b) <= max{f(a), f(b)} on every sampled segment.
LevelConvexReport check_level_convex(const Integrand& f, const std::vector<Vec>& x_samples,
                                     const std::vector<Vec>& u_samples,
                                     const std::vector<std::pair<Vec, Vec>>& xi_pairs,
                                     std::span<const double> theta_grid);

struct CoercivitySample {
  Vec x;
  Vec u;
  Vec xi;
};

struct CoercivityReport {
  std::vector<std::size_t> violations;  ///< indices into the sample list
  bool pass() const { return violations.empty(); }
};

CoercivityReport check_coercivity(const Integrand& f, double alpha, double gamma,
                                  const std::vector<CoercivitySample>& samples);

struct JensenReport {
  double at_barycenter = 0.0;
  double max_over_atoms = 0.0;
  double margin = 0.0;  ///< max_over_atoms - at_barycenter
  bool pass() const { return at_barycenter <= max_over_atoms + 1e-12 * std::abs(max_over_atoms); }
};

/// g(sum_i w_i xi_i) <= max_i g(xi_i) for level-convex g.
JensenReport discrete_jensen_check(const std::function<double(std::span<const double>)>& g,
                                   const DiscreteMeasure& mu);

/// Random level-convex function on R^k: an increasing map applied to the
/// maximum of up to 8 random affine functions.
struct LevelConvexSample {
  std::function<double(std::span<const double>)> fn;
  std::string description;
};
LevelConvexSample random_level_convex(std::mt19937_64& rng, std::size_t dimension);

struct YoungProbeRow {
  double p;
  double value;
};

struct YoungProbe {
  std::vector<YoungProbeRow> rows;
  /// max over cells and atoms of f(x, u(x), xi_i(x)): the p -> inf limit.
  double double_max = 0.0;
};

/// (integral sum_i w_i(x) f(x, u(x), xi_i(x))^p dx)^{1/p} for each p, with
/// one discrete measure per masked cell (atoms in R^{N d}).
YoungProbe young_limit_probe(const Integrand& f, const FieldExpr& u,
                             const std::vector<DiscreteMeasure>& measures, const GridDomain& domain,
                             std::span<const double> p_list);

/// Dirac measures at the sampled gradient Du(x).
std::vector<DiscreteMeasure> dirac_measures(const FieldExpr& u, const GridDomain& domain);

}  // namespace orlicz
