#pragma once

// Desk-scale reproductions of the convergence results for generalized Orlicz
// norms and energies as the lower growth rate p_n tends to infinity.
//
// Every experiment first re-verifies the hypotheses of the result it probes
// on the sample. When they fail the run is downgraded to `informational`:
// its tables are still produced but the conclusion is not asserted. This is
// how the counterexample families are encoded.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/energy.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

struct TableRow {
  long n;
  double p_n;
  double quantity;
  double reference;
  double abs_error;
};

class ConvergenceTable {
 public:
  explicit ConvergenceTable(std::string id) : id_(std::move(id)) {}

  /// Appends a row; abs_error = |quantity - reference| (0 when both are +inf).
  void add(long n, double p_n, double quantity, double reference);
  void set_meta(std::string key, std::string value);

  const std::string& id() const { return id_; }
  const std::vector<TableRow>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }

 private:
  std::string id_;
  std::vector<TableRow> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

enum class RunStatus { passed, failed, informational };
std::string_view to_string(RunStatus status);

struct ExperimentResult {
  std::string id;
  RunStatus status = RunStatus::passed;
  bool hypotheses_hold = true;
  std::vector<ConvergenceTable> tables;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, std::string>> config;

  const ConvergenceTable& table(std::string_view id) const;
};

/// n -> phi_n together with the uniform constants it is declared to satisfy:
/// 1/c <= phi_n(x,1) <= c (when c is set) and aInc(p_n) with constant L.
struct PhiSequence {
  std::string name;
  std::function<PhiFunction(long n)> make;
  std::optional<double> c;
  double L = 1.0;
};

namespace sequences {
/// t^n
PhiSequence power();
/// t^n / n
PhiSequence scaled_power();
/// (a t)^n
PhiSequence scaled_base(double a);
/// t^{n + x_0}
PhiSequence variable_linear();
/// t^{n + 1/|x|}; keep the origin out of the domain.
PhiSequence variable_inverse_radius();
/// t^n + a x_0 t^{2n}, for domains inside [0, 1] along x_0.
PhiSequence double_phase(double a);
/// Looks a sequence up by name: power, scaled_power, scaled_base, variable_linear,
/// variable_inverse_radius, double_phase. `param` feeds a where applicable.
PhiSequence by_name(std::string_view name, double param = 2.0);
}  // namespace sequences

/// {1, 2, 4, ..., 128}
std::vector<long> default_n_list();

struct ExperimentOptions {
  double tolerance = 0.05;   ///< acceptance tolerance on the final row
  double rel_tol = 1e-8;     ///< Luxemburg bisection tolerance
  std::size_t ainc_x_samples = 64;
};

ExperimentResult norm_convergence_experiment(const PhiSequence& family, const FieldExpr& u,
                                             const GridDomain& domain, std::vector<long> n_list,
                                             const ExperimentOptions& options = {});

ExperimentResult counterexample_scaled_base(double a, const FieldExpr& u, const GridDomain& domain,
                                            std::vector<long> n_list,
                                            const ExperimentOptions& options = {});

/// Fine brute-force grids on [1/2, 1] x (0, 1] used for the aInc constants of
/// max{0, 2t-1} + phi_infinity.
std::vector<double> nonuniform_t_grid();
std::vector<double> nonuniform_lambda_grid();

ExperimentResult counterexample_nonuniform_ainc(std::vector<double> p_list, const FieldExpr& u,
                                                const GridDomain& domain,
                                                const ExperimentOptions& options = {});

ExperimentResult gamma_norm_experiment(const PhiSequence& family, const Integrand& f, const FieldExpr& u,
                                       const std::function<FieldExpr(long)>& u_sequence,
                                       const GridDomain& domain, std::vector<long> n_list,
                                       const ExperimentOptions& options = {});

ExperimentResult gamma_modular_experiment(const PhiSequence& family, const Integrand& f,
                                          const FieldExpr& u, const GridDomain& domain,
                                          std::vector<long> n_list,
                                          const ExperimentOptions& options = {});

/// Ratios ||g||_{L^{q/gamma}} / ||g||_{phi_q} against C_q = (2L(|Omega|+c))^{gamma/q}.
ExperimentResult embedding_sharpness_experiment(const PhiSequence& family, double gamma,
                                                const std::vector<SampledField>& fields,
                                                const GridDomain& domain, std::vector<long> q_list,
                                                const ExperimentOptions& options = {});

// ---------------------------------------------------------------------------
// Output

/// Header `n,p_n,quantity,reference,abs_error`, `\n` line endings, 17
/// significant digits, +inf as `inf`. Throws on an empty table.
std::string format_csv(const ConvergenceTable& table);
void emit_csv(const ConvergenceTable& table, const std::string& path);

/// Writes `<dir>/<table id>.csv` for every table of the result.
std::vector<std::string> emit_experiment(const ExperimentResult& result, const std::string& dir);

/// `experiment,status,hypotheses,config,tables` with one row per result.
std::string format_index(const std::vector<ExperimentResult>& results);

}  // namespace orlicz
