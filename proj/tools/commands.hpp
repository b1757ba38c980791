#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "orlicz/experiments.hpp"

namespace orlicz::cli {

/// Exit codes of the command line tool.
enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kConfigError = 2 };

inline constexpr const char* kThreadsEnv = "ORLICZ_LAB_THREADS";

/// Experiment ids accepted by `experiment <id>`.
const std::vector<std::string>& experiment_ids();

/// Everything an experiment run needs; empty strings select per-experiment defaults.
struct ExperimentRequest {
  std::string id;
  std::string phi_family;
  double param = 2.0;
  std::string field;
  std::string integrand;
  std::string domain;
  std::string n_list;
  std::string p_list;
  double gamma = 1.0;
  double tolerance = 0.05;
  double rel_tol = 1e-8;
  std::uint64_t seed = 1;
};

/// Resolves defaults and runs one experiment. Throws orlicz::Error on bad input.
ExperimentResult run_experiment(const ExperimentRequest& request);

/// Entry point behind `orlicz-lab`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies ORLICZ_LAB_THREADS if set. Returns false if it is malformed.
bool apply_thread_env();

}  // namespace orlicz::cli
