#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "boxembed/bvp.hpp"

namespace boxembed {

/// Thrown for invalid configurations; the CLI maps it to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Batch description of one experiment family. Lists are cartesian-expanded
/// into rows.
struct ExperimentConfig {
  std::string experiment;  // integral | dirichlet | neumann | kernels | precondition | delta-sweep
  std::vector<int> m_list;
  std::vector<int> n_list;
  std::vector<double> delta_list;
  TestFunctionKind tf = TestFunctionKind::Symmetric;
  double alpha_override = 0.0;  // 0 means the 4m default
  double radius = 0.0;          // 0 means the experiment's table default
  bool snap = false;
  bool precondition = false;
  int k_max = 33;               // kernels experiment
  std::string curve_path;       // optional boundary-point file
  std::string out_path;         // empty = stdout
  std::uint64_t seed = 12345;

  void validate() const;  // throws UsageError
};

struct ResultRow {
  std::string experiment;
  int m = 0;
  int n = 0;
  std::optional<double> delta;
  std::string tf_kind;
  std::optional<double> alpha;
  std::optional<double> cond_M;
  std::optional<double> cond_precond;
  std::optional<double> e_inf;
  std::optional<double> e_2;
  double wall_ms = 0.0;
  std::optional<int> harmonic;
};

/// Runs the configured experiment; rows come back in deterministic sorted
/// order regardless of execution schedule.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

/// RFC-4180-style CSV with a header row; floats use 6 significant digits.
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);

std::string tf_kind_name(TestFunctionKind k);
TestFunctionKind tf_kind_from_name(const std::string& name);

/// Default sharpness used everywhere unless overridden.
inline double default_alpha(int m) { return 4.0 * m; }

/// Boundary curve for an experiment: the file if given, else a centered
/// circle of the given radius.
BoundaryCurve experiment_curve(const ExperimentConfig& config, double default_radius);

}  // namespace boxembed
