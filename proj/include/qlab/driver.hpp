#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/linalg.hpp"

namespace qlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { poly, estimate, sweep, hardness, degree };

// Validated batch-experiment configuration. Values come from `key=value`
// config-file lines and --key flags; flags win, with a warning on conflict.
struct ExperimentConfig {
  Command command = Command::poly;
  std::vector<int> q_list;
  std::vector<double> eps_list;
  std::string eps_rule;    // "", "inv100q"
  std::vector<double> delta_list;
  std::string delta_rule;  // "", "half", "quarter", "half,quarter"
  int trials = 200;
  std::uint64_t seed = 1;
  std::string method = "qsvt";  // qsvt | shift | nonuniform-minimax
  std::string rho_spec;
  std::string mode = "analytic";  // analytic | full-circuit
  std::string family = "large-q";
  double t_param = 0.5;
  int grid_size = 10000;
  std::string out_path;        // empty -> stdout
  std::string histogram_path;  // estimate: QAE outcome histogram CSV
  bool plot = false;
  bool timing = false;
  bool distinguish = false;
};

// args excludes the program name: {command, --key, value, ...}.
// Warnings (e.g. flag overriding a config-file key) go to `warnings`.
ExperimentConfig parse_config(const std::vector<std::string>& args,
                              std::vector<std::string>* warnings = nullptr);

// Density-matrix literals: pure | maxmixed:n | diag:a,b,... | random:n:seed.
// Fractions like 2/3 are accepted wherever reals are.
DensityMatrix parse_density_spec(const std::string& spec);

// Executes the experiment; deterministic artifacts for fixed (config, seed).
// Returns the process exit status.
int run(const ExperimentConfig& config);

}  // namespace qlab
