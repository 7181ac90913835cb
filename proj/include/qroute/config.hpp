#pragma once

// Run configuration. The file format is JSON with every key optional; an
// empty object reproduces the default parameter set. Unknown keys are
// rejected.
//
//   {
//     "system":    {"lambda": 0.8, "mu": 1.0},
//     "warmup":    {"phi_max": 1.0, "alpha": 0.5},
//     "p_grid":    [0.025, 0.05, ...],
//     "classical": {"grid_points": 500, "theta_max": 12.0, "epsilon": 0.01,
//                   "lipschitz_refine": 10},
//     "quantum":   {"degree": 2, "quad_order": 60, "restarts": 20, "seed": 1,
//                   "tolerance": 1e-8},
//     "oracle":    {"n_samples": 100000, "seed": 1},
//     "sim":       {"n_pairs": 500000, "warmup_discard": 50000, "seed": 1},
//     "output":    {"format": "csv", "path": ""}
//   }

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qroute/classical_cert.hpp"
#include "qroute/des_sim.hpp"
#include "qroute/oracle_policy.hpp"
#include "qroute/quantum_opt.hpp"
#include "qroute/throughput.hpp"

namespace qroute {

/// Bad configuration or policy input. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  double lambda = 0.8;
  double mu = 1.0;
  WarmupModel warmup{};
  std::vector<double> p_grid = default_p_grid();
  GridConfig classical{};
  QuantumOptions quantum{};
  std::size_t oracle_samples = 100000;
  std::uint64_t oracle_seed = 1;
  std::size_t sim_pairs = 500000;
  std::size_t sim_warmup = 50000;
  std::uint64_t sim_seed = 1;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;

  /// 0.025, 0.05, ..., 0.475.
  static std::vector<double> default_p_grid();
};

/// Throws ConfigError (with line information for syntax errors).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Cross-field checks: stable system, valid sub-configs, sorted p_grid in
/// [0, 1]. Throws ConfigError.
void validate(const RunConfig& cfg);

/// Overrides every seed in the configuration.
void set_all_seeds(RunConfig& cfg, std::uint64_t seed);

OutputFormat parse_format(const std::string& name);

/// Policy file: either a policy object
///   {"kind": "bernoulli", "p": 0.2, "load_balance_flip": true}
/// or any object that holds one under "policy" (as emitted by the quantum
/// command). Throws ConfigError with line information.
PolicySpec parse_policy(const std::string& text);
PolicySpec load_policy(const std::string& path);

}  // namespace qroute
