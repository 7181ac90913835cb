#pragma once

// Subcommand bodies shared by the command-line tool and the tests. Each
// writes its artifact to `out`, human-readable notes to `log`, and returns a
// process exit code.

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "qroute/config.hpp"

namespace qroute::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitInfeasible = 3,
  kExitInvalidCertificate = 4,
};

/// ConfigError and std::invalid_argument map to kExitConfig, anything else
/// to kExitFailure.
int exit_code_for(const std::exception& e) noexcept;

/// Table in cfg.format to `out`, JSON summary to `summary`.
int cmd_frontier(const RunConfig& cfg, std::ostream& out, std::ostream& summary,
                 std::ostream& log);

/// Certificate JSON. Returns kExitInvalidCertificate when it does not hold.
int cmd_classical(const RunConfig& cfg, double p, std::ostream& out, std::ostream& log);

/// Strategy JSON, which also serves as a policy file for cmd_simulate.
/// Returns kExitInfeasible when no restart met the constraint.
int cmd_quantum(const RunConfig& cfg, double p, std::ostream& out, std::ostream& log);

int cmd_oracle(const RunConfig& cfg, double p, std::ostream& out, std::ostream& log);

int cmd_simulate(const RunConfig& cfg, const PolicySpec& policy, std::ostream& out,
                 std::ostream& log);

/// Rows for `ps`, or for cfg.p_grid when `ps` is empty.
int cmd_throughput(const RunConfig& cfg, const std::vector<double>& ps, std::ostream& out,
                   std::ostream& log);

}  // namespace qroute::cli
