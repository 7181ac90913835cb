#include "qroute/commands.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qroute/frontier.hpp"
#include "qroute/report.hpp"

namespace qroute::cli {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return kExitConfig;
  if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) return kExitConfig;
  return kExitFailure;
}

int cmd_frontier(const RunConfig& cfg, std::ostream& out, std::ostream& summary,
                 std::ostream& log) {
  const Frontier f = compute_frontier(cfg);
  if (cfg.format == OutputFormat::json) {
    out << frontier_json(f);
  } else {
    write_frontier_csv(out, f.points);
  }
  summary << summary_json(f.summary);

  const FrontierSummary& s = f.summary;
  for (const auto& pt : f.points) {
    if (!pt.ok()) log << "p = " << format_number(pt.p) << ": " << pt.error << '\n';
  }
  if (s.has_advantage) {
    log << "advantage on grid p in [" << format_number(s.advantage_lo) << ", "
        << format_number(s.advantage_hi) << "]";
  } else {
    log << "no certified advantage on the grid";
  }
  log << ", max gap " << fmt("%.5f", s.max_gap) << " at p = " << format_number(s.argmax_p)
      << '\n';
  if (!s.all_certificates_valid) log << "warning: some certificates are not valid\n";
  if (!s.all_quantum_feasible) log << "warning: some quantum optimizations are infeasible\n";
  return kExitOk;
}

int cmd_classical(const RunConfig& cfg, double p, std::ostream& out, std::ostream& log) {
  const SystemParams params = make_params(cfg.lambda, cfg.mu);
  const CertifiedBound b = certified_classical_bound(params, p, cfg.classical);
  out << certificate_json(b);
  log << "certificate " << (b.valid ? "VALID" : "INVALID") << ": A_cl(" << format_number(p)
      << ") <= " << fmt("%.9f", b.upper) << " (grid max " << fmt("%.9f", b.a_grid)
      << ", L = " << fmt("%.4g", b.lipschitz) << ")\n";
  return b.valid ? kExitOk : kExitInvalidCertificate;
}

int cmd_quantum(const RunConfig& cfg, double p, std::ostream& out, std::ostream& log) {
  const SystemParams params = make_params(cfg.lambda, cfg.mu);
  const QuantumStrategy q = optimize_quantum(params, p, cfg.quantum);
  out << strategy_json(q);
  log << (q.feasible ? "feasible" : "INFEASIBLE") << " strategy: payoff "
      << fmt("%.9f", q.payoff) << ", constraint residual " << fmt("%.3g", q.constraint_residual)
      << ", " << q.feasible_restarts << "/" << q.restarts_used << " restarts feasible\n";
  return q.feasible ? kExitOk : kExitInfeasible;
}

int cmd_oracle(const RunConfig& cfg, double p, std::ostream& out, std::ostream& log) {
  const SystemParams params = make_params(cfg.lambda, cfg.mu);
  const OraclePayoff o = oracle_payoff(params, p, cfg.oracle_samples, cfg.oracle_seed);
  out << oracle_json(o);
  log << "A*(" << format_number(p) << ") = " << fmt("%.6f", o.a_star) << " +/- "
      << fmt("%.2g", o.std_err) << ", tau = " << fmt("%.6f", o.tau) << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const PolicySpec& policy, std::ostream& out,
                 std::ostream& log) {
  const SystemParams params = make_params(cfg.lambda, cfg.mu);
  const SimStats s =
      simulate(params, policy, cfg.warmup, cfg.sim_pairs, cfg.sim_warmup, cfg.sim_seed);
  const std::string name = to_string(policy.kind);
  if (cfg.format == OutputFormat::json) {
    out << simstats_json(name, s);
  } else {
    write_simstats_csv(out, name, s);
  }
  log << name << ": mean Wq " << fmt("%.5f", s.mean_wq) << " +/- " << fmt("%.2g", s.wq_se)
      << ", split fraction " << fmt("%.5f", s.split_fraction) << '\n';
  return kExitOk;
}

int cmd_throughput(const RunConfig& cfg, const std::vector<double>& ps, std::ostream& out,
                   std::ostream& /*log*/) {
  const SystemParams params = make_params(cfg.lambda, cfg.mu);
  validate(cfg.warmup);
  const std::vector<double>& grid = ps.empty() ? cfg.p_grid : ps;
  std::vector<ThroughputRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
    rows.push_back({p, avg_throughput(params, cfg.warmup, p),
                    normalized_throughput(params, cfg.warmup, p)});
  }
  if (cfg.format == OutputFormat::json) {
    out << throughput_json(rows);
  } else {
    write_throughput_csv(out, rows);
  }
  return kExitOk;
}

}  // namespace qroute::cli
