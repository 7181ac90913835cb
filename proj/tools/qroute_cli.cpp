// qroute: frontier sweeps, certificates, strategy optimization and
// simulation for two-server pair routing.

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qroute/commands.hpp"
#include "qroute/config.hpp"

namespace {

using namespace qroute;

struct Globals {
  std::string config_path;
  std::string output_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

struct PolicyArgs {
  std::string file;
  std::string kind = "always_split";
  double p = 0.0;
  double tau = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  std::vector<double> coeffs_a;
  std::vector<double> coeffs_b;
  bool no_flip = false;
};

RunConfig resolve_config(const Globals& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
  if (!g.format.empty()) cfg.format = parse_format(g.format);
  if (!g.output_path.empty()) cfg.output_path = g.output_path;
  if (g.seed) set_all_seeds(cfg, *g.seed);
  validate(cfg);
  return cfg;
}

PolicySpec resolve_policy(const PolicyArgs& a) {
  if (!a.file.empty()) return load_policy(a.file);
  PolicySpec s;
  try {
    s.kind = policy_kind_from_string(a.kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.p = a.p;
  s.tau = a.tau;
  s.theta_a = a.theta_a;
  s.theta_b = a.theta_b;
  s.coeffs_a = a.coeffs_a;
  s.coeffs_b = a.coeffs_b;
  s.load_balance_flip = !a.no_flip;
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

// Writes `body` to the configured path, or stdout when none is set.
void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.output_path.empty()) {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + cfg.output_path + " for writing");
  f << body;
  if (!f) throw std::runtime_error("write to " + cfg.output_path + " failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-assisted routing for two-server pair arrivals"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--output", g.output_path, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Override every seed in the configuration");
  app.add_option("--threads", g.threads, "OpenMP threads (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);

  double p = 0.2;
  std::vector<double> ps;
  PolicyArgs pol;

  auto* frontier = app.add_subcommand("frontier", "Sweep the p-grid and write the frontier");
  auto* classical = app.add_subcommand("classical", "Certified classical bound at one p");
  classical->add_option("--p", p, "Splitting probability")->required();
  auto* quantum = app.add_subcommand("quantum", "Optimize an entangled strategy at one p");
  quantum->add_option("--p", p, "Splitting probability")->required();
  auto* oracle = app.add_subcommand("oracle", "Full-information threshold payoff at one p");
  oracle->add_option("--p", p, "Splitting probability")->required();
  auto* sim = app.add_subcommand("simulate", "Event-driven simulation of one policy");
  auto* file_opt = sim->add_option("--policy", pol.file, "Policy JSON file")
                       ->check(CLI::ExistingFile);
  sim->add_option("--kind", pol.kind, "Policy kind")->excludes(file_opt);
  sim->add_option("--p", pol.p, "bernoulli split probability")->excludes(file_opt);
  sim->add_option("--tau", pol.tau, "oracle_threshold level")->excludes(file_opt);
  sim->add_option("--theta-a", pol.theta_a, "classical threshold of player A")
      ->excludes(file_opt);
  sim->add_option("--theta-b", pol.theta_b, "classical threshold of player B")
      ->excludes(file_opt);
  sim->add_option("--coeffs-a", pol.coeffs_a, "quantum angle coefficients of player A")
      ->excludes(file_opt);
  sim->add_option("--coeffs-b", pol.coeffs_b, "quantum angle coefficients of player B")
      ->excludes(file_opt);
  sim->add_flag("--no-flip", pol.no_flip, "Disable the shared load-balancing bit")
      ->excludes(file_opt);
  auto* thr = app.add_subcommand("throughput", "Baseline throughput table");
  thr->add_option("--p", ps, "Splitting probabilities (default: the configured p-grid)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfig;
  }

  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);
    const RunConfig cfg = resolve_config(g);
    std::ostringstream out;
    int rc = cli::kExitOk;
    if (frontier->parsed()) {
      std::ostringstream summary;
      rc = cli::cmd_frontier(cfg, out, summary, std::cerr);
      if (cfg.output_path.empty()) {
        std::cerr << summary.str();
      } else {
        RunConfig side = cfg;
        side.output_path = cfg.output_path + ".summary.json";
        emit(side, summary.str());
      }
    } else if (classical->parsed()) {
      rc = cli::cmd_classical(cfg, p, out, std::cerr);
    } else if (quantum->parsed()) {
      rc = cli::cmd_quantum(cfg, p, out, std::cerr);
    } else if (oracle->parsed()) {
      rc = cli::cmd_oracle(cfg, p, out, std::cerr);
    } else if (sim->parsed()) {
      rc = cli::cmd_simulate(cfg, resolve_policy(pol), out, std::cerr);
    } else if (thr->parsed()) {
      rc = cli::cmd_throughput(cfg, ps, out, std::cerr);
    }
    emit(cfg, out.str());
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e);
  }
}
