#include "qroute/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

namespace qroute {

using nlohmann::json;

namespace {

std::string located(const std::string& what, std::size_t line, std::size_t column) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("malformed JSON (" + std::string(e.what()) + ")", line, col);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

void read(const json& obj, const char* key, const std::string& where, double& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  out = v.get<double>();
}

template <class U>
void read_unsigned(const json& obj, const char* key, const std::string& where, U& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  out = static_cast<U>(v.get<std::uint64_t>());
}

void read(const json& obj, const char* key, const std::string& where, bool& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
  out = v.get<bool>();
}

void read(const json& obj, const char* key, const std::string& where, std::string& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  out = v.get<std::string>();
}

void read(const json& obj, const char* key, const std::string& where, std::vector<double>& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of numbers");
  out.clear();
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(located(what, line, column)), line_(line), column_(column) {}

std::vector<double> RunConfig::default_p_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(0.025 * i);
  return g;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("output format must be 'csv' or 'json', got '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  const json root = parse_json(blank ? std::string("{}") : text);
  check_keys(root, "config",
             {"system", "warmup", "p_grid", "classical", "quantum", "oracle", "sim", "output"});
  if (root.contains("system")) {
    const json& s = root.at("system");
    check_keys(s, "system", {"lambda", "mu"});
    read(s, "lambda", "system", cfg.lambda);
    read(s, "mu", "system", cfg.mu);
  }
  if (root.contains("warmup")) {
    const json& s = root.at("warmup");
    check_keys(s, "warmup", {"phi_max", "alpha"});
    read(s, "phi_max", "warmup", cfg.warmup.phi_max);
    read(s, "alpha", "warmup", cfg.warmup.alpha);
  }
  read(root, "p_grid", "config", cfg.p_grid);
  if (root.contains("classical")) {
    const json& s = root.at("classical");
    check_keys(s, "classical", {"grid_points", "theta_max", "epsilon", "lipschitz_refine"});
    read_unsigned(s, "grid_points", "classical", cfg.classical.grid_points);
    read(s, "theta_max", "classical", cfg.classical.theta_max);
    read(s, "epsilon", "classical", cfg.classical.epsilon);
    read_unsigned(s, "lipschitz_refine", "classical", cfg.classical.lipschitz_refine);
  }
  if (root.contains("quantum")) {
    const json& s = root.at("quantum");
    check_keys(s, "quantum", {"degree", "quad_order", "restarts", "seed", "tolerance", "max_iter"});
    read_unsigned(s, "degree", "quantum", cfg.quantum.degree);
    read_unsigned(s, "quad_order", "quantum", cfg.quantum.quad_order);
    read_unsigned(s, "restarts", "quantum", cfg.quantum.restarts);
    read_unsigned(s, "seed", "quantum", cfg.quantum.seed);
    read(s, "tolerance", "quantum", cfg.quantum.tolerance);
    read_unsigned(s, "max_iter", "quantum", cfg.quantum.max_iter);
  }
  if (root.contains("oracle")) {
    const json& s = root.at("oracle");
    check_keys(s, "oracle", {"n_samples", "seed"});
    read_unsigned(s, "n_samples", "oracle", cfg.oracle_samples);
    read_unsigned(s, "seed", "oracle", cfg.oracle_seed);
  }
  if (root.contains("sim")) {
    const json& s = root.at("sim");
    check_keys(s, "sim", {"n_pairs", "warmup_discard", "seed"});
    read_unsigned(s, "n_pairs", "sim", cfg.sim_pairs);
    read_unsigned(s, "warmup_discard", "sim", cfg.sim_warmup);
    read_unsigned(s, "seed", "sim", cfg.sim_seed);
  }
  if (root.contains("output")) {
    const json& s = root.at("output");
    check_keys(s, "output", {"format", "path"});
    std::string fmt = "csv";
    read(s, "format", "output", fmt);
    cfg.format = parse_format(fmt);
    read(s, "path", "output", cfg.output_path);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

void validate(const RunConfig& cfg) {
  try {
    make_params(cfg.lambda, cfg.mu);
    qroute::validate(cfg.warmup);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (std::size_t i = 0; i < cfg.p_grid.size(); ++i) {
    const double p = cfg.p_grid[i];
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p_grid values must lie in [0, 1]");
    if (i > 0 && !(p > cfg.p_grid[i - 1])) {
      throw ConfigError("p_grid must be strictly increasing");
    }
  }
  if (cfg.classical.grid_points < 2) throw ConfigError("classical.grid_points must be >= 2");
  if (cfg.classical.lipschitz_refine < 1) {
    throw ConfigError("classical.lipschitz_refine must be >= 1");
  }
  if (!(cfg.classical.epsilon > 0.0) || !(cfg.classical.theta_max > cfg.classical.epsilon)) {
    throw ConfigError("classical needs 0 < epsilon < theta_max");
  }
  if (cfg.quantum.quad_order < 2 || cfg.quantum.quad_order > kMaxLaguerreOrder) {
    throw ConfigError("quantum.quad_order must lie in [2, " + std::to_string(kMaxLaguerreOrder) +
                      "]");
  }
  if (cfg.quantum.restarts == 0) throw ConfigError("quantum.restarts must be >= 1");
  if (!(cfg.quantum.tolerance > 0.0)) throw ConfigError("quantum.tolerance must be positive");
  if (cfg.oracle_samples < kMinOracleSamples) {
    throw ConfigError("oracle.n_samples must be >= " + std::to_string(kMinOracleSamples));
  }
  if (cfg.sim_pairs < 10 * cfg.sim_warmup) {
    throw ConfigError("sim.n_pairs must be at least 10 * sim.warmup_discard");
  }
}

void set_all_seeds(RunConfig& cfg, std::uint64_t seed) {
  cfg.quantum.seed = seed;
  cfg.oracle_seed = seed;
  cfg.sim_seed = seed;
}

PolicySpec parse_policy(const std::string& text) {
  json root = parse_json(text);
  if (root.is_object() && root.contains("policy")) root = root.at("policy");
  check_keys(root, "policy",
             {"kind", "p", "tau", "theta_a", "theta_b", "coeffs_a", "coeffs_b",
              "load_balance_flip"});
  if (!root.contains("kind")) throw ConfigError("policy needs a 'kind'");
  std::string kind;
  read(root, "kind", "policy", kind);
  PolicySpec spec;
  try {
    spec.kind = policy_kind_from_string(kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  read(root, "p", "policy", spec.p);
  read(root, "tau", "policy", spec.tau);
  read(root, "theta_a", "policy", spec.theta_a);
  read(root, "theta_b", "policy", spec.theta_b);
  read(root, "coeffs_a", "policy", spec.coeffs_a);
  read(root, "coeffs_b", "policy", spec.coeffs_b);
  read(root, "load_balance_flip", "policy", spec.load_balance_flip);
  try {
    qroute::validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

PolicySpec load_policy(const std::string& path) { return parse_policy(read_file(path)); }

}  // namespace qroute
