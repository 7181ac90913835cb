#include "qroute/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qroute {

using nlohmann::ordered_json;

namespace {

const char* const kFrontierHeader =
    "p,a_star,a_star_se,a_cl_upper,a_cl_sr_upper,a_qu_lower,dwq_cl,dwq_qu,advantage,"
    "throughput_norm,status";

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

double parse_number(const std::string& field) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(field, &used);
  if (used != field.size()) throw std::runtime_error("bad number '" + field + "'");
  return v;
}

// JSON has no infinities; they are written as strings.
ordered_json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ordered_json point_json(const FrontierPoint& pt) {
  ordered_json j;
  j["p"] = num(pt.p);
  j["a_star"] = num(pt.a_star);
  j["a_star_se"] = num(pt.a_star_se);
  j["a_cl_upper"] = num(pt.a_cl_upper);
  j["a_cl_sr_upper"] = num(pt.a_cl_sr_upper);
  j["a_qu_lower"] = num(pt.a_qu_lower);
  j["dwq_cl"] = num(pt.dwq_cl);
  j["dwq_qu"] = num(pt.dwq_qu);
  j["advantage"] = pt.advantage;
  j["throughput_norm"] = num(pt.throughput_norm);
  j["certificate_valid"] = pt.certificate_valid;
  j["quantum_feasible"] = pt.quantum_feasible;
  if (!pt.ok()) j["error"] = pt.error;
  return j;
}

ordered_json summary_obj(const FrontierSummary& s) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  if (s.has_advantage) {
    j["advantage_interval"] = {s.advantage_lo, s.advantage_hi};
  } else {
    j["advantage_interval"] = nullptr;
  }
  j["advantage_interval_note"] = "endpoints are limited by the p-grid resolution";
  j["max_gap"] = num(s.max_gap);
  j["argmax_p"] = num(s.argmax_p);
  j["n_points"] = s.n_points;
  j["n_failed"] = s.n_failed;
  j["all_certificates_valid"] = s.all_certificates_valid;
  j["all_quantum_feasible"] = s.all_quantum_feasible;
  return j;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points) {
  out << kFrontierHeader << '\n';
  for (const auto& pt : points) {
    out << format_number(pt.p) << ',' << format_number(pt.a_star) << ','
        << format_number(pt.a_star_se) << ',' << format_number(pt.a_cl_upper) << ','
        << format_number(pt.a_cl_sr_upper) << ',' << format_number(pt.a_qu_lower) << ','
        << format_number(pt.dwq_cl) << ',' << format_number(pt.dwq_qu) << ','
        << (pt.advantage ? 1 : 0) << ',' << format_number(pt.throughput_norm) << ','
        << (pt.ok() ? std::string("ok") : "error: " + sanitize(pt.error)) << '\n';
  }
}

std::vector<FrontierPoint> read_frontier_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kFrontierHeader) {
    throw std::runtime_error("frontier CSV header mismatch");
  }
  std::vector<FrontierPoint> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 11) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected 11 fields");
    }
    FrontierPoint pt;
    try {
      pt.p = parse_number(f[0]);
      pt.a_star = parse_number(f[1]);
      pt.a_star_se = parse_number(f[2]);
      pt.a_cl_upper = parse_number(f[3]);
      pt.a_cl_sr_upper = parse_number(f[4]);
      pt.a_qu_lower = parse_number(f[5]);
      pt.dwq_cl = parse_number(f[6]);
      pt.dwq_qu = parse_number(f[7]);
      if (f[8] != "0" && f[8] != "1") throw std::runtime_error("advantage must be 0 or 1");
      pt.advantage = f[8] == "1";
      pt.throughput_norm = parse_number(f[9]);
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (f[10] != "ok") {
      const std::string prefix = "error: ";
      pt.error = f[10].rfind(prefix, 0) == 0 ? f[10].substr(prefix.size()) : f[10];
      if (pt.error.empty()) pt.error = "error";
    }
    rows.push_back(std::move(pt));
  }
  return rows;
}

std::string frontier_json(const Frontier& f) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["summary"] = summary_obj(f.summary);
  ordered_json arr = ordered_json::array();
  for (const auto& pt : f.points) arr.push_back(point_json(pt));
  j["points"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string summary_json(const FrontierSummary& s) { return summary_obj(s).dump(2) + "\n"; }

std::string certificate_json(const CertifiedBound& b) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = num(b.p);
  j["valid"] = b.valid;
  j["boundary_ok"] = b.boundary_ok;
  j["near_min_covered"] = b.near_min_covered;
  j["degenerate"] = b.degenerate;
  j["a_grid"] = num(b.a_grid);
  j["upper"] = num(b.upper);
  j["lipschitz"] = num(b.lipschitz);
  j["delta"] = num(b.delta);
  j["theta_star"] = {num(b.theta_star.first), num(b.theta_star.second)};
  j["theta_min"] = num(b.theta_min);
  j["epsilon"] = num(b.epsilon);
  j["theta_max"] = num(b.theta_max);
  j["grid_points"] = b.grid_points;
  j["a_low_end"] = num(b.a_low_end);
  j["a_high_end"] = num(b.a_high_end);
  j["tail_upper"] = num(b.tail_upper);
  j["constraint_residual"] = num(b.constraint_residual);
  j["nondegeneracy_margin"] = num(b.nondegeneracy_margin);
  j["lipschitz_inflated"] = b.lipschitz_inflated;
  return j.dump(2) + "\n";
}

std::string strategy_json(const QuantumStrategy& q) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["p_target"] = num(q.p_target);
  j["p_achieved"] = num(q.p_achieved);
  j["constraint_residual"] = num(q.constraint_residual);
  j["payoff"] = num(q.payoff);
  j["feasible"] = q.feasible;
  j["degree"] = q.degree;
  j["restarts_used"] = q.restarts_used;
  j["feasible_restarts"] = q.feasible_restarts;
  j["best_restart"] = q.best_restart;
  j["seed"] = q.seed;
  ordered_json pol;
  pol["kind"] = "quantum";
  pol["coeffs_a"] = q.coeffs_a;
  pol["coeffs_b"] = q.coeffs_b;
  pol["load_balance_flip"] = true;
  j["policy"] = std::move(pol);
  return j.dump(2) + "\n";
}

std::string oracle_json(const OraclePayoff& o) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = num(o.p);
  j["tau"] = num(o.tau);
  j["a_star"] = num(o.a_star);
  j["std_err"] = num(o.std_err);
  j["split_fraction"] = num(o.split_fraction);
  j["n_samples"] = o.n_samples;
  j["seed"] = o.seed;
  return j.dump(2) + "\n";
}

void write_simstats_csv(std::ostream& out, const std::string& policy, const SimStats& s) {
  out << "policy,n_pairs,n_observed,mean_wq,wq_se,split_fraction,split_se,load_1,load_1_se,"
         "load_2,load_2_se,baseline_throughput,throughput_se,mean_idle,idle_se,mean_busy,"
         "busy_se\n";
  out << sanitize(policy) << ',' << s.n_pairs << ',' << s.n_observed << ','
      << format_number(s.mean_wq) << ',' << format_number(s.wq_se) << ','
      << format_number(s.split_fraction) << ',' << format_number(s.split_se) << ','
      << format_number(s.per_server_load[0]) << ',' << format_number(s.load_se[0]) << ','
      << format_number(s.per_server_load[1]) << ',' << format_number(s.load_se[1]) << ','
      << format_number(s.baseline_throughput) << ',' << format_number(s.throughput_se) << ','
      << format_number(s.mean_idle) << ',' << format_number(s.idle_se) << ','
      << format_number(s.mean_busy) << ',' << format_number(s.busy_se) << '\n';
}

std::string simstats_json(const std::string& policy, const SimStats& s) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["policy"] = policy;
  j["n_pairs"] = s.n_pairs;
  j["n_observed"] = s.n_observed;
  j["mean_wq"] = num(s.mean_wq);
  j["wq_se"] = num(s.wq_se);
  j["split_fraction"] = num(s.split_fraction);
  j["split_se"] = num(s.split_se);
  j["per_server_load"] = {num(s.per_server_load[0]), num(s.per_server_load[1])};
  j["load_se"] = {num(s.load_se[0]), num(s.load_se[1])};
  j["baseline_throughput"] = num(s.baseline_throughput);
  j["throughput_se"] = num(s.throughput_se);
  j["mean_idle"] = num(s.mean_idle);
  j["idle_se"] = num(s.idle_se);
  j["mean_busy"] = num(s.mean_busy);
  j["busy_se"] = num(s.busy_se);
  return j.dump(2) + "\n";
}

void write_throughput_csv(std::ostream& out, const std::vector<ThroughputRow>& rows) {
  out << "p,throughput,throughput_norm\n";
  for (const auto& r : rows) {
    out << format_number(r.p) << ',' << format_number(r.throughput) << ','
        << format_number(r.normalized) << '\n';
  }
}

std::string throughput_json(const std::vector<ThroughputRow>& rows) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"p", num(r.p)}, {"throughput", num(r.throughput)},
                   {"throughput_norm", num(r.normalized)}});
  }
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace qroute
