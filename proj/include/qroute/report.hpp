#pragma once

// CSV and JSON serialization of command results. CSV numbers carry 12
// significant digits; JSON documents carry a schema_version field.

#include <iosfwd>
#include <string>
#include <vector>

#include "qroute/classical_cert.hpp"
#include "qroute/des_sim.hpp"
#include "qroute/frontier.hpp"
#include "qroute/oracle_policy.hpp"
#include "qroute/quantum_opt.hpp"

namespace qroute {

inline constexpr int kSchemaVersion = 1;

/// "%.12g", with "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v);

/// Columns: p, a_star, a_star_se, a_cl_upper, a_cl_sr_upper, a_qu_lower,
/// dwq_cl, dwq_qu, advantage, throughput_norm, status. status is "ok" or
/// "error: <message>"; failed rows carry nan in the value columns that could
/// not be computed.
void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points);

/// Inverse of write_frontier_csv. Throws std::runtime_error on a malformed
/// table.
std::vector<FrontierPoint> read_frontier_csv(std::istream& in);

std::string frontier_json(const Frontier& f);
std::string summary_json(const FrontierSummary& s);
std::string certificate_json(const CertifiedBound& b);
std::string strategy_json(const QuantumStrategy& q);
std::string oracle_json(const OraclePayoff& o);

void write_simstats_csv(std::ostream& out, const std::string& policy, const SimStats& s);
std::string simstats_json(const std::string& policy, const SimStats& s);

struct ThroughputRow {
  double p = 0.0;
  double throughput = 0.0;
  double normalized = 0.0;
};

void write_throughput_csv(std::ostream& out, const std::vector<ThroughputRow>& rows);
std::string throughput_json(const std::vector<ThroughputRow>& rows);

}  // namespace qroute
