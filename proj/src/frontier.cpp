#include "qroute/frontier.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "qroute/oracle_policy.hpp"

namespace qroute {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RowWork {
  FrontierPoint pt;
  std::optional<double> cl_upper;
};

RowWork compute_row(const RunConfig& cfg, const SystemParams& params, double p) {
  RowWork w;
  w.pt.p = p;
  try {
    const OraclePayoff orc = oracle_payoff(params, p, cfg.oracle_samples, cfg.oracle_seed);
    w.pt.a_star = orc.a_star;
    w.pt.a_star_se = orc.std_err;

    const CertifiedBound cb = certified_classical_bound(params, p, cfg.classical);
    w.pt.a_cl_upper = cb.upper;
    w.pt.certificate_valid = cb.valid;
    w.cl_upper = cb.upper;

    if (p == 0.0 || p == 1.0) {
      // Equal angles bunch every pair; a relative angle of pi/2 splits every pair.
      w.pt.a_qu_lower = p == 0.0 ? -params.mean_benefit() : params.mean_benefit();
      w.pt.quantum_feasible = true;
    } else {
      const QuantumStrategy qs = optimize_quantum(params, p, cfg.quantum);
      w.pt.a_qu_lower = qs.payoff;
      w.pt.quantum_feasible = qs.feasible;
    }
    w.pt.throughput_norm = normalized_throughput(params, cfg.warmup, p);
  } catch (const std::exception& e) {
    w.pt.error = e.what();
    w.cl_upper.reset();
  }
  return w;
}

void mark_failed(FrontierPoint& pt, const std::string& why) {
  pt.error = why;
  pt.a_cl_sr_upper = kNaN;
  pt.dwq_cl = kNaN;
  pt.dwq_qu = kNaN;
  pt.advantage = false;
}

}  // namespace

Frontier compute_frontier(const RunConfig& cfg) {
  if (cfg.p_grid.empty()) throw ConfigError("p_grid is empty");
  validate(cfg);
  const SystemParams params = make_params(cfg.lambda, cfg.mu);
  const std::size_t n = cfg.p_grid.size();

  std::vector<RowWork> rows(n);
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < nn; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    rows[idx] = compute_row(cfg, params, cfg.p_grid[idx]);
  }

  // Envelope over the certified bounds plus the exact endpoints p = 0, 1.
  std::vector<std::pair<double, double>> pts;
  std::vector<std::size_t> row_of;
  const double ew = params.mean_benefit();
  if (cfg.p_grid.front() > 0.0) {
    pts.emplace_back(0.0, -ew);
    row_of.push_back(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].cl_upper) continue;
    pts.emplace_back(rows[i].pt.p, *rows[i].cl_upper);
    row_of.push_back(i);
  }
  if (cfg.p_grid.back() < 1.0) {
    pts.emplace_back(1.0, ew);
    row_of.push_back(n);
  }
  const std::vector<EnvelopePoint> env = concave_envelope(pts);
  for (std::size_t k = 0; k < env.size(); ++k) {
    if (row_of[k] < n) rows[row_of[k]].pt.a_cl_sr_upper = env[k].sr_value;
  }

  Frontier out;
  out.points.reserve(n);
  for (auto& r : rows) {
    FrontierPoint& pt = r.pt;
    if (pt.ok()) {
      const double tol = kPayoffTolerance + 3.0 * pt.a_star_se;
      try {
        pt.dwq_qu = delta_wq(pt.a_star, pt.a_qu_lower, tol);
      } catch (const std::exception& e) {
        mark_failed(pt, std::string("quantum payoff: ") + e.what());
      }
      if (pt.ok()) {
        try {
          pt.dwq_cl = delta_wq(pt.a_star, pt.a_cl_sr_upper, tol);
          pt.advantage =
              pt.certificate_valid && pt.quantum_feasible && pt.a_qu_lower > pt.a_cl_sr_upper;
        } catch (const std::exception& e) {
          // A sound but loose bound above the optimum says nothing about the gap.
          const double dwq_qu = pt.dwq_qu;
          const double sr = pt.a_cl_sr_upper;
          mark_failed(pt, std::string("classical bound too loose: ") + e.what());
          pt.dwq_qu = dwq_qu;
          pt.a_cl_sr_upper = sr;
        }
      }
    } else {
      mark_failed(pt, pt.error);
    }
    out.points.push_back(std::move(pt));
  }
  out.summary = summarize(out.points);
  return out;
}

FrontierSummary summarize(const std::vector<FrontierPoint>& points) {
  FrontierSummary s;
  s.n_points = points.size();
  bool have_gap = false;
  for (const auto& pt : points) {
    if (!pt.ok()) {
      ++s.n_failed;
      continue;
    }
    s.all_certificates_valid = s.all_certificates_valid && pt.certificate_valid;
    s.all_quantum_feasible = s.all_quantum_feasible && pt.quantum_feasible;
    if (pt.advantage) {
      if (!s.has_advantage) s.advantage_lo = pt.p;
      s.advantage_hi = pt.p;
      s.has_advantage = true;
    }
    const double gap = pt.dwq_cl - pt.dwq_qu;
    if (!have_gap || gap > s.max_gap) {
      s.max_gap = gap;
      s.argmax_p = pt.p;
      have_gap = true;
    }
  }
  return s;
}

}  // namespace qroute
