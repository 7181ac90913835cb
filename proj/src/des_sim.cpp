#include "qroute/des_sim.hpp"

#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <queue>
#include <stdexcept>

#include "qroute/quantum_opt.hpp"
#include "qroute/rng.hpp"

namespace qroute {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::always_split: return "always_split";
    case PolicyKind::always_bunch: return "always_bunch";
    case PolicyKind::bernoulli: return "bernoulli";
    case PolicyKind::oracle_threshold: return "oracle_threshold";
    case PolicyKind::classical_thresholds: return "classical_thresholds";
    case PolicyKind::quantum: return "quantum";
  }
  return "unknown";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  for (auto k : {PolicyKind::always_split, PolicyKind::always_bunch, PolicyKind::bernoulli,
                 PolicyKind::oracle_threshold, PolicyKind::classical_thresholds,
                 PolicyKind::quantum}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown policy kind '" + name + "'");
}

PolicySpec PolicySpec::always_split(bool flip) {
  PolicySpec s;
  s.kind = PolicyKind::always_split;
  s.load_balance_flip = flip;
  return s;
}

PolicySpec PolicySpec::always_bunch(bool flip) {
  PolicySpec s;
  s.kind = PolicyKind::always_bunch;
  s.load_balance_flip = flip;
  return s;
}

PolicySpec PolicySpec::bernoulli(double p, bool flip) {
  PolicySpec s;
  s.kind = PolicyKind::bernoulli;
  s.p = p;
  s.load_balance_flip = flip;
  return s;
}

PolicySpec PolicySpec::oracle_threshold(double tau, bool flip) {
  PolicySpec s;
  s.kind = PolicyKind::oracle_threshold;
  s.tau = tau;
  s.load_balance_flip = flip;
  return s;
}

PolicySpec PolicySpec::classical_thresholds(double theta_a, double theta_b, bool flip) {
  PolicySpec s;
  s.kind = PolicyKind::classical_thresholds;
  s.theta_a = theta_a;
  s.theta_b = theta_b;
  s.load_balance_flip = flip;
  return s;
}

PolicySpec PolicySpec::quantum(std::vector<double> a, std::vector<double> b, bool flip) {
  PolicySpec s;
  s.kind = PolicyKind::quantum;
  s.coeffs_a = std::move(a);
  s.coeffs_b = std::move(b);
  s.load_balance_flip = flip;
  return s;
}

void validate(const PolicySpec& policy) {
  switch (policy.kind) {
    case PolicyKind::always_split:
    case PolicyKind::always_bunch:
      return;
    case PolicyKind::bernoulli:
      if (!(policy.p >= 0.0 && policy.p <= 1.0)) {
        throw std::invalid_argument("bernoulli policy needs p in [0, 1]");
      }
      return;
    case PolicyKind::oracle_threshold:
      if (!(policy.tau >= 0.0)) throw std::invalid_argument("threshold tau must be >= 0");
      return;
    case PolicyKind::classical_thresholds:
      if (!(policy.theta_a >= 0.0 && policy.theta_b >= 0.0)) {
        throw std::invalid_argument("classical thresholds must be >= 0");
      }
      return;
    case PolicyKind::quantum:
      if (policy.coeffs_a.empty() || policy.coeffs_a.size() != policy.coeffs_b.size()) {
        throw std::invalid_argument("quantum policy needs two equal-length coefficient vectors");
      }
      for (double c : policy.coeffs_a) {
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite quantum coefficient");
      }
      for (double c : policy.coeffs_b) {
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite quantum coefficient");
      }
      return;
  }
}

namespace {

std::pair<int, int> decide(const SystemParams& params, const PolicySpec& pol, double x1,
                           double x2, Rng& rng) {
  int oa = 1;
  int ob = 1;
  switch (pol.kind) {
    case PolicyKind::always_split:
      ob = -1;
      break;
    case PolicyKind::always_bunch:
      break;
    case PolicyKind::bernoulli:
      if (rng.bernoulli(pol.p)) ob = -1;
      break;
    case PolicyKind::oracle_threshold:
      if (splitting_benefit(params, x1, x2) >= pol.tau) ob = -1;
      break;
    case PolicyKind::classical_thresholds:
      oa = x1 < pol.theta_a ? 1 : -1;
      ob = x2 < pol.theta_b ? 1 : -1;
      break;
    case PolicyKind::quantum: {
      const auto o = sample_correlated_outcomes(polynomial_angle(pol.coeffs_a, x1),
                                                polynomial_angle(pol.coeffs_b, x2), rng);
      oa = o.first;
      ob = o.second;
      break;
    }
  }
  if (pol.load_balance_flip && rng.sign() < 0) {
    oa = -oa;
    ob = -ob;
  }
  return {oa, ob};
}

struct Customer {
  double arrival;
  double service;
  std::size_t pair;
};

struct Server {
  std::deque<Customer> queue;
  bool busy = false;
  double idle_start = 0.0;
  double busy_start = 0.0;
  std::size_t busy_pair = 0;
};

struct Event {
  double time;
  std::uint64_t seq;
  int server;  ///< departure from this server
  bool operator>(const Event& o) const {
    return time != o.time ? time > o.time : seq > o.seq;
  }
};

// Per-batch accumulators; ratio estimates are formed per batch.
struct Batch {
  double wq_sum = 0.0;
  double customers = 0.0;
  double splits = 0.0;
  double pairs = 0.0;
  std::array<double, 2> work{0.0, 0.0};
  double output = 0.0;
  double idle_sum = 0.0;
  double idle_n = 0.0;
  double busy_sum = 0.0;
  double busy_n = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

template <class F>
MeanSe batch_means(const std::vector<Batch>& batches, F&& ratio) {
  std::vector<double> v;
  v.reserve(batches.size());
  for (const auto& b : batches) {
    const double r = ratio(b);
    if (std::isfinite(r)) v.push_back(r);
  }
  MeanSe out;
  if (v.empty()) return out;
  double s = 0.0;
  for (double x : v) s += x;
  const double nb = static_cast<double>(v.size());
  const double m = s / nb;
  out.mean = m;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  out.se = v.size() > 1 ? std::sqrt(ss / (nb - 1.0) / nb) : 0.0;
  return out;
}

}  // namespace

SimStats simulate(const SystemParams& params, const PolicySpec& policy, const WarmupModel& wm,
                  std::size_t n_pairs, std::size_t warmup_discard, std::uint64_t seed) {
  if (!(params.rho < 1.0) || !(params.lambda > 0.0) || !(params.mu > 0.0)) {
    throw std::invalid_argument("simulation needs a stable system");
  }
  validate(policy);
  validate(wm);
  if (n_pairs < 10 * warmup_discard) {
    throw std::invalid_argument("n_pairs must be at least 10 times the warm-up discard");
  }
  if (n_pairs - warmup_discard < 2 * kSimBatches) {
    throw std::invalid_argument("too few observed pairs for batch means");
  }

  const CounterStream arrivals(derive_key(seed, "arrivals"));
  const CounterStream services(derive_key(seed, "services"));
  const CounterStream order(derive_key(seed, "order"));
  const std::uint64_t policy_key = derive_key(seed, "policy");

  const std::size_t observed = n_pairs - warmup_discard;
  std::vector<Batch> batches(kSimBatches);
  auto batch_of = [&](std::size_t pair) -> Batch* {
    if (pair < warmup_discard) return nullptr;
    return &batches[(pair - warmup_discard) * kSimBatches / observed];
  };

  std::array<Server, 2> servers;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  std::uint64_t seq = 0;

  auto start_service = [&](int s, double now) {
    Server& sv = servers[static_cast<std::size_t>(s)];
    const Customer c = sv.queue.front();
    sv.queue.pop_front();
    if (Batch* b = batch_of(c.pair)) {
      b->wq_sum += now - c.arrival;
      b->customers += 1.0;
    }
    events.push({now + c.service, seq++, s});
  };

  auto depart = [&](int s, double now) {
    Server& sv = servers[static_cast<std::size_t>(s)];
    if (!sv.queue.empty()) {
      start_service(s, now);
      return;
    }
    sv.busy = false;
    sv.idle_start = now;
    if (Batch* b = batch_of(sv.busy_pair)) {
      b->busy_sum += now - sv.busy_start;
      b->busy_n += 1.0;
    }
  };

  auto drain_until = [&](double t) {
    while (!events.empty() && events.top().time <= t) {
      const Event e = events.top();
      events.pop();
      depart(e.server, e.time);
    }
  };

  double now = 0.0;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    now += arrivals.exponential(k, params.lambda);
    drain_until(now);

    const double x1 = services.exponential(2 * k, params.mu);
    const double x2 = services.exponential(2 * k + 1, params.mu);
    Rng rng(derive_key(policy_key, k));
    const auto [oa, ob] = decide(params, policy, x1, x2, rng);
    const int s1 = oa > 0 ? 0 : 1;
    const int s2 = ob > 0 ? 0 : 1;

    Batch* b = batch_of(k);
    if (b != nullptr) {
      if (b->pairs == 0.0) b->t_begin = now;
      b->pairs += 1.0;
      b->splits += s1 != s2 ? 1.0 : 0.0;
      b->work[static_cast<std::size_t>(s1)] += x1;
      b->work[static_cast<std::size_t>(s2)] += x2;
    }

    std::array<Customer, 2> cs{Customer{now, x1, k}, Customer{now, x2, k}};
    std::array<int, 2> dest{s1, s2};
    if (s1 == s2 && (order.bits(k) >> 63) != 0U) {
      std::swap(cs[0], cs[1]);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      const int s = dest[i];
      Server& sv = servers[static_cast<std::size_t>(s)];
      sv.queue.push_back(cs[i]);
      if (!sv.busy) {
        if (b != nullptr) {
          b->output += cumulative_output(wm, now - sv.idle_start);
          b->idle_sum += now - sv.idle_start;
          b->idle_n += 1.0;
        }
        sv.busy = true;
        sv.busy_start = now;
        sv.busy_pair = k;
        start_service(s, now);
      }
    }
  }
  const double t_stop = now + arrivals.exponential(n_pairs, params.lambda);
  drain_until(std::numeric_limits<double>::infinity());

  for (std::size_t i = 0; i < kSimBatches; ++i) {
    batches[i].t_end = i + 1 < kSimBatches ? batches[i + 1].t_begin : t_stop;
  }

  SimStats st;
  st.n_pairs = n_pairs;
  st.n_observed = observed;
  st.observed_time = t_stop - batches.front().t_begin;

  double wq = 0.0, cust = 0.0, splits = 0.0, idle = 0.0, idle_n = 0.0, busy = 0.0, busy_n = 0.0;
  double output = 0.0;
  std::array<double, 2> work{0.0, 0.0};
  for (const auto& b : batches) {
    wq += b.wq_sum;
    cust += b.customers;
    splits += b.splits;
    idle += b.idle_sum;
    idle_n += b.idle_n;
    busy += b.busy_sum;
    busy_n += b.busy_n;
    output += b.output;
    work[0] += b.work[0];
    work[1] += b.work[1];
  }
  const double obs = static_cast<double>(observed);
  st.mean_wq = wq / cust;
  st.split_fraction = splits / obs;
  st.per_server_load = {work[0] / st.observed_time, work[1] / st.observed_time};
  st.baseline_throughput = output / (2.0 * st.observed_time);
  st.mean_idle = idle_n > 0.0 ? idle / idle_n : 0.0;
  st.mean_busy = busy_n > 0.0 ? busy / busy_n : 0.0;

  st.wq_se = batch_means(batches, [](const Batch& b) { return b.wq_sum / b.customers; }).se;
  st.split_se = batch_means(batches, [](const Batch& b) { return b.splits / b.pairs; }).se;
  for (std::size_t s = 0; s < 2; ++s) {
    st.load_se[s] =
        batch_means(batches, [s](const Batch& b) { return b.work[s] / (b.t_end - b.t_begin); })
            .se;
  }
  st.throughput_se =
      batch_means(batches, [](const Batch& b) { return b.output / (2.0 * (b.t_end - b.t_begin)); })
          .se;
  st.idle_se = batch_means(batches, [](const Batch& b) { return b.idle_sum / b.idle_n; }).se;
  st.busy_se = batch_means(batches, [](const Batch& b) { return b.busy_sum / b.busy_n; }).se;
  return st;
}

SimStats simulate(const SystemParams& params, const PolicySpec& policy, const WarmupModel& wm,
                  std::size_t n_pairs, std::uint64_t seed) {
  return simulate(params, policy, wm, n_pairs, n_pairs / 10, seed);
}

std::vector<SimStats> compare_policies(const SystemParams& params, const WarmupModel& wm,
                                       const std::vector<PolicySpec>& policies,
                                       std::size_t n_pairs, std::uint64_t seed,
                                       bool common_random_numbers) {
  for (const auto& p : policies) validate(p);
  std::vector<SimStats> out(policies.size());
  std::vector<std::exception_ptr> errors(policies.size());
  const auto n = static_cast<std::ptrdiff_t>(policies.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const std::uint64_t s = common_random_numbers ? seed : derive_key(seed, idx);
      out[idx] = simulate(params, policies[idx], wm, n_pairs, s);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace qroute
