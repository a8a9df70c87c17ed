#include "isetlab/metropolis.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace isetlab {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("metropolis: lambda must be >= 1");
}

}  // namespace

VertexSet mp_step(const Graph& g, const VertexSet& current, double lambda, Rng& rng) {
  check_lambda(lambda);
  const uint32_t n = g.num_vertices();
  uint32_t v = uint32_t(rng.below(n));
  VertexSet next = current;
  if (current.test(v)) {
    if (rng.next_double() < 1.0 / lambda) next.reset(v);
  } else if (!g.neighbors(v).intersects(current)) {
    next.set(v);
  }
  return next;
}

ChainTrace mp_run(const Graph& g, const VertexSet& start, double lambda, uint64_t steps,
                  uint64_t stride, uint64_t seed, const std::vector<uint32_t>& targets,
                  uint64_t snapshot_stride) {
  check_lambda(lambda);
  if (stride == 0) throw std::invalid_argument("mp_run: stride must be positive");
  if (!is_independent(g, start)) throw std::invalid_argument("mp_run: start not independent");

  ChainTrace trace;
  trace.lambda = lambda;
  trace.seed = seed;
  trace.steps = steps;
  trace.stride = stride;
  for (uint32_t t : targets) trace.hit_times[t] = std::nullopt;

  Rng rng(seed);
  const uint32_t n = g.num_vertices();
  VertexSet cur = start;
  auto observe = [&](uint64_t t) {
    auto it = trace.hit_times.find(cur.size());
    if (it != trace.hit_times.end() && !it->second) it->second = t;
  };
  trace.sizes.push_back(cur.size());
  observe(0);
  if (snapshot_stride) trace.snapshots.emplace_back(0, cur);

  for (uint64_t t = 1; t <= steps; ++t) {
    uint32_t v = uint32_t(rng.below(n));
    if (cur.test(v)) {
      if (rng.next_double() < 1.0 / lambda) cur.reset(v);
    } else if (!g.neighbors(v).intersects(cur)) {
      cur.set(v);
    }
    observe(t);
    if (t % stride == 0) trace.sizes.push_back(cur.size());
    if (snapshot_stride && t % snapshot_stride == 0) trace.snapshots.emplace_back(t, cur);
  }
  return trace;
}

namespace {

// Omega = all independent sets, layer by layer in lex order; stops early if
// the budget is exceeded (returns empty and sets ok = false).
std::vector<VertexSet> enumerate_states(const Graph& g, uint64_t budget, bool& ok) {
  std::vector<VertexSet> states;
  ok = true;
  for (uint32_t k = 0; k <= g.num_vertices(); ++k) {
    Layer layer = enumerate_layer(g, k, budget + 1);
    if (layer.members.empty()) break;
    if (states.size() + layer.members.size() > budget) {
      ok = false;
      return {};
    }
    for (auto& s : layer.members) states.push_back(std::move(s));
  }
  return states;
}

ExactKernel build_kernel(const Graph& g, double lambda, uint64_t budget) {
  bool ok = true;
  ExactKernel kern;
  kern.states = enumerate_states(g, budget, ok);
  if (!ok) throw std::runtime_error("metropolis: state space exceeds the budget");
  const uint32_t n = g.num_vertices();

  std::unordered_map<VertexSet, uint32_t, VertexSetHash> index;
  index.reserve(kern.states.size());
  for (uint32_t i = 0; i < kern.states.size(); ++i) index[kern.states[i]] = i;

  kern.rows.resize(kern.states.size());
  const double p_vertex = 1.0 / double(n);
  for (uint32_t i = 0; i < kern.states.size(); ++i) {
    const VertexSet& s = kern.states[i];
    double stay = 0.0;
    for (uint32_t v = 0; v < n; ++v) {
      if (s.test(v)) {
        VertexSet t = s;
        t.reset(v);
        kern.rows[i].emplace_back(index.at(t), p_vertex / lambda);
        stay += p_vertex * (1.0 - 1.0 / lambda);
      } else if (!g.neighbors(v).intersects(s)) {
        VertexSet t = s;
        t.set(v);
        kern.rows[i].emplace_back(index.at(t), p_vertex);
      } else {
        stay += p_vertex;
      }
    }
    kern.rows[i].emplace_back(i, stay);
  }

  // pi(s) = lambda^{|s|} / Z
  double zsum = 0.0;
  kern.pi.resize(kern.states.size());
  for (uint32_t i = 0; i < kern.states.size(); ++i) {
    kern.pi[i] = std::pow(lambda, double(kern.states[i].size()));
    zsum += kern.pi[i];
  }
  for (auto& x : kern.pi) x /= zsum;
  return kern;
}

std::vector<double> tv_curve_from(const ExactKernel& kern, uint32_t start, uint64_t horizon) {
  const size_t n = kern.states.size();
  std::vector<double> p(n, 0.0), q(n);
  p[start] = 1.0;
  std::vector<double> curve;
  curve.reserve(horizon + 1);
  auto tv = [&](const std::vector<double>& d) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += std::fabs(d[i] - kern.pi[i]);
    return acc / 2.0;
  };
  curve.push_back(tv(p));
  for (uint64_t t = 1; t <= horizon; ++t) {
    std::fill(q.begin(), q.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
      if (p[i] == 0.0) continue;
      for (auto [j, pr] : kern.rows[i]) q[j] += p[i] * pr;
    }
    std::swap(p, q);
    curve.push_back(tv(p));
  }
  return curve;
}

constexpr double kMixThreshold = 0.36787944117144233;  // e^{-1}

std::optional<uint64_t> settle_time(const std::vector<double>& curve) {
  uint64_t horizon = curve.size() - 1;
  if (curve[horizon] >= kMixThreshold) return std::nullopt;
  uint64_t last_above = 0;
  for (uint64_t t = 1; t <= horizon; ++t)
    if (curve[t] >= kMixThreshold) last_above = t;
  return last_above;
}

}  // namespace

ExactKernel exact_kernel(const Graph& g, double lambda, uint64_t state_budget) {
  check_lambda(lambda);
  return build_kernel(g, lambda, state_budget);
}

StationaryTable stationary_exact(const Graph& g, double lambda, uint64_t state_budget) {
  check_lambda(lambda);
  StationaryTable table;
  table.lambda = lambda;

  // per-layer counting gets a work budget tied to the state budget, so the
  // call stays cheap on graphs whose layers are astronomically large
  const uint64_t count_nodes = 64 * state_budget + 4096;
  u128 total = 0;
  for (uint32_t k = 0; k <= g.num_vertices(); ++k) {
    auto c = count_layer_bounded(g, k, count_nodes);
    if (!c) {
      table.truncated = true;  // weights cover only k below this layer
      break;
    }
    if (*c == 0) break;
    total += *c;
    double logc = std::log(double(*c));  // exact for desk-scale layer counts
    table.weights.push_back(LogValue::from_log(logc + double(k) * std::log(lambda)));
  }
  table.z = LogValue::zero();
  for (const auto& w : table.weights) table.z = table.z + w;
  double mu = 0.0;
  for (uint32_t k = 0; k < table.weights.size(); ++k)
    mu += double(k) * std::exp(table.weights[k].log_mag - table.z.log_mag);
  table.mu = mu;  // partial when truncated

  if (!table.truncated && total <= u128(state_budget)) {
    bool ok = true;
    table.states = enumerate_states(g, state_budget, ok);
    table.pi.resize(table.states.size());
    double zsum = 0.0;
    for (size_t i = 0; i < table.states.size(); ++i) {
      table.pi[i] = std::pow(lambda, double(table.states[i].size()));
      zsum += table.pi[i];
    }
    for (auto& x : table.pi) x /= zsum;
    table.full_pi = true;
  }
  return table;
}

std::vector<LogValue> weight_profile(const Graph& g, double lambda, uint64_t max_nodes_per_layer) {
  check_lambda(lambda);
  std::vector<LogValue> out;
  for (uint32_t k = 0; k <= g.num_vertices(); ++k) {
    auto c = count_layer_bounded(g, k, max_nodes_per_layer);
    if (!c) throw std::runtime_error("weight_profile: layer counting exceeded the node budget");
    if (*c == 0) break;
    out.push_back(LogValue::from_log(std::log(double(*c)) + double(k) * std::log(lambda)));
  }
  return out;
}

std::string stationary_to_json(const StationaryTable& t) {
  nlohmann::ordered_json j;
  j["lambda"] = t.lambda;
  j["z_log"] = t.z.log_mag;
  j["mu"] = t.mu;
  j["truncated"] = t.truncated;
  auto weights = nlohmann::ordered_json::array();
  for (uint32_t k = 0; k < t.weights.size(); ++k) {
    nlohmann::ordered_json w;
    w["k"] = k;
    w["log_weight"] = t.weights[k].log_mag;
    weights.push_back(std::move(w));
  }
  j["weights"] = std::move(weights);
  return j.dump();
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: support size mismatch");
  double sp = 0.0, sq = 0.0, acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    sp += p[i];
    sq += q[i];
    acc += std::fabs(p[i] - q[i]);
  }
  if (std::fabs(sp - 1.0) > 1e-9 || std::fabs(sq - 1.0) > 1e-9)
    throw std::invalid_argument("tv_distance: inputs must be normalized");
  return acc / 2.0;
}

MixingResult mixing_time_exact(const Graph& g, double lambda, uint64_t state_budget,
                               uint64_t horizon) {
  check_lambda(lambda);
  ExactKernel kern = build_kernel(g, lambda, state_budget);
  MixingResult out;
  out.horizon = horizon;
  out.states = kern.states;
  out.tau.reserve(kern.states.size());
  bool all = true;
  uint64_t worst = 0;
  for (uint32_t i = 0; i < kern.states.size(); ++i) {
    auto t = settle_time(tv_curve_from(kern, i, horizon));
    if (t)
      worst = std::max(worst, *t);
    else
      all = false;
    out.tau.push_back(t);
  }
  if (all) out.t_mix = worst;
  return out;
}

std::vector<double> exact_tv_curve(const Graph& g, double lambda, const VertexSet& start,
                                   uint64_t horizon) {
  check_lambda(lambda);
  ExactKernel kern = build_kernel(g, lambda, 1'000'000);
  for (uint32_t i = 0; i < kern.states.size(); ++i) {
    if (kern.states[i] == start) return tv_curve_from(kern, i, horizon);
  }
  throw std::invalid_argument("exact_tv_curve: start is not an independent set of g");
}

std::optional<uint64_t> escape_experiment(const Graph& g, const VertexSet& sigma0, double lambda,
                                          double overlap_floor, uint64_t steps, uint64_t seed) {
  check_lambda(lambda);
  if (!is_independent(g, sigma0)) throw std::invalid_argument("escape_experiment: sigma0 not independent");
  const uint32_t n = g.num_vertices();
  Rng rng(seed);
  VertexSet cur = sigma0;
  uint32_t inter = sigma0.size();
  for (uint64_t t = 1; t <= steps; ++t) {
    uint32_t v = uint32_t(rng.below(n));
    if (cur.test(v)) {
      if (rng.next_double() < 1.0 / lambda) {
        cur.reset(v);
        if (sigma0.test(v)) --inter;
      }
    } else if (!g.neighbors(v).intersects(cur)) {
      cur.set(v);
      if (sigma0.test(v)) ++inter;
    }
    if (double(inter) / double(n) < overlap_floor) return t;
  }
  return std::nullopt;
}

}  // namespace isetlab
