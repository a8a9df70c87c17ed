#include "isetlab/harness.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <stdexcept>
#include <thread>

#include "isetlab/analytic.hpp"
#include "isetlab/geometry.hpp"
#include "isetlab/graph.hpp"
#include "isetlab/iset.hpp"
#include "isetlab/metropolis.hpp"
#include "isetlab/rng.hpp"

namespace isetlab {

nlohmann::ordered_json ExperimentRecord::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["op"] = op;
  j["params"] = params;
  j["metrics"] = metrics;
  j["version"] = version;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j;
}

SweepSpec SweepSpec::from_json(const nlohmann::ordered_json& j) {
  SweepSpec spec;
  spec.op = j.at("op").get<std::string>();
  spec.base_seed = j.value("base_seed", uint64_t(0));
  spec.seeds = j.value("seeds", uint64_t(1));
  spec.timestamp = j.value("timestamp", std::string());
  if (j.contains("grids")) {
    for (auto it = j["grids"].begin(); it != j["grids"].end(); ++it) {
      if (!it.value().is_array()) throw std::invalid_argument("sweep grid must be an array");
      spec.grids.emplace_back(it.key(), it.value());
    }
    std::sort(spec.grids.begin(), spec.grids.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return spec;
}

std::string current_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

Graph graph_from_params(const nlohmann::ordered_json& p, uint64_t seed) {
  std::string model = p.value("model", "gnm");
  uint32_t n = p.at("n").get<uint32_t>();
  if (model == "gnm") return gen_gnm(n, p.at("m").get<uint64_t>(), seed);
  if (model == "gnm_star") return gen_gnm_star(n, p.at("m").get<uint64_t>(), seed);
  if (model == "gnp") return gen_gnp(n, p.at("p").get<double>(), seed);
  throw std::invalid_argument("unknown graph model: " + model);
}

}  // namespace

nlohmann::ordered_json run_experiment_op(const std::string& op,
                                         const nlohmann::ordered_json& params, uint64_t seed) {
  nlohmann::ordered_json metrics;
  if (op == "greedy") {
    Graph g = graph_from_params(params, derive_seed(seed, 1));
    VertexSet s = greedy_mis(g, derive_seed(seed, 2));
    metrics["size"] = s.size();
    metrics["edges"] = g.num_edges();
  } else if (op == "count_layer") {
    Graph g = graph_from_params(params, derive_seed(seed, 1));
    metrics["count"] = u128_to_string(count_layer(g, params.at("k").get<uint32_t>()));
  } else if (op == "isolated") {
    Graph g = graph_from_params(params, derive_seed(seed, 1));
    metrics["isolated"] = count_isolated(g);
  } else if (op == "escape") {
    // fixed planted instance from graph_seed; the cell seed drives the chain
    uint32_t n = params.at("n").get<uint32_t>();
    uint64_t m = params.at("m").get<uint64_t>();
    uint32_t k = params.at("k").get<uint32_t>();
    uint64_t graph_seed = params.at("graph_seed").get<uint64_t>();
    PlantedPair planted = gen_planted(n, m, k, graph_seed);
    auto esc = escape_experiment(planted.graph, planted.sigma, params.at("lambda").get<double>(),
                                 params.at("overlap_floor").get<double>(),
                                 params.at("steps").get<uint64_t>(), seed);
    if (esc)
      metrics["escape_step"] = *esc;
    else
      metrics["escape_step"] = nullptr;
  } else if (op == "expected_count_star") {
    LogValue v = expected_count_star(params.at("n").get<uint64_t>(), params.at("m").get<uint64_t>(),
                                     params.at("k").get<uint64_t>());
    metrics["sign"] = v.sign;
    metrics["log_mag"] = v.log_mag;
  } else if (op == "expected_count_gnm") {
    LogValue v = expected_count_gnm(params.at("n").get<uint64_t>(), params.at("m").get<uint64_t>(),
                                    params.at("k").get<uint64_t>());
    metrics["sign"] = v.sign;
    metrics["log_mag"] = v.log_mag;
  } else {
    throw std::invalid_argument("unknown sweep op: " + op);
  }
  return metrics;
}

std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, unsigned workers) {
  uint64_t cells = spec.seeds;
  for (const auto& [name, values] : spec.grids) cells *= values.size();
  std::vector<ExperimentRecord> records(cells);

  auto fill_cell = [&](uint64_t idx) {
    ExperimentRecord& rec = records[idx];
    rec.id = "cell-" + std::to_string(idx);
    rec.op = spec.op;
    rec.timestamp = spec.timestamp;
    // decode idx: seed index is innermost, then grids right to left
    uint64_t rest = idx;
    uint64_t seed_idx = rest % spec.seeds;
    rest /= spec.seeds;
    nlohmann::ordered_json params;
    for (size_t gi = spec.grids.size(); gi-- > 0;) {
      const auto& [name, values] = spec.grids[gi];
      params[name] = values[rest % values.size()];
      rest /= values.size();
    }
    // re-emit in declaration (sorted) order
    nlohmann::ordered_json sorted_params;
    for (const auto& [name, values] : spec.grids) sorted_params[name] = params[name];
    uint64_t cell_seed = derive_seed(spec.base_seed, idx);
    // every record names its graph model
    if (!sorted_params.contains("model")) {
      if (spec.op == "escape")
        sorted_params["model"] = "planted";
      else if (spec.op == "greedy" || spec.op == "count_layer" || spec.op == "isolated")
        sorted_params["model"] = "gnm";
    }
    sorted_params["seed_index"] = seed_idx;
    sorted_params["seed"] = cell_seed;
    rec.params = sorted_params;
    try {
      rec.metrics = run_experiment_op(spec.op, sorted_params, cell_seed);
    } catch (const std::exception& e) {
      rec.metrics = nlohmann::ordered_json{{"error", e.what()}};
    }
  };

  if (workers <= 1) {
    for (uint64_t i = 0; i < cells; ++i) fill_cell(i);
  } else {
    std::atomic<uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (uint64_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1)) fill_cell(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return records;
}

}  // namespace isetlab
