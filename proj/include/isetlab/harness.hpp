#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace isetlab {

inline constexpr const char* kVersion = "isetlab 0.1.0";
inline constexpr const char* kRngVersion = "isetlab-rng-v1";

// Self-contained record: the op is re-runnable from params alone (seeds are
// always present for stochastic ops).
struct ExperimentRecord {
  std::string id;
  std::string op;
  nlohmann::ordered_json params;
  nlohmann::ordered_json metrics;
  std::string version = kVersion;
  std::string timestamp;  // may be empty for deterministic outputs

  nlohmann::ordered_json to_json() const;
};

// Cross-product sweep. Grid parameters are JSON arrays keyed by name; cells
// are enumerated with parameter names in sorted order, seed index innermost.
// Cell seeds derive from (base_seed, cell index) only, so results do not
// depend on scheduling.
struct SweepSpec {
  std::string op;
  std::vector<std::pair<std::string, nlohmann::ordered_json>> grids;  // name -> array
  uint64_t base_seed = 0;
  uint64_t seeds = 1;  // seed indices 0..seeds-1
  std::string timestamp;

  static SweepSpec from_json(const nlohmann::ordered_json& j);
};

// Runs every cell (failures are recorded in the cell's metrics and the sweep
// continues); records come back in cell-index order regardless of workers.
std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, unsigned workers);

// Executes one cell of `op` with resolved params and the cell seed.
nlohmann::ordered_json run_experiment_op(const std::string& op,
                                         const nlohmann::ordered_json& params, uint64_t seed);

std::string current_timestamp();

}  // namespace isetlab
