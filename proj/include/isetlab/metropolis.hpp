#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isetlab/iset.hpp"
#include "isetlab/logvalue.hpp"
#include "isetlab/rng.hpp"

namespace isetlab {

// One step of the hard-core Metropolis chain, lambda >= 1:
// choose v uniformly; v in I -> removed with probability 1/lambda, else stay;
// v outside I with no neighbor in I -> added; otherwise stay.
// Draw order per step: vertex index first, then (only on the removal branch)
// one uniform variate.
VertexSet mp_step(const Graph& g, const VertexSet& current, double lambda, Rng& rng);

struct ChainTrace {
  double lambda = 1.0;
  uint64_t seed = 0;
  uint64_t steps = 0;
  uint64_t stride = 1;
  std::vector<uint32_t> sizes;  // |I_t| at t = 0, stride, 2*stride, ...
  std::vector<std::pair<uint64_t, VertexSet>> snapshots;
  std::map<uint32_t, std::optional<uint64_t>> hit_times;  // target size -> first step
};

ChainTrace mp_run(const Graph& g, const VertexSet& start, double lambda, uint64_t steps,
                  uint64_t stride, uint64_t seed, const std::vector<uint32_t>& targets = {},
                  uint64_t snapshot_stride = 0);

struct StationaryTable {
  double lambda = 1.0;
  std::vector<LogValue> weights;  // R(k, lambda) = |S_k| lambda^k, k = 0..alpha
  LogValue z;
  double mu = 0.0;
  bool full_pi = false;  // true when Omega fit in the state budget
  std::vector<VertexSet> states;
  std::vector<double> pi;
  // counting work budget hit: weights stop at the last countable k and
  // Z/mu cover only that range
  bool truncated = false;
};

// Exact Z, mu, R(k,.) by layer counting; pi over all of Omega when |Omega|
// fits within state_budget.
StationaryTable stationary_exact(const Graph& g, double lambda, uint64_t state_budget = 20'000);

std::vector<LogValue> weight_profile(const Graph& g, double lambda,
                                     uint64_t max_nodes_per_layer = 100'000'000);

std::string stationary_to_json(const StationaryTable& t);

// Total variation distance between two distributions on the same support.
// Inputs must each sum to 1 within 1e-9.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// Exact single-step kernel over Omega (all independent sets, layer by layer
// in lex order) together with the stationary law pi(s) = lambda^{|s|}/Z.
struct ExactKernel {
  std::vector<VertexSet> states;
  // rows[i]: (j, p) transitions including the diagonal entry
  std::vector<std::vector<std::pair<uint32_t, double>>> rows;
  std::vector<double> pi;
};

ExactKernel exact_kernel(const Graph& g, double lambda, uint64_t state_budget = 20'000);

struct MixingResult {
  std::vector<VertexSet> states;              // Omega, layer by layer
  std::vector<std::optional<uint64_t>> tau;   // per-start settling time
  std::optional<uint64_t> t_mix;              // max over starts
  uint64_t horizon = 0;
};

// Exact kernel iteration from every start. tau_sigma = last t in [1,horizon]
// with Delta(t) >= 1/e; reported only when the curve has settled below the
// threshold by the horizon, otherwise nullopt (e.g. periodic lambda = 1
// chains never settle).
MixingResult mixing_time_exact(const Graph& g, double lambda, uint64_t state_budget = 20'000,
                               uint64_t horizon = 4'096);

// Delta_sigma(t) for t = 0..horizon from one start, same kernel.
std::vector<double> exact_tv_curve(const Graph& g, double lambda, const VertexSet& start,
                                   uint64_t horizon);

// First step at which overlap(sigma0, I_t) < overlap_floor, or nullopt.
std::optional<uint64_t> escape_experiment(const Graph& g, const VertexSet& sigma0, double lambda,
                                          double overlap_floor, uint64_t steps, uint64_t seed);

}  // namespace isetlab
