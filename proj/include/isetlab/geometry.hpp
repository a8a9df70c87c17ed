#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isetlab/iset.hpp"

namespace isetlab {

// dist(S,T) = |S xor T|; throws on width mismatch.
uint32_t hamming(const VertexSet& s, const VertexSet& t);

// f_sigma(tau) = |sigma ∩ tau| / n.
double overlap(const VertexSet& sigma, const VertexSet& tau);

struct ClusterReport {
  uint32_t k = 0;
  uint32_t gamma = 0;
  // (size, lexicographically smallest member), ordered by representative.
  std::vector<std::pair<uint64_t, VertexSet>> classes;
  // min Hamming distance between members of different classes; empty when
  // there are fewer than two classes.
  std::optional<uint32_t> min_interclass_distance;
  double max_class_fraction = 0.0;
  uint64_t total = 0;
  bool truncated = false;
};

// Connected components of the layer under the relation hamming <= gamma.
// The layer is gamma-connected iff there is a single class. Refuses
// truncated layers.
ClusterReport gamma_components(const Layer& layer, uint32_t gamma);

std::vector<ClusterReport> shattering_scan(const Layer& layer,
                                           const std::vector<uint32_t>& gamma_grid);

std::string cluster_report_to_json(const ClusterReport& r);

// |{tau : |tau| = |sigma|, |sigma ∩ tau| = round(x n), edges inside tau <=
// lam_edges}| by exhaustive scan over all |sigma|-subsets; meant for small n.
uint64_t near_layer_count(const Graph& g, const VertexSet& sigma, double x, uint64_t lam_edges);

struct ExpandWitness {
  VertexSet tau;
  double gamma_achieved = 0.0;
  double delta_achieved = 0.0;
};

enum class ExpandStatus { witness, proven_none, budget_exceeded };

struct ExpandResult {
  ExpandStatus status = ExpandStatus::proven_none;
  std::optional<ExpandWitness> witness;
  uint64_t nodes = 0;
};

// Searches for an independent tau with |tau| >= (1+gamma)|sigma| and
// |tau ∩ sigma| >= (1-delta)|sigma|, branch and bound, sigma kept first.
// proven_none means the search space was exhausted within budget.
ExpandResult is_expandable(const Graph& g, const VertexSet& sigma, double gamma, double delta,
                           uint64_t budget = 10'000'000);

// Vertices outside sigma with no neighbor in sigma; sigma must be independent.
VertexSet pure_vertices(const Graph& g, const VertexSet& sigma);

struct InducedSubgraph {
  Graph graph;
  std::vector<uint32_t> to_original;  // subgraph vertex -> original label
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& verts);
InducedSubgraph pure_subgraph(const Graph& g, const VertexSet& sigma);

enum class ExpandStrategy { greedy, exact };

// sigma ∪ I for an independent set I of the pure subgraph.
VertexSet expand_via_pure(const Graph& g, const VertexSet& sigma, ExpandStrategy strategy,
                          uint64_t seed = 0);

// Vertices outside sigma with at least `threshold` neighbors in sigma.
// threshold < 0 selects the default 0.1 * ln(max(d,1)), d = 2m/n.
VertexSet blocking_vertices(const Graph& g, const VertexSet& sigma, double threshold = -1.0);

uint32_t count_isolated(const Graph& g);

}  // namespace isetlab
