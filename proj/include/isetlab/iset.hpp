#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isetlab/graph.hpp"

namespace isetlab {

using u128 = unsigned __int128;

std::string u128_to_string(u128 x);

bool is_independent(const Graph& g, const VertexSet& s);

// Independent and no vertex outside has zero selected neighbors.
bool is_maximal_independent(const Graph& g, const VertexSet& s);

// Inclusion-maximal independent set from a seeded uniformly random vertex
// scan order.
VertexSet greedy_mis(const Graph& g, uint64_t seed);

struct MaxIsResult {
  VertexSet set;
  bool exact = true;  // false: node budget hit, |set| is only a lower bound
  uint64_t nodes = 0;
};

// Maximum independent set by branch and bound (highest-degree pivot,
// greedy clique-cover upper bound).
MaxIsResult max_is_exact(const Graph& g, uint64_t node_budget = 50'000'000);

// The layer S_k(G): all independent sets of size exactly k.
struct Layer {
  uint32_t k = 0;
  std::vector<VertexSet> members;  // distinct, ascending-sequence lex order
  bool truncated = false;          // true iff members.size() == cap and more exist
  uint64_t cap = 0;
};

Layer enumerate_layer(const Graph& g, uint32_t k, uint64_t cap = 10'000'000);

// Exact |S_k(G)|; counting only, no member storage and no cap.
u128 count_layer(const Graph& g, uint32_t k);

// As count_layer, but gives up (nullopt) once the search tree exceeds
// max_nodes; lets callers probe layers that may be astronomically large.
std::optional<u128> count_layer_bounded(const Graph& g, uint32_t k, uint64_t max_nodes);

// Uniform draw from S_k(G); nullopt when the layer is empty. Throws if the
// layer cannot be enumerated exactly within cap.
std::optional<VertexSet> sample_uk(const Graph& g, uint32_t k, uint64_t seed,
                                   uint64_t cap = 10'000'000);

}  // namespace isetlab
