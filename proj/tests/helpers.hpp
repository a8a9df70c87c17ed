#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "isetlab/graph.hpp"
#include "isetlab/iset.hpp"

namespace testutil {

using isetlab::Graph;
using isetlab::VertexSet;

// Chi-square critical value at upper tail p ~ 1e-3 (Wilson-Hilferty, z = 3.0902).
inline double chi2_crit(double df) {
  double t = 2.0 / (9.0 * df);
  double c = 1.0 - t + 3.0902 * std::sqrt(t);
  return df * c * c * c;
}

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / double(xs.size());
}

inline double stddev(const std::vector<double>& xs) {
  double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / double(xs.size() - 1));
}

// Adjacency masks for n <= 64; drives the brute-force oracles below.
inline std::vector<uint64_t> adjacency_masks(const Graph& g) {
  std::vector<uint64_t> adj(g.num_vertices(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1ULL << v;
    adj[v] |= 1ULL << u;
  }
  return adj;
}

inline bool mask_independent(const std::vector<uint64_t>& adj, uint64_t mask) {
  uint64_t m = mask;
  while (m) {
    uint32_t v = uint32_t(__builtin_ctzll(m));
    if (adj[v] & mask) return false;
    m &= m - 1;
  }
  return true;
}

// All independent sets of size k as bit masks, by scanning every subset mask
// of the k-combination walk; n <= 30 or so.
inline std::vector<uint64_t> brute_layer(const Graph& g, uint32_t k) {
  auto adj = adjacency_masks(g);
  const uint32_t n = g.num_vertices();
  std::vector<uint64_t> out;
  uint64_t mask = (k == 0) ? 0 : (1ULL << k) - 1;
  if (k > n) return out;
  if (k == 0) return {0};
  while (mask < (1ULL << n)) {
    if (mask_independent(adj, mask)) out.push_back(mask);
    // next k-combination (Gosper)
    uint64_t c = mask & -mask, r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
    if (r == 0) break;
  }
  return out;
}

inline uint32_t brute_alpha(const Graph& g) {
  auto adj = adjacency_masks(g);
  const uint32_t n = g.num_vertices();
  uint32_t best = 0;
  for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    uint32_t pc = uint32_t(__builtin_popcountll(mask));
    if (pc > best && mask_independent(adj, mask)) best = pc;
  }
  return best;
}

inline VertexSet from_mask(uint32_t n, uint64_t mask) {
  VertexSet s(n);
  while (mask) {
    s.set(uint32_t(__builtin_ctzll(mask)));
    mask &= mask - 1;
  }
  return s;
}

inline uint64_t to_mask(const VertexSet& s) {
  uint64_t m = 0;
  s.for_each([&](uint32_t v) { m |= 1ULL << v; });
  return m;
}

inline Graph path_graph(uint32_t n) {
  Graph g(n);
  for (uint32_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph complete_graph(uint32_t n) {
  Graph g(n);
  for (uint32_t u = 0; u < n; ++u)
    for (uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

}  // namespace testutil
