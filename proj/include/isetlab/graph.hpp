#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "isetlab/vertex_set.hpp"

namespace isetlab {

// Simple undirected graph on vertices 0..n-1 with adjacency bit rows.
// No self-loops; adjacency is kept symmetric. Treat as immutable once a
// generator or loader has returned it; then it is safe to share across
// threads read-only.
class Graph {
 public:
  Graph() = default;
  explicit Graph(uint32_t n) : n_(n), adj_(n, VertexSet(n)) {}

  uint32_t num_vertices() const { return n_; }
  uint64_t num_edges() const { return m_; }

  bool has_edge(uint32_t u, uint32_t v) const { return adj_[u].test(v); }

  // Returns false if the edge is already present.
  bool add_edge(uint32_t u, uint32_t v) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (adj_[u].test(v)) return false;
    adj_[u].set(v);
    adj_[v].set(u);
    ++m_;
    return true;
  }

  const VertexSet& neighbors(uint32_t v) const { return adj_[v]; }
  uint32_t degree(uint32_t v) const { return adj_[v].size(); }
  double avg_degree() const { return n_ == 0 ? 0.0 : 2.0 * double(m_) / double(n_); }

  // Edges as (u, v) with u < v, ascending.
  std::vector<std::pair<uint32_t, uint32_t>> edges() const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && m_ == o.m_ && adj_ == o.adj_; }

 private:
  uint32_t n_ = 0;
  uint64_t m_ = 0;
  std::vector<VertexSet> adj_;
};

inline uint64_t pair_count(uint64_t n) { return n * (n - 1) / 2; }

// G(n,m): m distinct edges uniformly at random.
Graph gen_gnm(uint32_t n, uint64_t m, uint64_t seed);

// G*(n,m): m endpoint pairs drawn uniformly with replacement; self-loops
// dropped and parallel edges merged, so the edge count may be below m.
Graph gen_gnm_star(uint32_t n, uint64_t m, uint64_t seed);

// G(n,p): each of the C(n,2) pairs independently an edge.
Graph gen_gnp(uint32_t n, double p, uint64_t seed);

struct PlantedPair {
  Graph graph;
  VertexSet sigma;
};

// Planted model: sigma a uniform k-subset, then m distinct edges uniform
// over the pairs not internal to sigma.
PlantedPair gen_planted(uint32_t n, uint64_t m, uint32_t k, uint64_t seed);

// Parse failure with a 1-based line (or entry) number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, uint64_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  uint64_t line() const { return line_; }

 private:
  uint64_t line_;
};

// Text format: one edge per line "u v", 0-indexed, u < v canonical on save;
// n is inferred as max endpoint + 1. JSON format: {"n": n, "edges": [[u,v],...]}.
// Both reject self-loops and duplicate edges. Dispatch is by ".json" suffix.
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);
Graph graph_from_json_text(const std::string& text);
std::string graph_to_json_text(const Graph& g);

}  // namespace isetlab
