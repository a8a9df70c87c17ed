#include "isetlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "isetlab/rng.hpp"
#include "json.hpp"

namespace isetlab {

uint32_t hamming(const VertexSet& s, const VertexSet& t) { return s.hamming(t); }

double overlap(const VertexSet& sigma, const VertexSet& tau) {
  if (sigma.universe() == 0) throw std::invalid_argument("overlap: empty universe");
  return double(sigma.intersect_count(tau)) / double(sigma.universe());
}

namespace {

struct UnionFind {
  std::vector<uint32_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

constexpr size_t kPairScanLimit = 100'000;  // quadratic phase guard

}  // namespace

ClusterReport gamma_components(const Layer& layer, uint32_t gamma) {
  if (layer.truncated) throw std::invalid_argument("gamma_components: truncated layer");
  const size_t n = layer.members.size();
  if (n > kPairScanLimit) throw std::runtime_error("gamma_components: layer too large for pairwise scan");

  ClusterReport report;
  report.k = layer.k;
  report.gamma = gamma;
  report.total = n;
  report.truncated = false;
  if (n == 0) return report;

  UnionFind uf(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (layer.members[i].hamming(layer.members[j]) <= gamma) uf.unite(uint32_t(i), uint32_t(j));
    }
  }
  std::vector<uint32_t> root(n);
  for (size_t i = 0; i < n; ++i) root[i] = uf.find(uint32_t(i));

  std::optional<uint32_t> min_inter;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (root[i] == root[j]) continue;
      uint32_t d = layer.members[i].hamming(layer.members[j]);
      if (!min_inter || d < *min_inter) min_inter = d;
    }
  }
  report.min_interclass_distance = min_inter;

  // members are lex-sorted, so the first index of each root is its
  // lexicographically smallest member
  std::vector<std::pair<uint32_t, uint64_t>> by_root;  // (first index, size)
  std::vector<int64_t> slot(n, -1);
  for (size_t i = 0; i < n; ++i) {
    if (slot[root[i]] < 0) {
      slot[root[i]] = int64_t(by_root.size());
      by_root.emplace_back(uint32_t(i), 0);
    }
    ++by_root[size_t(slot[root[i]])].second;
  }
  uint64_t max_class = 0;
  for (auto [first_idx, size] : by_root) {
    report.classes.emplace_back(size, layer.members[first_idx]);
    max_class = std::max(max_class, size);
  }
  report.max_class_fraction = double(max_class) / double(n);
  return report;
}

std::vector<ClusterReport> shattering_scan(const Layer& layer,
                                           const std::vector<uint32_t>& gamma_grid) {
  std::vector<ClusterReport> out;
  out.reserve(gamma_grid.size());
  for (uint32_t g : gamma_grid) out.push_back(gamma_components(layer, g));
  return out;
}

std::string cluster_report_to_json(const ClusterReport& r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["gamma"] = r.gamma;
  j["total"] = r.total;
  j["truncated"] = r.truncated;
  j["num_classes"] = r.classes.size();
  j["max_class_fraction"] = r.max_class_fraction;
  if (r.min_interclass_distance)
    j["min_interclass_distance"] = *r.min_interclass_distance;
  else
    j["min_interclass_distance"] = nullptr;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [size, rep] : r.classes) {
    nlohmann::ordered_json c;
    c["size"] = size;
    c["representative"] = rep.vertices();
    arr.push_back(std::move(c));
  }
  j["classes"] = std::move(arr);
  return j.dump();
}

namespace {

uint64_t edges_inside(const Graph& g, const VertexSet& s) {
  uint64_t twice = 0;
  s.for_each([&](uint32_t v) { twice += g.neighbors(v).intersect_count(s); });
  return twice / 2;
}

}  // namespace

uint64_t near_layer_count(const Graph& g, const VertexSet& sigma, double x, uint64_t lam_edges) {
  const uint32_t n = g.num_vertices();
  const uint32_t k = sigma.size();
  if (n > 24) throw std::invalid_argument("near_layer_count: exhaustive scan needs n <= 24");
  const uint32_t target = uint32_t(std::llround(x * double(n)));
  uint64_t count = 0;
  VertexSet chosen(n);
  auto rec = [&](auto&& self, uint32_t start, uint32_t need) -> void {
    if (need == 0) {
      if (chosen.intersect_count(sigma) == target && edges_inside(g, chosen) <= lam_edges)
        ++count;
      return;
    }
    for (uint32_t v = start; v + need <= n; ++v) {
      chosen.set(v);
      self(self, v + 1, need - 1);
      chosen.reset(v);
    }
  };
  if (k <= n) rec(rec, 0, k);
  return count;
}

namespace {

struct ExpandSearch {
  const Graph& g;
  const VertexSet& sigma;
  uint32_t need_total;   // ceil((1+gamma) k)
  uint32_t need_shared;  // ceil((1-delta) k)
  uint64_t budget;
  uint64_t nodes = 0;
  bool truncated = false;
  std::optional<VertexSet> found;
  std::vector<uint32_t> order;  // sigma vertices first, then the rest

  ExpandSearch(const Graph& graph, const VertexSet& s, uint32_t total, uint32_t shared,
               uint64_t b)
      : g(graph), sigma(s), need_total(total), need_shared(shared), budget(b) {
    const uint32_t n = g.num_vertices();
    order.reserve(n);
    sigma.for_each([&](uint32_t v) { order.push_back(v); });
    for (uint32_t v = 0; v < n; ++v)
      if (!sigma.test(v)) order.push_back(v);
  }

  // cur independent; idx positions before it are decided.
  bool run(uint32_t idx, VertexSet& cur, uint32_t shared) {
    if (found || truncated) return found.has_value();
    if (++nodes > budget) {
      truncated = true;
      return false;
    }
    if (cur.size() >= need_total && shared >= need_shared) {
      found = cur;
      return true;
    }
    if (idx == order.size()) return false;
    uint32_t rem = uint32_t(order.size() - idx);
    uint32_t rem_sigma = idx < sigma.size() ? sigma.size() - idx : 0;
    if (cur.size() + rem < need_total) return false;
    if (shared + rem_sigma < need_shared) return false;
    uint32_t v = order[idx];
    bool in_sigma = idx < sigma.size();
    if (!g.neighbors(v).intersects(cur)) {
      cur.set(v);
      if (run(idx + 1, cur, shared + (in_sigma ? 1 : 0))) return true;
      cur.reset(v);
    }
    return run(idx + 1, cur, shared);
  }
};

uint32_t ceil_of(double x) { return uint32_t(std::ceil(x - 1e-9)); }

}  // namespace

ExpandResult is_expandable(const Graph& g, const VertexSet& sigma, double gamma, double delta,
                           uint64_t budget) {
  if (!is_independent(g, sigma)) throw std::invalid_argument("is_expandable: sigma not independent");
  if (gamma < 0.0 || delta < 0.0) throw std::invalid_argument("is_expandable: gamma, delta >= 0");
  const uint32_t k = sigma.size();
  ExpandResult out;
  if (k == 0) {  // every set expands the empty set
    out.status = ExpandStatus::witness;
    out.witness = ExpandWitness{sigma, 0.0, 0.0};
    return out;
  }
  uint32_t need_total = ceil_of((1.0 + gamma) * double(k));
  uint32_t need_shared = ceil_of((1.0 - delta) * double(k));
  ExpandSearch search(g, sigma, need_total, need_shared, budget);
  VertexSet cur(g.num_vertices());
  search.run(0, cur, 0);
  out.nodes = search.nodes;
  if (search.found) {
    out.status = ExpandStatus::witness;
    double sz = double(search.found->size());
    double sh = double(search.found->intersect_count(sigma));
    out.witness = ExpandWitness{*search.found, sz / double(k) - 1.0, 1.0 - sh / double(k)};
  } else if (search.truncated) {
    out.status = ExpandStatus::budget_exceeded;
  } else {
    out.status = ExpandStatus::proven_none;
  }
  return out;
}

VertexSet pure_vertices(const Graph& g, const VertexSet& sigma) {
  if (!is_independent(g, sigma)) throw std::invalid_argument("pure_vertices: sigma not independent");
  const uint32_t n = g.num_vertices();
  VertexSet pure(n);
  for (uint32_t v = 0; v < n; ++v) {
    if (!sigma.test(v) && !g.neighbors(v).intersects(sigma)) pure.set(v);
  }
  return pure;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& verts) {
  InducedSubgraph out;
  out.to_original = verts.vertices();
  Graph sub(uint32_t(out.to_original.size()));
  for (uint32_t i = 0; i < out.to_original.size(); ++i) {
    for (uint32_t j = i + 1; j < out.to_original.size(); ++j) {
      if (g.has_edge(out.to_original[i], out.to_original[j])) sub.add_edge(i, j);
    }
  }
  out.graph = std::move(sub);
  return out;
}

InducedSubgraph pure_subgraph(const Graph& g, const VertexSet& sigma) {
  return induced_subgraph(g, pure_vertices(g, sigma));
}

VertexSet expand_via_pure(const Graph& g, const VertexSet& sigma, ExpandStrategy strategy,
                          uint64_t seed) {
  InducedSubgraph pure = pure_subgraph(g, sigma);
  VertexSet inner = strategy == ExpandStrategy::greedy ? greedy_mis(pure.graph, seed)
                                                       : max_is_exact(pure.graph).set;
  VertexSet out = sigma;
  inner.for_each([&](uint32_t v) { out.set(pure.to_original[v]); });
  return out;
}

VertexSet blocking_vertices(const Graph& g, const VertexSet& sigma, double threshold) {
  if (!is_independent(g, sigma)) throw std::invalid_argument("blocking_vertices: sigma not independent");
  if (threshold < 0.0) threshold = 0.1 * std::log(std::max(g.avg_degree(), 1.0));
  const uint32_t n = g.num_vertices();
  VertexSet blocking(n);
  for (uint32_t v = 0; v < n; ++v) {
    if (!sigma.test(v) && double(g.neighbors(v).intersect_count(sigma)) >= threshold)
      blocking.set(v);
  }
  return blocking;
}

uint32_t count_isolated(const Graph& g) {
  uint32_t c = 0;
  for (uint32_t v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) == 0) ++c;
  return c;
}

}  // namespace isetlab
