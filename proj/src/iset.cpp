#include "isetlab/iset.hpp"

#include <algorithm>
#include <stdexcept>

#include "isetlab/rng.hpp"

namespace isetlab {

std::string u128_to_string(u128 x) {
  if (x == 0) return "0";
  std::string out;
  while (x > 0) {
    out.push_back(char('0' + int(x % 10)));
    x /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_independent(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices()) throw std::invalid_argument("set width != graph order");
  bool ok = true;
  s.for_each([&](uint32_t v) {
    if (ok && g.neighbors(v).intersects(s)) ok = false;
  });
  return ok;
}

bool is_maximal_independent(const Graph& g, const VertexSet& s) {
  if (!is_independent(g, s)) return false;
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    if (!s.test(v) && !g.neighbors(v).intersects(s)) return false;
  }
  return true;
}

VertexSet greedy_mis(const Graph& g, uint64_t seed) {
  const uint32_t n = g.num_vertices();
  Rng rng(seed);
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  for (uint32_t i = 0; i + 1 < n; ++i) {
    uint64_t j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
  }
  VertexSet chosen(n);
  for (uint32_t v : order) {
    if (!g.neighbors(v).intersects(chosen)) chosen.set(v);
  }
  return chosen;
}

namespace {

// Greedy clique partition of P; the clique count bounds alpha(G[P]).
uint32_t clique_cover_bound(const Graph& g, const VertexSet& p) {
  std::vector<VertexSet> cliques;
  p.for_each([&](uint32_t v) {
    for (auto& c : cliques) {
      if (c.is_subset_of(g.neighbors(v))) {
        c.set(v);
        return;
      }
    }
    VertexSet c(g.num_vertices());
    c.set(v);
    cliques.push_back(std::move(c));
  });
  return uint32_t(cliques.size());
}

struct MisSearch {
  const Graph& g;
  uint64_t budget;
  uint64_t nodes = 0;
  bool exact = true;
  VertexSet best;

  explicit MisSearch(const Graph& graph, uint64_t b) : g(graph), budget(b), best(graph.num_vertices()) {}

  void run(const VertexSet& p, VertexSet& cur) {
    if (++nodes > budget) {
      exact = false;
      return;
    }
    if (p.empty()) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    if (cur.size() + clique_cover_bound(g, p) <= best.size()) return;
    // pivot: highest degree within P
    uint32_t pivot = 0, pdeg = 0;
    bool first = true;
    p.for_each([&](uint32_t v) {
      uint32_t d = g.neighbors(v).intersect_count(p);
      if (first || d > pdeg) {
        pivot = v;
        pdeg = d;
        first = false;
      }
    });
    VertexSet incl = p.minus(g.neighbors(pivot));
    incl.reset(pivot);
    cur.set(pivot);
    run(incl, cur);
    cur.reset(pivot);
    VertexSet excl = p;
    excl.reset(pivot);
    run(excl, cur);
  }
};

}  // namespace

MaxIsResult max_is_exact(const Graph& g, uint64_t node_budget) {
  MisSearch search(g, node_budget);
  VertexSet all(g.num_vertices());
  for (uint32_t v = 0; v < g.num_vertices(); ++v) all.set(v);
  VertexSet cur(g.num_vertices());
  search.run(all, cur);
  return {search.best, search.exact, search.nodes};
}

namespace {

// Walks size-k independent sets in ascending-sequence lex order.
// Emit returns false to stop the walk early.
template <class Emit>
void walk_layer(const Graph& g, uint32_t k, Emit emit) {
  const uint32_t n = g.num_vertices();
  if (k > n) return;
  VertexSet chosen(n);
  bool stop = false;
  auto rec = [&](auto&& self, uint32_t start, uint32_t need) -> void {
    if (stop) return;
    if (need == 0) {
      if (!emit(chosen)) stop = true;
      return;
    }
    for (uint32_t v = start; v + need <= n && !stop; ++v) {
      if (g.neighbors(v).intersects(chosen)) continue;
      chosen.set(v);
      self(self, v + 1, need - 1);
      chosen.reset(v);
    }
  };
  rec(rec, 0, k);
}

}  // namespace

Layer enumerate_layer(const Graph& g, uint32_t k, uint64_t cap) {
  Layer layer;
  layer.k = k;
  layer.cap = cap;
  walk_layer(g, k, [&](const VertexSet& s) {
    if (layer.members.size() == cap) {
      layer.truncated = true;
      return false;
    }
    layer.members.push_back(s);
    return true;
  });
  return layer;
}

u128 count_layer(const Graph& g, uint32_t k) {
  u128 count = 0;
  walk_layer(g, k, [&](const VertexSet&) {
    ++count;
    return true;
  });
  return count;
}

std::optional<u128> count_layer_bounded(const Graph& g, uint32_t k, uint64_t max_nodes) {
  const uint32_t n = g.num_vertices();
  if (k > n) return u128(0);
  u128 count = 0;
  uint64_t nodes = 0;
  VertexSet chosen(n);
  auto rec = [&](auto&& self, uint32_t start, uint32_t need) -> bool {
    if (++nodes > max_nodes) return false;
    if (need == 0) {
      ++count;
      return true;
    }
    for (uint32_t v = start; v + need <= n; ++v) {
      if (g.neighbors(v).intersects(chosen)) continue;
      chosen.set(v);
      bool ok = self(self, v + 1, need - 1);
      chosen.reset(v);
      if (!ok) return false;
    }
    return true;
  };
  if (!rec(rec, 0, k)) return std::nullopt;
  return count;
}

std::optional<VertexSet> sample_uk(const Graph& g, uint32_t k, uint64_t seed, uint64_t cap) {
  Layer layer = enumerate_layer(g, k, cap);
  if (layer.truncated) throw std::runtime_error("sample_uk: layer truncated at cap, refusing to sample");
  if (layer.members.empty()) return std::nullopt;
  Rng rng(seed);
  return layer.members[rng.below(layer.members.size())];
}

}  // namespace isetlab
