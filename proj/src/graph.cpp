#include "isetlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "isetlab/rng.hpp"
#include "json.hpp"

namespace isetlab {

std::vector<std::pair<uint32_t, uint32_t>> Graph::edges() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  out.reserve(m_);
  for (uint32_t u = 0; u < n_; ++u) {
    adj_[u].for_each([&](uint32_t v) {
      if (u < v) out.emplace_back(u, v);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Canonical rank of the pair {u,v}, u < v: r = v(v-1)/2 + u.
std::pair<uint32_t, uint32_t> unrank_pair(uint64_t r) {
  uint64_t v = uint64_t((1.0 + std::sqrt(1.0 + 8.0 * double(r))) / 2.0);
  while (pair_count(v) > r) --v;
  while (pair_count(v + 1) <= r) ++v;
  return {uint32_t(r - pair_count(v)), uint32_t(v)};
}

// m distinct ranks uniform over the allowed pairs. `allowed` filters ranks
// drawn by rejection from the full pair space; when m is a large fraction of
// the pool, falls back to a shuffle prefix of the materialized pool.
template <class AllowedFn>
std::vector<uint64_t> sample_pair_ranks(uint64_t full_space, uint64_t pool_size, uint64_t m,
                                        Rng& rng, AllowedFn allowed) {
  std::vector<uint64_t> picked;
  picked.reserve(m);
  if (m == 0) return picked;
  if (2 * m <= pool_size) {
    std::unordered_set<uint64_t> seen;
    seen.reserve(m * 2);
    while (picked.size() < m) {
      uint64_t r = rng.below(full_space);
      if (!allowed(r)) continue;
      if (seen.insert(r).second) picked.push_back(r);
    }
  } else {
    std::vector<uint64_t> pool;
    pool.reserve(pool_size);
    for (uint64_t r = 0; r < full_space; ++r)
      if (allowed(r)) pool.push_back(r);
    for (uint64_t i = 0; i < m; ++i) {
      uint64_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      picked.push_back(pool[i]);
    }
  }
  return picked;
}

}  // namespace

Graph gen_gnm(uint32_t n, uint64_t m, uint64_t seed) {
  const uint64_t total = pair_count(n);
  if (m > total) throw std::invalid_argument("gen_gnm: m exceeds C(n,2)");
  Rng rng(seed);
  Graph g(n);
  for (uint64_t r : sample_pair_ranks(total, total, m, rng, [](uint64_t) { return true; })) {
    auto [u, v] = unrank_pair(r);
    g.add_edge(u, v);
  }
  return g;
}

Graph gen_gnm_star(uint32_t n, uint64_t m, uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_gnm_star: n must be positive");
  Rng rng(seed);
  Graph g(n);
  for (uint64_t i = 0; i < m; ++i) {
    uint32_t a = uint32_t(rng.below(n));
    uint32_t b = uint32_t(rng.below(n));
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

Graph gen_gnp(uint32_t n, double p, uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_gnp: p outside [0,1]");
  Rng rng(seed);
  Graph g(n);
  if (p == 0.0) return g;
  // ldexp(p, 64) is an exact scaling; the per-pair test r < p*2^64 realizes
  // probability p to the full 64-bit resolution with integer compares only.
  const unsigned __int128 threshold = (unsigned __int128)(std::ldexp(p, 64));
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v = u + 1; v < n; ++v) {
      if ((unsigned __int128)rng.next_u64() < threshold) g.add_edge(u, v);
    }
  }
  return g;
}

PlantedPair gen_planted(uint32_t n, uint64_t m, uint32_t k, uint64_t seed) {
  if (k > n) throw std::invalid_argument("gen_planted: k > n");
  const uint64_t total = pair_count(n);
  const uint64_t pool = total - pair_count(k);
  if (m > pool) throw std::invalid_argument("gen_planted: m exceeds the non-sigma pair pool");
  Rng rng(seed);

  std::vector<uint32_t> perm(n);
  for (uint32_t i = 0; i < n; ++i) perm[i] = i;
  for (uint32_t i = 0; i < k; ++i) {
    uint64_t j = i + rng.below(n - i);
    std::swap(perm[i], perm[j]);
  }
  VertexSet sigma(n);
  for (uint32_t i = 0; i < k; ++i) sigma.set(perm[i]);

  Graph g(n);
  auto allowed = [&](uint64_t r) {
    auto [u, v] = unrank_pair(r);
    return !(sigma.test(u) && sigma.test(v));
  };
  for (uint64_t r : sample_pair_ranks(total, pool, m, rng, allowed)) {
    auto [u, v] = unrank_pair(r);
    g.add_edge(u, v);
  }
  return {std::move(g), std::move(sigma)};
}

Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  uint64_t line_no = 0;
  uint32_t max_v = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v)) throw ParseError("expected \"u v\"", line_no);
    std::string rest;
    if (ls >> rest) throw ParseError("trailing tokens after \"u v\"", line_no);
    if (u < 0 || v < 0) throw ParseError("negative vertex", line_no);
    if (u == v) throw ParseError("self-loop", line_no);
    edges.emplace_back(uint32_t(u), uint32_t(v));
    max_v = std::max({max_v, uint32_t(u), uint32_t(v)});
  }
  Graph g(edges.empty() ? 0 : max_v + 1);
  uint64_t idx = 0;
  for (auto [u, v] : edges) {
    ++idx;
    if (!g.add_edge(u, v)) throw ParseError("duplicate edge", idx);
  }
  return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph graph_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad json: ") + e.what(), 1);
  }
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    throw ParseError("missing or bad \"n\"", 1);
  Graph g(j["n"].get<uint32_t>());
  uint64_t idx = 0;
  for (const auto& e : j.value("edges", nlohmann::json::array())) {
    ++idx;
    if (!e.is_array() || e.size() != 2) throw ParseError("edge is not a pair", idx);
    uint32_t u = e[0].get<uint32_t>(), v = e[1].get<uint32_t>();
    if (u == v) throw ParseError("self-loop", idx);
    if (u >= g.num_vertices() || v >= g.num_vertices()) throw ParseError("endpoint out of range", idx);
    if (!g.add_edge(u, v)) throw ParseError("duplicate edge", idx);
  }
  return g;
}

std::string graph_to_json_text(const Graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.num_vertices();
  auto arr = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) arr.push_back({u, v});
  j["edges"] = std::move(arr);
  return j.dump();
}

namespace {
bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}
}  // namespace

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (has_suffix(path, ".json")) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return graph_from_json_text(ss.str());
  }
  return read_edge_list(in);
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (has_suffix(path, ".json")) {
    out << graph_to_json_text(g) << '\n';
  } else {
    write_edge_list(g, out);
  }
}

}  // namespace isetlab
