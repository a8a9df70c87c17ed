#include "isetlab/collider.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace isetlab {

uint32_t degree_bound(const Graph& g) {
  return std::max<uint32_t>(1, uint32_t(std::ceil(g.avg_degree())));
}

namespace {

void check_pair(const Graph& g, const VertexSet& sigma, const VertexSet& tau) {
  if (sigma.size() != tau.size()) throw std::invalid_argument("collider: |sigma| != |tau|");
  if (!is_independent(g, sigma) || !is_independent(g, tau))
    throw std::invalid_argument("collider: inputs must be independent sets");
}

// Backtracking over the concatenated (sigma side, tau side) pick vector,
// candidates ascending, so the first complete assignment is the
// lexicographically smallest one.
struct TerminalSearch {
  const Graph& g;
  std::vector<std::vector<uint32_t>> cands;  // one slot per matched neighbor
  size_t sigma_slots;                        // first slots belong to sigma
  std::vector<uint32_t> picks;

  bool solve(size_t slot) {
    if (slot == cands.size()) return true;
    const bool in_sigma_side = slot < sigma_slots;
    const size_t side_begin = in_sigma_side ? 0 : sigma_slots;
    for (uint32_t w : cands[slot]) {
      bool ok = true;
      for (size_t p = 0; p < slot && ok; ++p) {
        if (picks[p] == w) ok = false;  // terminals are all distinct
      }
      // independence within the slot's own side
      for (size_t p = side_begin; p < slot && ok; ++p) {
        if (g.has_edge(picks[p], w)) ok = false;
      }
      if (!ok) continue;
      picks.push_back(w);
      if (solve(slot + 1)) return true;
      picks.pop_back();
    }
    return false;
  }
};

// Candidates for neighbor u on side `side`: w outside sigma ∪ tau ∪ {v},
// not adjacent to v, with N_w ∩ side = {u}.
std::vector<uint32_t> terminal_candidates(const Graph& g, const VertexSet& sigma,
                                          const VertexSet& tau, uint32_t v, uint32_t u,
                                          const VertexSet& side) {
  std::vector<uint32_t> out;
  const uint32_t n = g.num_vertices();
  for (uint32_t w = 0; w < n; ++w) {
    if (w == v || sigma.test(w) || tau.test(w)) continue;
    if (g.has_edge(v, w)) continue;
    if (g.neighbors(w).intersect_count(side) != 1 || !g.has_edge(w, u)) continue;
    out.push_back(w);
  }
  return out;
}

}  // namespace

std::optional<AugmentingWitness> find_augmenting(const Graph& g, const VertexSet& sigma,
                                                 const VertexSet& tau) {
  check_pair(g, sigma, tau);
  const uint32_t n = g.num_vertices();
  const uint32_t term_cap = 7 * degree_bound(g);
  const VertexSet both = sigma & tau;

  for (uint32_t v = 0; v < n; ++v) {
    if (sigma.test(v) || tau.test(v)) continue;
    const VertexSet& nv = g.neighbors(v);
    uint32_t in_sigma = nv.intersect_count(sigma);
    uint32_t in_tau = nv.intersect_count(tau);
    if (in_sigma == 0 && in_tau == 0) {
      AugmentingWitness w;
      w.v = v;
      w.kind = AugmentingWitness::Kind::A;
      w.term_sigma = VertexSet(n);
      w.term_tau = VertexSet(n);
      return w;
    }
    if (nv.intersects(both)) continue;
    if (in_sigma > term_cap || in_tau > term_cap) continue;

    TerminalSearch search{g, {}, 0, {}};
    (nv & sigma).for_each([&](uint32_t u) {
      search.cands.push_back(terminal_candidates(g, sigma, tau, v, u, sigma));
    });
    search.sigma_slots = search.cands.size();
    (nv & tau).for_each([&](uint32_t u) {
      search.cands.push_back(terminal_candidates(g, sigma, tau, v, u, tau));
    });
    if (!search.solve(0)) continue;

    AugmentingWitness w;
    w.v = v;
    w.kind = AugmentingWitness::Kind::B;
    w.term_sigma = VertexSet(n);
    w.term_tau = VertexSet(n);
    for (size_t i = 0; i < search.picks.size(); ++i) {
      if (i < search.sigma_slots)
        w.term_sigma.set(search.picks[i]);
      else
        w.term_tau.set(search.picks[i]);
    }
    return w;
  }
  return std::nullopt;
}

namespace {

bool validate_side(const Graph& g, const VertexSet& side, const VertexSet& other,
                   uint32_t v, const VertexSet& term, uint32_t term_cap) {
  const VertexSet& nv = g.neighbors(v);
  uint32_t matched = nv.intersect_count(side);
  if (term.size() != matched) return false;
  if (term.size() > term_cap) return false;
  if (term.intersects(nv)) return false;
  if (term.intersects(side) || term.intersects(other) || term.test(v)) return false;
  if (!is_independent(g, term)) return false;
  // each terminal has exactly one neighbor in `side`, lying in N_v, and the
  // map terminal -> neighbor is a bijection onto N_v ∩ side
  VertexSet hit(side.universe());
  bool ok = true;
  term.for_each([&](uint32_t w) {
    if (!ok) return;
    VertexSet nw_side = g.neighbors(w) & side;
    if (nw_side.size() != 1) {
      ok = false;
      return;
    }
    uint32_t u = nw_side.vertices()[0];
    if (!nv.test(u) || hit.test(u)) {
      ok = false;
      return;
    }
    hit.set(u);
  });
  return ok;
}

}  // namespace

bool validate_witness(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                      const AugmentingWitness& w) {
  if (sigma.test(w.v) || tau.test(w.v)) return false;
  const VertexSet& nv = g.neighbors(w.v);
  if (w.kind == AugmentingWitness::Kind::A) {
    return !nv.intersects(sigma) && !nv.intersects(tau) && w.term_sigma.empty() &&
           w.term_tau.empty();
  }
  if (nv.intersects(sigma & tau)) return false;
  if (w.term_sigma.intersects(w.term_tau)) return false;
  const uint32_t term_cap = 7 * degree_bound(g);
  return validate_side(g, sigma, tau, w.v, w.term_sigma, term_cap) &&
         validate_side(g, tau, sigma, w.v, w.term_tau, term_cap);
}

namespace {

// Lowest-index removal that is neither v nor in keep; prefers vertices
// outside `avoid` so shared vertices are never destroyed.
uint32_t phase2_removal(const VertexSet& s1, uint32_t v, const VertexSet& keep,
                        const VertexSet& avoid) {
  std::optional<uint32_t> preferred, fallback;
  s1.for_each([&](uint32_t u) {
    if (u == v || keep.test(u)) return;
    if (!fallback) fallback = u;
    if (!preferred && !avoid.test(u)) preferred = u;
  });
  if (preferred) return *preferred;
  if (fallback) return *fallback;
  throw std::invalid_argument("collider_step: no removable vertex (sigma == tau?)");
}

VertexSet phase1(const Graph& g, const VertexSet& s, uint32_t v, const VertexSet& term) {
  VertexSet out = s.minus(g.neighbors(v));
  out.set(v);
  term.for_each([&](uint32_t w) { out.set(w); });
  return out;
}

}  // namespace

ColliderStep collider_step(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                           const AugmentingWitness& w) {
  check_pair(g, sigma, tau);
  if (sigma == tau) throw std::invalid_argument("collider_step: sigma == tau");
  if (!validate_witness(g, sigma, tau, w))
    throw std::invalid_argument("collider_step: invalid witness for this pair");

  const VertexSet shared = sigma & tau;
  ColliderStep step;
  step.sigma1 = phase1(g, sigma, w.v, w.term_sigma);
  step.tau1 = phase1(g, tau, w.v, w.term_tau);
  step.sigma2 = step.sigma1;
  step.sigma2.reset(phase2_removal(step.sigma1, w.v, shared, tau));
  step.tau2 = step.tau1;
  step.tau2.reset(phase2_removal(step.tau1, w.v, shared, sigma));
  return step;
}

PathResult connect_path(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                        uint64_t max_rounds) {
  check_pair(g, sigma, tau);
  const uint32_t k = sigma.size();

  std::vector<VertexSet> schain{sigma}, tchain{tau};
  std::vector<VertexSet> svia, tvia;
  VertexSet scur = sigma, tcur = tau;
  uint64_t rounds = 0;
  while (scur != tcur) {
    if (rounds >= max_rounds) {
      return {false, {}, scur, tcur, rounds};
    }
    auto w = find_augmenting(g, scur, tcur);
    if (!w) {
      return {false, {}, scur, tcur, rounds};
    }
    ColliderStep step = collider_step(g, scur, tcur, *w);
    svia.push_back(step.sigma1);
    tvia.push_back(step.tau1);
    scur = step.sigma2;
    tcur = step.tau2;
    schain.push_back(scur);
    tchain.push_back(tcur);
    ++rounds;
  }

  PathCertificate cert;
  cert.k = k;
  cert.rounds = rounds;
  cert.steps = schain;
  for (size_t i = tchain.size(); i-- > 1;) cert.steps.push_back(tchain[i - 1]);
  cert.via = svia;
  for (size_t i = tvia.size(); i-- > 0;) cert.via.push_back(tvia[i]);
  cert.max_step_distance = 0;
  for (size_t i = 0; i + 1 < cert.steps.size(); ++i)
    cert.max_step_distance =
        std::max(cert.max_step_distance, cert.steps[i].hamming(cert.steps[i + 1]));
  return {true, std::move(cert), scur, tcur, rounds};
}

bool validate_certificate(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                          const PathCertificate& cert) {
  if (cert.steps.empty()) return false;
  if (cert.steps.front() != sigma || cert.steps.back() != tau) return false;
  if (cert.via.size() + 1 != cert.steps.size()) return false;
  const uint32_t radius = 20 * degree_bound(g);
  uint32_t max_d = 0;
  for (const auto& s : cert.steps) {
    if (s.size() != cert.k || !is_independent(g, s)) return false;
  }
  for (const auto& s : cert.via) {
    if (s.size() != cert.k + 1 || !is_independent(g, s)) return false;
  }
  for (size_t i = 0; i + 1 < cert.steps.size(); ++i) {
    uint32_t d = cert.steps[i].hamming(cert.steps[i + 1]);
    max_d = std::max(max_d, d);
    if (d >= radius) return false;
    if (cert.via[i].hamming(cert.steps[i]) >= radius) return false;
    if (cert.via[i].hamming(cert.steps[i + 1]) >= radius) return false;
  }
  return max_d == cert.max_step_distance;
}

std::string certificate_to_json(const PathCertificate& cert) {
  nlohmann::ordered_json j;
  j["k"] = cert.k;
  j["rounds"] = cert.rounds;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : cert.steps) steps.push_back(s.vertices());
  j["steps"] = std::move(steps);
  auto via = nlohmann::ordered_json::array();
  for (const auto& s : cert.via) via.push_back(s.vertices());
  j["via"] = std::move(via);
  j["max_step_distance"] = cert.max_step_distance;
  return j.dump();
}

}  // namespace isetlab
