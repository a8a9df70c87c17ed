#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isetlab/iset.hpp"

namespace isetlab {

// Effective average degree for the 7d / 20d radii: max(1, ceil(2m/n)).
uint32_t degree_bound(const Graph& g);

// Local rewiring gadget for a pair sigma, tau in S_k. Case A: v has no
// neighbor in sigma ∪ tau. Case B: v's sigma- and tau-neighborhoods are
// disjoint from sigma ∩ tau and each is matched by a terminal set: distinct
// vertices outside sigma ∪ tau ∪ N_v, pairwise non-adjacent, one per
// neighbor u with N_w ∩ sigma = {u} (resp. tau). The two terminal sets are
// kept disjoint so the intersection gain below is exact.
struct AugmentingWitness {
  uint32_t v = 0;
  enum class Kind { A, B } kind = Kind::A;
  VertexSet term_sigma;  // I_v(sigma)
  VertexSet term_tau;    // I_v(tau)
};

// Deterministic search: lowest v first, then the lexicographically first
// terminal assignment. nullopt after exhausting all v outside sigma ∪ tau.
std::optional<AugmentingWitness> find_augmenting(const Graph& g, const VertexSet& sigma,
                                                 const VertexSet& tau);

bool validate_witness(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                      const AugmentingWitness& w);

struct ColliderStep {
  VertexSet sigma1, sigma2;  // S_{k+1} via set, S_k result
  VertexSet tau1, tau2;
};

// Two-phase step: swap v (+terminals) in for N_v ∩ sigma, then drop one
// vertex that is neither v nor in sigma ∩ tau (lowest index, preferring
// vertices outside tau). Guarantees |sigma2 ∩ tau2| = |sigma ∩ tau| + 1.
ColliderStep collider_step(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                           const AugmentingWitness& w);

struct PathCertificate {
  uint32_t k = 0;
  uint64_t rounds = 0;
  std::vector<VertexSet> steps;  // S_k path, first = sigma, last = tau
  std::vector<VertexSet> via;    // S_{k+1} intermediates, one per step edge
  uint32_t max_step_distance = 0;
};

struct PathResult {
  bool success = false;
  PathCertificate certificate;  // valid only on success
  VertexSet final_sigma, final_tau;  // the stuck pair on failure
  uint64_t rounds_used = 0;
};

// Repeats find_augmenting + collider_step until the pair coincides; the
// intersection grows by one per round, so success takes exactly
// k - |sigma ∩ tau| rounds.
PathResult connect_path(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                        uint64_t max_rounds);

bool validate_certificate(const Graph& g, const VertexSet& sigma, const VertexSet& tau,
                          const PathCertificate& cert);

std::string certificate_to_json(const PathCertificate& cert);

}  // namespace isetlab
