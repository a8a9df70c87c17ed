#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isetlab/logvalue.hpp"

namespace isetlab {

// Closed-form moment quantities, all in log space. O(.) and o(.) terms are
// dropped everywhere; results carrying such a truncation say so via
// `leading_order_only`.

// E[X_{n,m}(k)] = C(n,k) (1-(k/n)^2)^m under the per-edge-independent
// G*(n,m) model.
LogValue expected_count_star(uint64_t n, uint64_t m, uint64_t k);

// E|S_k(G(n,m))| = C(n,k) C(C(n,2)-C(k,2), m) / C(C(n,2), m).
LogValue expected_count_gnm(uint64_t n, uint64_t m, uint64_t k);

// The integer k in [1, n-1] with ln E[X_{n,m}(k)]/k closest to eps, found by
// bisection on the decreasing profile. Throws NoRootError when eps is not
// bracketed on that range.
class NoRootError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
uint64_t k_epsilon(uint64_t n, uint64_t m, double eps);

struct DeltaK {
  double value = 0.0;
  bool leading_order_only = true;  // the O(ln(n/k) sqrt(n/k)) term is dropped
};
// delta_k = 2(n/k) ln(n/k) + 2(n/k), leading terms only.
DeltaK delta_k(uint64_t n, uint64_t k);

struct SecondMomentTerms {
  std::vector<LogValue> a;  // a_0 .. a_k
  LogValue ratio;           // sum = E[X^2]/E[X]^2
};
// Overlap decomposition of the second moment:
// a_i = C(k,i) C(n-k,k-i) (1-2(k/n)^2+(i/n)^2)^m / [C(n,k) (1-(k/n)^2)^{2m}].
SecondMomentTerms second_moment_terms(uint64_t n, uint64_t m, uint64_t k);

// b_i = a_{i+1}/a_i. Throws when a_i = 0.
LogValue sm_term_ratio(uint64_t n, uint64_t m, uint64_t k, uint64_t i);

struct RatioCrossings {
  std::optional<uint64_t> i1;  // min{i >= 1 : b_i < 1}
  std::optional<uint64_t> i2;  // max{i < k : b_i > 1} + 1
};
RatioCrossings sm_ratio_crossings(uint64_t n, uint64_t m, uint64_t k);

struct ExpandableExpected {
  LogValue value;
  uint64_t kept = 0;   // floor((1-delta) k)
  uint64_t added = 0;  // floor((gamma+delta) k)
  bool rounded = false;
};
// Expected number of independent sets of size (1+gamma)k sharing (1-delta)k
// vertices with a planted sigma, per-edge model. Throws InfeasibleOverlap when
// the power base goes negative.
class InfeasibleOverlap : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
ExpandableExpected expandable_expected(uint64_t n, uint64_t m, uint64_t k, double gamma,
                                       double delta);

struct ClusterExpected {
  LogValue value;
  uint64_t overlap = 0;          // floor(x n)
  bool rounded = false;
  bool y_lambda_surrogate = true;  // y(lambda) evaluated as lambda itself
};
// First-moment bound on the number of k-sets at overlap x with energy at most
// lambda*n: C(k,xn) C(n-k,k-xn) ((1-2s^2+x^2)/(1-s^2))^m exp(lambda n).
ClusterExpected cluster_expected(uint64_t n, uint64_t m, uint64_t k, double x, double lam);

struct ProfilePoint {
  double s = 0.0;
  double f = 0.0;  // ln E[X_{n,m}(s n)] / (s n), continuous in s
};
std::vector<ProfilePoint> f_d_profile(uint64_t n, uint64_t m, const std::vector<double>& grid);

}  // namespace isetlab
