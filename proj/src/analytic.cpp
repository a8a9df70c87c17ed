#include "isetlab/analytic.hpp"

#include <cmath>

#include "isetlab/graph.hpp"

namespace isetlab {

LogValue expected_count_star(uint64_t n, uint64_t m, uint64_t k) {
  if (k > n) throw std::invalid_argument("expected_count_star: k > n");
  double s = double(k) / double(n);
  if (k == n && m > 0) return LogValue::zero();  // (1-1)^m
  double lg = log_binomial(n, k) + double(m) * std::log1p(-s * s);
  return LogValue::from_log(lg);
}

LogValue expected_count_gnm(uint64_t n, uint64_t m, uint64_t k) {
  if (k > n) throw std::invalid_argument("expected_count_gnm: k > n");
  const uint64_t total = pair_count(n);
  if (m > total) throw std::invalid_argument("expected_count_gnm: m > C(n,2)");
  const uint64_t pool = total - pair_count(k);
  if (m > pool) return LogValue::zero();
  double lg = log_binomial(n, k) + log_binomial(pool, m) - log_binomial(total, m);
  return LogValue::from_log(lg);
}

namespace {

// ln E[X_{n,m}(k)] / k on the star model; decreasing in k.
double star_profile_at(uint64_t n, uint64_t m, uint64_t k) {
  LogValue e = expected_count_star(n, m, k);
  if (e.is_zero()) return -std::numeric_limits<double>::infinity();
  return e.log_mag / double(k);
}

}  // namespace

uint64_t k_epsilon(uint64_t n, uint64_t m, double eps) {
  if (n < 2) throw std::invalid_argument("k_epsilon: n too small");
  uint64_t lo = 1, hi = n - 1;
  double glo = star_profile_at(n, m, lo);
  double ghi = star_profile_at(n, m, hi);
  if (glo < eps || ghi > eps) throw NoRootError("k_epsilon: eps not bracketed on [1, n-1]");
  // invariant: g(lo) >= eps >= g(hi)
  while (hi - lo > 1) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (star_profile_at(n, m, mid) >= eps)
      lo = mid;
    else
      hi = mid;
  }
  double rlo = std::fabs(star_profile_at(n, m, lo) - eps);
  double rhi = std::fabs(star_profile_at(n, m, hi) - eps);
  return rlo <= rhi ? lo : hi;
}

DeltaK delta_k(uint64_t n, uint64_t k) {
  if (k == 0 || k > n) throw std::invalid_argument("delta_k: need 0 < k <= n");
  double r = double(n) / double(k);
  return {2.0 * r * std::log(r) + 2.0 * r, true};
}

namespace {

// ln a_i; -inf when the binomials vanish.
double log_sm_term(uint64_t n, uint64_t m, uint64_t k, uint64_t i) {
  double lb1 = log_binomial(k, i);
  double lb2 = log_binomial(n - k, k - i);
  if (std::isinf(lb1) || std::isinf(lb2)) return -std::numeric_limits<double>::infinity();
  double s = double(k) / double(n);
  double q = double(i) / double(n);
  double base = 1.0 - 2.0 * s * s + q * q;  // >= 2(1-s)^2 on feasible terms
  double denom = log_binomial(n, k) + 2.0 * double(m) * std::log1p(-s * s);
  return lb1 + lb2 + double(m) * std::log(base) - denom;
}

}  // namespace

SecondMomentTerms second_moment_terms(uint64_t n, uint64_t m, uint64_t k) {
  if (k > n) throw std::invalid_argument("second_moment_terms: k > n");
  if (k == n && m > 0) throw std::invalid_argument("second_moment_terms: E[X] = 0");
  SecondMomentTerms out;
  out.a.reserve(k + 1);
  out.ratio = LogValue::zero();
  for (uint64_t i = 0; i <= k; ++i) {
    LogValue a = LogValue::from_log(log_sm_term(n, m, k, i));
    out.ratio = out.ratio + a;
    out.a.push_back(a);
  }
  return out;
}

LogValue sm_term_ratio(uint64_t n, uint64_t m, uint64_t k, uint64_t i) {
  if (i >= k) throw std::invalid_argument("sm_term_ratio: need i < k");
  double la = log_sm_term(n, m, k, i);
  if (std::isinf(la)) throw std::domain_error("sm_term_ratio: a_i = 0, ratio undefined");
  double lb = log_sm_term(n, m, k, i + 1);
  return LogValue::from_log(lb - la);
}

RatioCrossings sm_ratio_crossings(uint64_t n, uint64_t m, uint64_t k) {
  RatioCrossings out;
  std::optional<uint64_t> last_above;
  for (uint64_t i = 0; i < k; ++i) {
    double la = log_sm_term(n, m, k, i);
    double lb = log_sm_term(n, m, k, i + 1);
    if (std::isinf(la) || std::isinf(lb)) continue;
    double logb = lb - la;
    if (!out.i1 && i >= 1 && logb < 0.0) out.i1 = i;
    if (logb > 0.0) last_above = i;
  }
  if (last_above) out.i2 = *last_above + 1;
  return out;
}

ExpandableExpected expandable_expected(uint64_t n, uint64_t m, uint64_t k, double gamma,
                                       double delta) {
  if (k == 0 || k > n) throw std::invalid_argument("expandable_expected: need 0 < k <= n");
  if (gamma < 0.0 || delta < 0.0) throw std::invalid_argument("expandable_expected: gamma, delta >= 0");
  ExpandableExpected out;
  out.kept = uint64_t(std::floor((1.0 - delta) * double(k) + 1e-12));
  out.added = uint64_t(std::floor((gamma + delta) * double(k) + 1e-12));
  out.rounded = std::fabs((1.0 - delta) * double(k) - double(out.kept)) > 1e-12 ||
                std::fabs((gamma + delta) * double(k) - double(out.added)) > 1e-12;
  if (out.kept > k || out.added > n - k)
    throw std::invalid_argument("expandable_expected: rounded sizes out of bounds");
  double s = double(k) / double(n);
  double t = double(out.kept + out.added) / double(n);  // |tau|/n after rounding
  double c = double(out.kept) / double(n);              // |tau ∩ sigma|/n
  double base = (1.0 - s * s - t * t + c * c) / (1.0 - s * s);
  if (base < 0.0) throw InfeasibleOverlap("expandable_expected: negative power base");
  double lg = log_binomial(k, out.kept) + log_binomial(n - k, out.added);
  if (base == 0.0 && m > 0) {
    out.value = LogValue::zero();
    return out;
  }
  out.value = LogValue::from_log(lg + double(m) * std::log(base));
  return out;
}

ClusterExpected cluster_expected(uint64_t n, uint64_t m, uint64_t k, double x, double lam) {
  if (k > n) throw std::invalid_argument("cluster_expected: k > n");
  if (x < 0.0 || lam < 0.0) throw std::invalid_argument("cluster_expected: x, lam >= 0");
  ClusterExpected out;
  out.overlap = uint64_t(std::floor(x * double(n) + 1e-12));
  if (out.overlap > k) throw std::invalid_argument("cluster_expected: overlap above k");
  out.rounded = std::fabs(x * double(n) - double(out.overlap)) > 1e-12;
  double s = double(k) / double(n);
  double xo = double(out.overlap) / double(n);
  double base = (1.0 - 2.0 * s * s + xo * xo) / (1.0 - s * s);
  double lg = log_binomial(k, out.overlap) + log_binomial(n - k, k - out.overlap);
  if (std::isinf(lg) || (base <= 0.0 && m > 0)) {
    out.value = LogValue::zero();
    return out;
  }
  out.value = LogValue::from_log(lg + double(m) * std::log(base) + lam * double(n));
  return out;
}

std::vector<ProfilePoint> f_d_profile(uint64_t n, uint64_t m, const std::vector<double>& grid) {
  std::vector<ProfilePoint> out;
  out.reserve(grid.size());
  for (double s : grid) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("f_d_profile: grid point outside (0,1)");
    double kr = s * double(n);
    double lg = log_binomial_real(double(n), kr) + double(m) * std::log1p(-s * s);
    out.push_back({s, lg / kr});
  }
  return out;
}

}  // namespace isetlab
