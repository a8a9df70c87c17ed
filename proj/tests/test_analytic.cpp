#include <array>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "isetlab/analytic.hpp"
#include "isetlab/rng.hpp"

using namespace isetlab;

TEST_SUITE("analytic") {

TEST_CASE("expected_count_star: exact rational anchors") {
  LogValue v = expected_count_star(10, 5, 3);
  double expect = 120.0 * std::pow(0.91L, 5);
  CHECK(v.sign == 1);
  CHECK(std::fabs(v.log_mag - std::log(expect)) <= 1e-12 * std::fabs(std::log(expect)));
  CHECK(v.to_double() == doctest::Approx(74.8839).epsilon(1e-6));

  CHECK(expected_count_star(12, 0, 4).to_double() == doctest::Approx(495.0).epsilon(1e-12));
  CHECK(expected_count_star(12, 7, 0).to_double() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(expected_count_star(6, 3, 6).is_zero());
}

TEST_CASE("expected_count_gnm: exact rational anchors") {
  CHECK(expected_count_gnm(4, 2, 2).to_double() == doctest::Approx(4.0).epsilon(1e-12));
  double expect = 120.0 * 850668.0 / 1221759.0;  // C(10,3) C(42,5) / C(45,5)
  CHECK(expected_count_gnm(10, 5, 3).to_double() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expected_count_gnm(10, 5, 3).to_double() == doctest::Approx(83.5518).epsilon(1e-5));
  for (uint64_t m : {0, 10, 40}) CHECK(expected_count_gnm(12, m, 1).to_double() == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(expected_count_gnm(6, 15, 2).is_zero());  // needs a pair inside every 2-set
}

TEST_CASE("expected_count: star and gnm agree to exp(o(n)) at d=4") {
  for (uint64_t n : {10, 20, 50, 100, 200}) {
    uint64_t m = 2 * n;  // d = 4
    uint64_t k = uint64_t(0.3 * double(n));
    LogValue star = expected_count_star(n, m, k);
    LogValue gnm = expected_count_gnm(n, m, k);
    CHECK(std::fabs(star.log_mag - gnm.log_mag) <= 0.02 * double(n));
  }
}

TEST_CASE("k_epsilon: monotone in eps, small residual, no-root error") {
  const uint64_t n = 1'000'000, m = 25'000'000;  // d = 50
  std::vector<double> eps_grid{0.5, 1.0, 2.0, 3.5, 5.0, 7.0};
  uint64_t prev = n;
  for (double eps : eps_grid) {
    uint64_t k = k_epsilon(n, m, eps);
    CHECK(k <= prev);  // larger eps -> smaller k
    prev = k;
    double g = expected_count_star(n, m, k).log_mag / double(k);
    double gl = expected_count_star(n, m, k - 1).log_mag / double(k - 1);
    double gr = expected_count_star(n, m, k + 1).log_mag / double(k + 1);
    double step = std::max(std::fabs(g - gl), std::fabs(gr - g));
    CHECK(std::fabs(g - eps) <= std::max(1.0 / double(k), step));
  }
  CHECK_THROWS_AS(k_epsilon(n, m, 1e9), NoRootError);
  CHECK_THROWS_AS(k_epsilon(n, m, -1e9), NoRootError);
}

TEST_CASE("delta_k: leading-term evaluations") {
  CHECK(delta_k(100, 10).value == doctest::Approx(20.0 * std::log(10.0) + 20.0).epsilon(1e-12));
  CHECK(delta_k(100, 10).value == doctest::Approx(66.0517).epsilon(1e-5));
  // n/k = e
  uint64_t n = 2718281828ULL, k = 1000000000ULL;
  CHECK(delta_k(n, k).value == doctest::Approx(4.0 * 2.718281828).epsilon(1e-6));
  CHECK(delta_k(7, 7).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(delta_k(7, 7).leading_order_only);
}

TEST_CASE("second_moment_terms: exact terms at (6,4,2)") {
  auto sm = second_moment_terms(6, 4, 2);
  REQUIRE(sm.a.size() == 3);
  // denom = C(6,2) (1-s^2)^{2m} with s = 1/3, m = 4
  long double denom = 15.0L * std::pow(8.0L / 9.0L, 8);
  long double a0 = 6.0L * std::pow(7.0L / 9.0L, 4) / denom;
  long double a1 = 8.0L * std::pow(29.0L / 36.0L, 4) / denom;
  long double a2 = 1.0L * std::pow(8.0L / 9.0L, 4) / denom;
  CHECK(sm.a[0].to_double() == doctest::Approx(double(a0)).epsilon(1e-12));
  CHECK(sm.a[1].to_double() == doctest::Approx(double(a1)).epsilon(1e-12));
  CHECK(sm.a[2].to_double() == doctest::Approx(double(a2)).epsilon(1e-12));
  CHECK(sm.a[0].to_double() == doctest::Approx(0.37558).epsilon(2e-4));
  CHECK(sm.a[1].to_double() == doctest::Approx(0.57624).epsilon(2e-4));
  CHECK(sm.a[2].to_double() == doctest::Approx(0.10679).epsilon(2e-4));
  CHECK(sm.ratio.to_double() == doctest::Approx(1.05860).epsilon(2e-4));
}

TEST_CASE("second_moment_terms: m=0 reduces to hypergeometric mass 1") {
  for (auto [n, k] : std::vector<std::pair<uint64_t, uint64_t>>{{10, 3}, {16, 5}, {9, 4}}) {
    auto sm = second_moment_terms(n, 0, k);
    CHECK(sm.ratio.to_double() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("second_moment_terms: ratio >= 1 on random draws") {
  Rng rng(123);
  for (int it = 0; it < 200; ++it) {
    uint64_t n = 4 + rng.below(200);
    uint64_t k = 1 + rng.below(n / 2 ? n / 2 : 1);
    uint64_t m = rng.below(2 * n);
    auto sm = second_moment_terms(n, m, k);
    CHECK(sm.ratio.log_mag >= -1e-9);
  }
}

TEST_CASE("second_moment_terms: Pr[X>0] >= 1/ratio by exhaustive census at (8,6,3)") {
  // Outcome classes of one endpoint-pair draw on 8 vertices: 8 loops
  // (prob 1/64) and 28 edges (prob 1/32). Enumerating all multisets of 6
  // draws gives Pr[X > 0] exactly, X = number of 3-sets no draw lands in.
  std::vector<std::array<uint32_t, 3>> triples;
  for (uint32_t a = 0; a < 8; ++a)
    for (uint32_t b = a + 1; b < 8; ++b)
      for (uint32_t c = b + 1; c < 8; ++c) triples.push_back({a, b, c});
  REQUIRE(triples.size() == 56);
  auto blocked_by = [&](uint32_t x, uint32_t y) {
    uint64_t mask = 0;
    for (size_t t = 0; t < triples.size(); ++t) {
      auto [a, b, c] = triples[t];
      bool x_in = (x == a || x == b || x == c), y_in = (y == a || y == b || y == c);
      if (x_in && y_in) mask |= uint64_t(1) << t;
    }
    return mask;
  };
  std::vector<uint64_t> masks;
  std::vector<double> probs;
  for (uint32_t v = 0; v < 8; ++v) {
    masks.push_back(blocked_by(v, v));
    probs.push_back(1.0 / 64.0);
  }
  for (uint32_t a = 0; a < 8; ++a)
    for (uint32_t b = a + 1; b < 8; ++b) {
      masks.push_back(blocked_by(a, b));
      probs.push_back(2.0 / 64.0);
    }
  const uint64_t full = (uint64_t(1) << 56) - 1;
  const double factorials[7] = {1, 1, 2, 6, 24, 120, 720};
  double p_positive = 0.0;
  // dfs over (class, multiplicity); probability = 6! prod p_i^c_i / c_i!
  auto rec = [&](auto&& self, size_t cls, uint32_t left, double w, uint64_t mask) -> void {
    if (left == 0) {
      if (mask != full) p_positive += w * 720.0;
      return;
    }
    if (cls == masks.size()) return;
    double pw = 1.0;
    for (uint32_t c = 0; c <= left; ++c) {
      self(self, cls + 1, left - c, w * pw / factorials[c], c ? mask | masks[cls] : mask);
      pw *= probs[cls];
    }
  };
  rec(rec, 0, 6, 1.0, 0);
  double ratio = second_moment_terms(8, 6, 3).ratio.to_double();
  CHECK(p_positive >= 1.0 / ratio - 1e-12);
  CHECK(p_positive <= 1.0 + 1e-12);
}

TEST_CASE("expandable_expected: first-moment bound on sampled planted instances at n=14") {
  // per-edge planted sampler: sigma = {0,1,2,3}; 40 ordered pairs uniform
  // over the 196 - 16 draws not inside sigma. The formula is the exact
  // expected number of tau = sigma + 2 outside vertices with no draw inside,
  // and Pr[some such tau] <= that expectation.
  const uint32_t n = 14, k = 4, m = 40;
  auto bound = expandable_expected(n, m, k, 0.5, 0.0);
  REQUIRE(bound.kept == 4);
  REQUIRE(bound.added == 2);
  double a = bound.value.to_double();
  REQUIRE(a < 1.0);  // the Markov check has content

  std::vector<uint32_t> taus;
  for (uint32_t x = 4; x < n; ++x)
    for (uint32_t y = x + 1; y < n; ++y) taus.push_back(0xFu | (1u << x) | (1u << y));
  REQUIRE(taus.size() == 45);

  Rng rng(20240);
  const int samples = 4000;
  double sum = 0.0, sumsq = 0.0;
  int exists = 0;
  for (int it = 0; it < samples; ++it) {
    std::vector<std::pair<uint32_t, uint32_t>> draws;
    while (draws.size() < m) {
      uint32_t x = uint32_t(rng.below(n)), y = uint32_t(rng.below(n));
      if (x < 4 && y < 4) continue;  // inside sigma
      draws.emplace_back(x, y);
    }
    uint32_t count = 0;
    for (uint32_t tau : taus) {
      bool blocked = false;
      for (auto [x, y] : draws) {
        if ((tau >> x & 1u) && (tau >> y & 1u)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) ++count;
    }
    sum += count;
    sumsq += double(count) * count;
    if (count > 0) ++exists;
  }
  double mean = sum / samples;
  double sd = std::sqrt((sumsq - sum * sum / samples) / (samples - 1));
  CHECK(std::fabs(mean - a) <= 3.0 * sd / std::sqrt(double(samples)) + 1e-9);
  double freq = double(exists) / samples;
  CHECK(freq <= a + 3.0 * std::sqrt(a * (1.0 - a) / samples) + 1e-9);
}

TEST_CASE("sm_term_ratio: consistent with the term sequence") {
  auto sm = second_moment_terms(6, 4, 2);
  for (uint64_t i = 0; i < 2; ++i) {
    LogValue b = sm_term_ratio(6, 4, 2, i);
    double direct = sm.a[i + 1].to_double() / sm.a[i].to_double();
    CHECK(std::fabs(b.log_mag - std::log(direct)) <= 1e-10);
  }
  CHECK(sm_term_ratio(6, 4, 2, 0).to_double() == doctest::Approx(1.53425).epsilon(1e-5));
  // k > n-k makes a_0 vanish
  CHECK_THROWS_AS(sm_term_ratio(6, 2, 4, 0), std::domain_error);
}

TEST_CASE("sm_ratio_crossings: b crosses 1 at most twice on (40,100,8)") {
  auto cr = sm_ratio_crossings(40, 100, 8);
  int flips = 0;
  bool have_prev = false, prev = false;
  for (uint64_t i = 0; i < 8; ++i) {
    LogValue b = sm_term_ratio(40, 100, 8, i);
    bool above = b.log_mag > 0.0;
    if (have_prev && above != prev) ++flips;
    prev = above;
    have_prev = true;
  }
  CHECK(flips <= 2);
  if (cr.i1 && cr.i2) CHECK(*cr.i1 <= *cr.i2);
}

TEST_CASE("expandable_expected: identity at gamma = delta = 0 and monotone in m") {
  auto unit = expandable_expected(1000, 2500, 100, 0.0, 0.0);
  CHECK(unit.value.to_double() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit.kept == 100);
  CHECK(unit.added == 0);

  double prev = std::numeric_limits<double>::infinity();
  for (uint64_t m : {500, 1000, 2500, 5000, 10000}) {
    auto r = expandable_expected(1000, m, 100, 0.2, 0.1);
    CHECK(r.value.log_mag < prev);
    prev = r.value.log_mag;
  }
  // base hits zero exactly when tau swallows everything outside sigma
  auto zero = expandable_expected(10, 3, 8, 0.25, 0.0);
  CHECK(zero.value.is_zero());
  CHECK_THROWS_AS(expandable_expected(10, 3, 8, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("expandable_expected: matches the exhaustive placement oracle at n=8") {
  // sigma = {0,1,2} planted; 3 edges drawn independently over the 55 ordered
  // pairs not inside sigma; count tau with |tau| = 4, |tau ∩ sigma| = 2.
  const uint32_t n = 8, k = 3, m = 3;
  std::vector<std::pair<uint32_t, uint32_t>> pool;
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      if (!(a < k && b < k)) pool.emplace_back(a, b);
  REQUIRE(pool.size() == 55);

  std::vector<uint32_t> taus;  // 8-bit masks with |tau|=4, |tau ∩ {0,1,2}|=2
  for (uint32_t mask = 0; mask < (1u << n); ++mask)
    if (__builtin_popcount(mask) == 4 && __builtin_popcount(mask & 7u) == 2) taus.push_back(mask);

  double total = 0.0;
  for (size_t e0 = 0; e0 < pool.size(); ++e0)
    for (size_t e1 = 0; e1 < pool.size(); ++e1)
      for (size_t e2 = 0; e2 < pool.size(); ++e2) {
        uint32_t count = 0;
        for (uint32_t tau : taus) {
          bool blocked = false;
          for (size_t ei : {e0, e1, e2}) {
            auto [a, b] = pool[ei];
            if ((tau >> a & 1u) && (tau >> b & 1u)) {
              blocked = true;
              break;
            }
          }
          if (!blocked) ++count;
        }
        total += count;
      }
  double oracle = total / std::pow(55.0, 3);
  auto formula = expandable_expected(n, m, k, 1.0 / 3.0, 1.0 / 3.0);
  CHECK(formula.kept == 2);
  CHECK(formula.added == 2);
  CHECK(formula.value.to_double() == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("cluster_expected: full-overlap identity and lambda monotonicity") {
  auto unit = cluster_expected(100, 300, 20, 0.2, 0.0);
  CHECK(unit.overlap == 20);
  CHECK(unit.value.to_double() == doctest::Approx(1.0).epsilon(1e-12));

  double prev = -std::numeric_limits<double>::infinity();
  for (double lam : {0.0, 0.01, 0.1, 0.5}) {
    auto r = cluster_expected(100, 300, 20, 0.1, lam);
    CHECK(r.value.log_mag >= prev);
    prev = r.value.log_mag;
  }
}

TEST_CASE("cluster_expected: forbidden overlap window at large d") {
  // k = 1.55 (ln d / d) n at d = 500: the layer is populated, yet a
  // contiguous strip of overlaps has log E[A(x)] < 0, separating the
  // near-sigma cluster from the far region.
  const double d = 500.0, eps = 0.55, lam = 1e-4;
  const uint64_t n = 100000, m = uint64_t(d) * n / 2;
  const uint64_t k = uint64_t((1.0 + eps) * std::log(d) / d * double(n));
  const double s = double(k) / double(n);
  std::vector<int> signs;
  for (int i = 1; i <= 59; ++i) {
    double x = s * double(i) / 60.0;
    auto r = cluster_expected(n, m, k, x, lam);
    signs.push_back(r.value.log_mag < 0.0 ? -1 : 1);
  }
  int first_neg = -1, last_neg = -1, flips = 0;
  for (size_t i = 0; i < signs.size(); ++i) {
    if (i > 0 && signs[i] != signs[i - 1]) ++flips;
    if (signs[i] < 0) {
      if (first_neg < 0) first_neg = int(i);
      last_neg = int(i);
    }
  }
  REQUIRE(first_neg >= 0);       // the window exists
  CHECK(last_neg - first_neg >= 5);
  CHECK(flips == 2);             // one contiguous negative strip
  CHECK(signs.front() > 0);      // far overlaps stay populated
  CHECK(signs.back() > 0);       // the near-sigma cluster stays populated
}

TEST_CASE("f_d_profile: strictly decreasing with the stated slope bound") {
  const uint64_t n = 100000, m = 1'000'000;  // d = 20
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(0.01 + (0.49 - 0.01) * double(i) / 99.0);
  auto prof = f_d_profile(n, m, grid);
  for (size_t i = 0; i + 1 < prof.size(); ++i) {
    CHECK(prof[i + 1].f < prof[i].f);
    double slope = (prof[i + 1].f - prof[i].f) / (prof[i + 1].s - prof[i].s);
    double smid = (prof[i].s + prof[i + 1].s) / 2.0;
    double bound = -(20.0 / (2.0 * (1.0 - smid * smid)) + 1.0 / smid);
    CHECK(slope <= bound + 0.1);
  }
}

TEST_CASE("f_d_profile: entropy growth as s -> 0") {
  auto prof = f_d_profile(1'000'000, 10'000'000, {1e-4, 1e-3});
  for (const auto& pt : prof) {
    CHECK(pt.f - std::log(1.0 / pt.s) >= 0.5);
    CHECK(pt.f - std::log(1.0 / pt.s) <= 1.5);
  }
  CHECK(prof[0].f > prof[1].f);
}

}  // TEST_SUITE
