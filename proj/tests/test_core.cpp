#include <cmath>
#include <unordered_set>

#include "doctest.h"
#include "isetlab/logvalue.hpp"
#include "isetlab/rng.hpp"
#include "isetlab/vertex_set.hpp"

using namespace isetlab;

TEST_SUITE("core") {

TEST_CASE("rng: identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng: below stays in range and covers small ranges") {
  Rng rng(7);
  std::unordered_set<uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    uint64_t x = rng.below(13);
    CHECK(x < 13);
    seen.insert(x);
  }
  CHECK(seen.size() == 13);
  CHECK(rng.below(0) == 0);
  CHECK(rng.below(1) == 0);
}

TEST_CASE("rng: derive_seed is stable and spreads") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("vertex set: basic ops and cached size") {
  VertexSet s(100);
  s.set(3);
  s.set(99);
  s.set(3);
  CHECK(s.size() == 2);
  CHECK(s.test(3));
  CHECK(!s.test(4));
  s.reset(3);
  CHECK(s.size() == 1);
  CHECK(s.vertices() == std::vector<uint32_t>{99});
  CHECK_THROWS_AS(s.set(100), std::invalid_argument);
  CHECK_THROWS_AS(s.hamming(VertexSet(5)), std::invalid_argument);
}

TEST_CASE("vertex set: lex order matches ascending-sequence order") {
  auto a = VertexSet::of(5, {0, 3});
  auto b = VertexSet::of(5, {1, 2});
  auto c = VertexSet::of(5, {0, 4});
  CHECK(VertexSet::lex_less(a, b));
  CHECK(VertexSet::lex_less(a, c));
  CHECK(VertexSet::lex_less(c, b));
  CHECK(!VertexSet::lex_less(a, a));
}

TEST_CASE("vertex set: hamming via intersection identity") {
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    VertexSet a(70), b(70);
    for (int i = 0; i < 20; ++i) {
      a.set(uint32_t(rng.below(70)));
      b.set(uint32_t(rng.below(70)));
    }
    CHECK(a.hamming(b) == a.size() + b.size() - 2 * a.intersect_count(b));
  }
}

TEST_CASE("log value: arithmetic against doubles") {
  auto x = LogValue::from_double(3.5);
  auto y = LogValue::from_double(-1.25);
  CHECK((x * y).to_double() == doctest::Approx(-4.375).epsilon(1e-12));
  CHECK((x / y).to_double() == doctest::Approx(-2.8).epsilon(1e-12));
  CHECK((x + y).to_double() == doctest::Approx(2.25).epsilon(1e-12));
  CHECK((x - y).to_double() == doctest::Approx(4.75).epsilon(1e-12));
  CHECK((y + (-y)).is_zero());
  CHECK(LogValue::zero().to_double() == 0.0);
  CHECK((x * LogValue::zero()).is_zero());
  CHECK_THROWS_AS(x / LogValue::zero(), std::domain_error);
}

TEST_CASE("log value: stable at huge exponents") {
  auto big = LogValue::from_log(1e9);
  auto small = LogValue::from_log(-1e9);
  auto p = big * big;
  CHECK(p.log_mag == doctest::Approx(2e9));
  CHECK((big * small).log_mag == doctest::Approx(0.0));
  CHECK((big + big).log_mag == doctest::Approx(1e9 + std::log(2.0)));
  CHECK((big - big).is_zero());
}

TEST_CASE("log value: exp/log round trip to 1e-12 up to 1e6 magnitudes") {
  for (double lm : {0.0, 1.0, 123.456, 1e5, 1e6}) {
    auto v = LogValue::from_log(lm);
    auto w = v * LogValue::from_log(-lm);
    CHECK(w.log_mag == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::fabs(v.pow(2.0).log_mag - 2.0 * lm) <= 1e-12 * std::max(1.0, lm));
  }
}

TEST_CASE("log binomial: exact small values and symmetry") {
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(std::exp(log_binomial(45, 5)) == doctest::Approx(1221759.0).epsilon(1e-12));
  CHECK(log_binomial(50, 20) == doctest::Approx(log_binomial(50, 30)).epsilon(1e-13));
  CHECK(std::isinf(log_binomial(5, 9)));
  CHECK(log_binomial(7, 0) == 0.0);
  // huge first argument, tiny second: no cancellation blowup
  double l = log_binomial(499999500000ULL, 5);
  double expect = 5 * std::log(499999500000.0) - std::log(120.0);
  CHECK(l == doctest::Approx(expect).epsilon(1e-10));
}

}  // TEST_SUITE
