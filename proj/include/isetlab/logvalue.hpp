#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace isetlab {

// A real carried as (sign, ln|value|). Sign 0 pairs with log_mag = -inf.
// Keeps exponentially large/small moment quantities finite in arithmetic.
struct LogValue {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static LogValue zero() { return {}; }
  static LogValue one() { return {1, 0.0}; }

  static LogValue from_log(double lm, int s = 1) {
    if (s == 0 || lm == -std::numeric_limits<double>::infinity()) return {};
    return {s > 0 ? 1 : -1, lm};
  }

  static LogValue from_double(double x) {
    if (x == 0.0) return {};
    return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
  }

  bool is_zero() const { return sign == 0; }

  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }

  LogValue operator*(const LogValue& o) const {
    if (sign == 0 || o.sign == 0) return {};
    return {sign * o.sign, log_mag + o.log_mag};
  }

  LogValue operator/(const LogValue& o) const {
    if (o.sign == 0) throw std::domain_error("log-value division by zero");
    if (sign == 0) return {};
    return {sign * o.sign, log_mag - o.log_mag};
  }

  LogValue pow(double e) const {
    if (sign == 0) return e == 0.0 ? one() : zero();
    if (sign < 0) throw std::domain_error("log-value pow of negative base");
    return {1, log_mag * e};
  }

  LogValue operator-() const { return {-sign, log_mag}; }

  LogValue operator+(const LogValue& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    const LogValue& big = log_mag >= o.log_mag ? *this : o;
    const LogValue& sml = log_mag >= o.log_mag ? o : *this;
    double d = sml.log_mag - big.log_mag;  // <= 0
    if (big.sign == sml.sign) return {big.sign, big.log_mag + std::log1p(std::exp(d))};
    double r = -std::expm1(d);  // 1 - exp(d) in [0,1]
    if (r <= 0.0) return {};
    return {big.sign, big.log_mag + std::log(r)};
  }

  LogValue operator-(const LogValue& o) const { return *this + (-o); }

  // Compares by signed magnitude.
  bool operator<(const LogValue& o) const {
    if (sign != o.sign) return sign < o.sign;
    if (sign == 0) return false;
    return sign > 0 ? log_mag < o.log_mag : log_mag > o.log_mag;
  }
};

// ln C(a, b). Returns -inf when b > a. lgamma is the primitive; when the
// short side is tiny the product form avoids cancellation between the
// two huge lgamma terms.
inline double log_binomial(uint64_t a, uint64_t b) {
  if (b > a) return -std::numeric_limits<double>::infinity();
  uint64_t s = std::min(b, a - b);
  if (s == 0) return 0.0;
  if (s <= 64) {
    double acc = 0.0;
    for (uint64_t i = 0; i < s; ++i)
      acc += std::log(double(a - i)) - std::log(double(i + 1));
    return acc;
  }
  return std::lgamma(double(a) + 1.0) - std::lgamma(double(b) + 1.0) -
         std::lgamma(double(a - b) + 1.0);
}

// Continuous interpolation of ln C(a, b) for real b in [0, a].
inline double log_binomial_real(double a, double b) {
  if (b < 0.0 || b > a) return -std::numeric_limits<double>::infinity();
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

}  // namespace isetlab
