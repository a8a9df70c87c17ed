#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace isetlab {

// Fixed-width bit vector over vertices 0..n-1 with a cached popcount.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static VertexSet of(uint32_t n, std::initializer_list<uint32_t> vs) {
    VertexSet s(n);
    for (uint32_t v : vs) s.set(v);
    return s;
  }

  uint32_t universe() const { return n_; }
  uint32_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool test(uint32_t v) const { return (w_[v >> 6] >> (v & 63)) & 1; }

  void set(uint32_t v) {
    check_vertex(v);
    uint64_t b = 1ULL << (v & 63);
    if (!(w_[v >> 6] & b)) {
      w_[v >> 6] |= b;
      ++count_;
    }
  }

  void reset(uint32_t v) {
    check_vertex(v);
    uint64_t b = 1ULL << (v & 63);
    if (w_[v >> 6] & b) {
      w_[v >> 6] &= ~b;
      --count_;
    }
  }

  uint32_t intersect_count(const VertexSet& o) const {
    check_width(o);
    uint32_t c = 0;
    for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }

  bool intersects(const VertexSet& o) const {
    check_width(o);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  uint32_t hamming(const VertexSet& o) const {
    check_width(o);
    uint32_t c = 0;
    for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] ^ o.w_[i]);
    return c;
  }

  bool is_subset_of(const VertexSet& o) const {
    check_width(o);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  VertexSet operator&(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a & b; }); }
  VertexSet operator|(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a | b; }); }
  VertexSet operator^(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a ^ b; }); }
  VertexSet minus(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a & ~b; }); }

  std::vector<uint32_t> vertices() const {
    std::vector<uint32_t> out;
    out.reserve(count_);
    for_each([&](uint32_t v) { out.push_back(v); });
    return out;
  }

  // Visits set bits in ascending order.
  template <class F>
  void for_each(F f) const {
    for (size_t i = 0; i < w_.size(); ++i) {
      uint64_t w = w_[i];
      while (w) {
        f(uint32_t(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const VertexSet& o) const { return !(*this == o); }

  // Order of the ascending vertex sequences: {0,3} < {1,2}. At the lowest
  // differing vertex, the set that contains it comes first.
  static bool lex_less(const VertexSet& a, const VertexSet& b) {
    for (size_t i = 0; i < a.w_.size(); ++i) {
      uint64_t d = a.w_[i] ^ b.w_[i];
      if (d) return a.w_[i] & (d & -d);
    }
    return false;
  }

  size_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (uint64_t w : w_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return size_t(h);
  }

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  template <class Op>
  VertexSet apply(const VertexSet& o, Op op) const {
    check_width(o);
    VertexSet r(n_);
    uint32_t c = 0;
    for (size_t i = 0; i < w_.size(); ++i) {
      r.w_[i] = op(w_[i], o.w_[i]);
      c += std::popcount(r.w_[i]);
    }
    r.count_ = c;
    return r;
  }

  void check_vertex(uint32_t v) const {
    if (v >= n_) throw std::invalid_argument("vertex out of range");
  }
  void check_width(const VertexSet& o) const {
    if (n_ != o.n_) throw std::invalid_argument("vertex-set width mismatch");
  }

  uint32_t n_ = 0;
  std::vector<uint64_t> w_;
  uint32_t count_ = 0;
};

struct VertexSetHash {
  size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace isetlab
