#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace cubemedian {

/// Fixed-size dynamic bitset. Vertex sets and halfspace sides are Bits over
/// the vertex ids of one window; class-side signatures are Bits over class ids.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }
  bool empty_domain() const { return n_ == 0; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void assign(int i, bool v) { v ? set(i) : reset(i); }

  void set_all() {
    for (auto& w : w_) w = ~std::uint64_t(0);
    trim();
  }
  void clear() {
    for (auto& w : w_) w = 0;
  }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& operator^=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

  Bits complement() const {
    Bits r = *this;
    for (auto& w : r.w_) w = ~w;
    r.trim();
    return r;
  }
  Bits andnot(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
    return r;
  }

  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool is_subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }

  /// a, b, c blockwise majority: (a&b)|(b&c)|(a&c).
  static Bits majority(const Bits& a, const Bits& b, const Bits& c) {
    Bits r(a.n_);
    for (std::size_t i = 0; i < r.w_.size(); ++i)
      r.w_[i] = (a.w_[i] & b.w_[i]) | (b.w_[i] & c.w_[i]) | (a.w_[i] & c.w_[i]);
    return r;
  }

  int find_first() const { return find_next(-1); }
  int find_next(int i) const {
    for (int j = i + 1; j < n_; ++j) {
      int blk = j >> 6;
      std::uint64_t w = w_[blk] >> (j & 63);
      if (!w) {
        j = (blk + 1) * 64 - 1;
        continue;
      }
      return j + std::countr_zero(w);
    }
    return -1;
  }

  template <class F>
  void for_each(F f) const {
    for (int v = find_first(); v >= 0; v = find_next(v)) f(v);
  }
  std::vector<int> to_vector() const {
    std::vector<int> r;
    r.reserve(count());
    for_each([&](int v) { r.push_back(v); });
    return r;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : w_) {
      h ^= std::hash<std::uint64_t>{}(w);
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty())
      w_.back() &= (~std::uint64_t(0)) >> (64 - n_ % 64);
  }
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace cubemedian
