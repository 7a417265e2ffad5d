#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace posetlab {

// Fixed-universe dynamic bitset used for element subsets of a poset.
// All set operations require both operands to share the same universe size.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int universe() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool none() const {
    for (uint64_t w : w_) if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  Bitset operator&(const Bitset& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a & b; }); }
  Bitset operator|(const Bitset& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a | b; }); }
  Bitset minus(const Bitset& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a & ~b; }); }

  bool subset_of(const Bitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  // Canonical order on subsets: ascending cardinality, then lexicographic on
  // the sorted element lists (the set whose first differing element is
  // smaller comes first).
  static bool canonical_less(const Bitset& a, const Bitset& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    for (size_t i = 0; i < a.w_.size(); ++i) {
      uint64_t d = a.w_[i] ^ b.w_[i];
      if (d) {
        uint64_t low = d & ~(d - 1);
        return (a.w_[i] & low) != 0;
      }
    }
    return false;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  size_t hash() const {
    size_t h = std::hash<int>()(n_);
    for (uint64_t w : w_) h = h * 1099511628211ull + std::hash<uint64_t>()(w);
    return h;
  }

private:
  template <class F>
  Bitset zip(const Bitset& o, F f) const {
    Bitset r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = f(w_[i], o.w_[i]);
    return r;
  }

  int n_ = 0;
  std::vector<uint64_t> w_;
};

struct BitsetHash {
  size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace posetlab
