#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace amc {

// A subset of a group's elements, as a bitset over canonical element
// indices 0..n-1.  Used pervasively for subgroup bookkeeping.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int nbits)
      : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  int capacity() const { return nbits_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  long long count() const {
    long long c = 0;
    for (uint64_t x : w_) c += __builtin_popcountll(x);
    return c;
  }

  bool operator==(const ElementSet& o) const {
    return nbits_ == o.nbits_ && w_ == o.w_;
  }
  bool operator!=(const ElementSet& o) const { return !(*this == o); }

  ElementSet& operator|=(const ElementSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  bool is_subset_of(const ElementSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // Canonical set order: at the first index where the sets differ, the set
  // containing that index comes first.  Equivalent to comparing the sorted
  // index lists lexicographically.
  bool lex_less(const ElementSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i) {
      uint64_t d = w_[i] ^ o.w_[i];
      if (d) {
        uint64_t low = d & -d;
        return (w_[i] & low) != 0;
      }
    }
    return false;
  }

  size_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t x : w_) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t x = w_[wi];
      while (x) {
        int b = __builtin_ctzll(x);
        fn(static_cast<int>(wi * 64 + b));
        x &= x - 1;
      }
    }
  }

  std::vector<int> to_indices() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  static ElementSet full(int nbits) {
    ElementSet s(nbits);
    for (int i = 0; i < nbits; ++i) s.set(i);
    return s;
  }

  static ElementSet from_indices(int nbits, const std::vector<int>& idx) {
    ElementSet s(nbits);
    for (int i : idx) s.set(i);
    return s;
  }

 private:
  int nbits_ = 0;
  std::vector<uint64_t> w_;
};

struct ElementSetHash {
  size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace amc
