#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace nsg {

/// Fixed-capacity bitset sized for desk-scale computations. Capacity 512
/// covers membership vectors up to index f + m <= 2f + 1 for every f the
/// enumeration budget can reach.
class Bits {
 public:
  static constexpr int kWords = 8;
  static constexpr int kCapacity = kWords * 64;

  constexpr Bits() = default;

  bool test(int i) const {
    return (w_[static_cast<unsigned>(i) >> 6] >> (i & 63)) & 1u;
  }
  void set(int i) { w_[static_cast<unsigned>(i) >> 6] |= 1ull << (i & 63); }
  void reset(int i) { w_[static_cast<unsigned>(i) >> 6] &= ~(1ull << (i & 63)); }
  void clear() { w_.fill(0); }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  /// Popcount of bits in [lo, hi] inclusive.
  int count_range(int lo, int hi) const {
    if (lo > hi) return 0;
    int c = 0;
    for (int word = lo >> 6; word <= hi >> 6; ++word) {
      std::uint64_t w = w_[word];
      int base = word << 6;
      if (base < lo) w &= ~0ull << (lo - base);
      if (base + 63 > hi) w &= ~0ull >> (63 - (hi - base));
      c += std::popcount(w);
    }
    return c;
  }

  /// Index of the lowest set bit, or -1 if empty.
  int lowest() const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i]) return (i << 6) + std::countr_zero(w_[i]);
    return -1;
  }

  /// Index of the highest set bit, or -1 if empty.
  int highest() const {
    for (int i = kWords - 1; i >= 0; --i)
      if (w_[i]) return (i << 6) + 63 - std::countl_zero(w_[i]);
    return -1;
  }

  /// Next set bit at index >= i, or -1.
  int next(int i) const {
    if (i >= kCapacity) return -1;
    int word = i >> 6;
    std::uint64_t w = w_[word] & (~0ull << (i & 63));
    while (true) {
      if (w) return (word << 6) + std::countr_zero(w);
      if (++word == kWords) return -1;
      w = w_[word];
    }
  }

  Bits& operator|=(const Bits& o) {
    for (int i = 0; i < kWords; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (int i = 0; i < kWords; ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  Bits andnot(const Bits& o) const {
    Bits r;
    for (int i = 0; i < kWords; ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
  }

  bool intersects(const Bits& o) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  /// True iff every set bit of *this is also set in o.
  bool subset_of(const Bits& o) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  /// Left shift by k (towards higher indices); bits shifted past the
  /// capacity are dropped.
  Bits shifted(int k) const {
    Bits r;
    const int wshift = k >> 6, bshift = k & 63;
    if (bshift == 0) {
      for (int i = kWords - 1; i >= wshift; --i) r.w_[i] = w_[i - wshift];
    } else {
      for (int i = kWords - 1; i > wshift; --i)
        r.w_[i] = (w_[i - wshift] << bshift) |
                  (w_[i - wshift - 1] >> (64 - bshift));
      r.w_[wshift] = w_[0] << bshift;
    }
    return r;
  }

  /// Keep only bits with index <= hi.
  void truncate(int hi) {
    if (hi < 0) {
      clear();
      return;
    }
    for (int word = (hi >> 6) + 1; word < kWords; ++word) w_[word] = 0;
    if ((hi & 63) != 63) w_[hi >> 6] &= ~0ull >> (63 - (hi & 63));
  }

  /// Bitwise reversal around a pivot: result bit i set iff bit (pivot - i)
  /// set, over i in [0, pivot]. Used to turn a sum mask R into the forbidden
  /// mask {f - r}.
  Bits reversed_around(int pivot) const {
    Bits r;
    for (int i = next(0); i >= 0 && i <= pivot; i = next(i + 1))
      r.set(pivot - i);
    return r;
  }

  bool operator==(const Bits&) const = default;

 private:
  std::array<std::uint64_t, kWords> w_{};
};

}  // namespace nsg
