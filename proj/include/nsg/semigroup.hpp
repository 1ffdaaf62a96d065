#pragma once

#include <span>
#include <vector>

#include "nsg/bits.hpp"
#include "nsg/errors.hpp"

namespace nsg {

/// Largest Frobenius number the fixed-capacity bit vectors support
/// (generator search needs indices up to f + m <= 2f + 1 < Bits::kCapacity).
inline constexpr int kMaxFrobenius = 250;

/// floor((f-1)/2), the paper-wide overline-f.
inline constexpr int fbar(int f) { return (f - 1) >> 1; }

/// An immutable numerical semigroup: the Frobenius number together with a
/// membership bit vector over [0, f+1]. Every integer > f+1 is implicitly a
/// member. frobenius == -1 encodes the natural numbers (genus 0).
class Semigroup {
 public:
  /// The natural numbers; genus 0, Frobenius number -1.
  static Semigroup natural() {
    Semigroup s;
    s.f_ = -1;
    s.bits_.set(0);
    return s;
  }

  /// Validates and builds the semigroup whose members in [1, f+1] are
  /// exactly member_list plus f+1. Throws FrobeniusViolatedError if f is
  /// listed, NotClosedError if some sum of members lands on a gap <= f.
  static Semigroup build(int f, std::span<const int> member_list) {
    if (f < 1 || f > kMaxFrobenius)
      throw Error("Frobenius number out of range: " + std::to_string(f));
    Semigroup s;
    s.f_ = f;
    s.bits_.set(0);
    s.bits_.set(f + 1);
    for (int x : member_list) {
      if (x == f) throw FrobeniusViolatedError(f);
      if (x < 1 || x > f + 1)
        throw Error("member " + std::to_string(x) + " outside [1, f+1]");
      s.bits_.set(x);
    }
    int a = 0, b = 0;
    if (!closed(s.bits_, f, &a, &b)) throw NotClosedError(a, b, f);
    return s;
  }

  static Semigroup build(int f, std::initializer_list<int> member_list) {
    return build(f, std::span<const int>(member_list.begin(), member_list.size()));
  }

  /// Trusted constructor for the enumeration engines, which only produce
  /// closed sets. bits must already satisfy the class invariants.
  static Semigroup assume_valid(int f, const Bits& bits) {
    Semigroup s;
    s.f_ = f;
    s.bits_ = bits;
    return s;
  }

  int frobenius() const { return f_; }

  bool contains(int x) const {
    if (x < 0) return false;
    if (x > f_ + 1) return true;
    return bits_.test(x);
  }

  /// Count of members in [1, f]; n(S) in the paper.
  int n() const { return f_ < 1 ? 0 : bits_.count_range(1, f_); }

  /// Count of gaps.
  int genus() const { return f_ < 0 ? 0 : f_ - n(); }

  /// Least nonzero member.
  int multiplicity() const { return f_ < 0 ? 1 : bits_.next(1); }

  /// Depth ceil((f+1)/m); 0 for the natural numbers.
  int depth() const {
    if (f_ < 0) return 0;
    int m = multiplicity();
    return (f_ + 1 + m - 1) / m;
  }

  /// Members in [1, f], ascending.
  std::vector<int> members() const {
    std::vector<int> out;
    if (f_ < 1) return out;
    for (int i = bits_.next(1); i >= 0 && i <= f_; i = bits_.next(i + 1))
      out.push_back(i);
    return out;
  }

  const Bits& bits() const { return bits_; }

  bool operator==(const Semigroup&) const = default;

  /// Closure predicate on a membership bit vector over [0, f+1] (bit f must
  /// be clear): every sum of two nonzero members that is <= f must itself be
  /// a member. On failure the witness pair is stored in *wa, *wb.
  static bool closed(const Bits& bits, int f, int* wa = nullptr,
                     int* wb = nullptr) {
    for (int i = bits.next(1); i >= 0 && 2 * i <= f; i = bits.next(i + 1)) {
      Bits sums = bits.shifted(i);
      sums.truncate(f);
      if (!sums.subset_of(bits)) {
        if (wa) {
          Bits bad = sums.andnot(bits);
          int s = bad.lowest();
          *wa = i;
          *wb = s - i;
        }
        return false;
      }
    }
    return true;
  }

 private:
  Semigroup() = default;

  int f_ = -1;
  Bits bits_;
};

/// The scalar invariants of a semigroup.
struct InvariantProfile {
  int f;     ///< Frobenius number
  int g;     ///< genus
  int m;     ///< multiplicity
  int q;     ///< depth
  int n;     ///< |S intersect [1, f]|
  int e;     ///< embedding dimension
  bool med;  ///< e == m

  bool operator==(const InvariantProfile&) const = default;
};

/// All nonzero members x <= f + m that are not a sum of two nonzero members.
inline std::vector<int> min_generators(const Semigroup& s) {
  if (s.frobenius() < 0) return {1};
  const int f = s.frobenius();
  const int m = s.multiplicity();
  const int hi = f + m;
  Bits ext = s.bits();
  for (int x = f + 2; x <= hi; ++x) ext.set(x);
  Bits sums;
  for (int y = ext.next(1); y >= 0 && 2 * y <= hi; y = ext.next(y + 1)) {
    Bits t = ext.shifted(y);
    t.reset(y);  // y + 0 is not a sum of two nonzero members
    sums |= t;
  }
  std::vector<int> gens;
  for (int x = ext.next(1); x >= 0 && x <= hi; x = ext.next(x + 1))
    if (!sums.test(x)) gens.push_back(x);
  return gens;
}

inline InvariantProfile profile(const Semigroup& s) {
  InvariantProfile p{};
  p.f = s.frobenius();
  p.n = s.n();
  p.g = s.genus();
  p.m = s.multiplicity();
  p.q = s.depth();
  p.e = static_cast<int>(min_generators(s).size());
  p.med = (p.e == p.m);
  return p;
}

/// Max-embedding-dimension test by the shift criterion: S is MED iff
/// (S \ {0}) - m is again a numerical semigroup. Deliberately does not
/// touch the generator count, so it can serve as an independent oracle
/// for profile().med.
inline bool is_med(const Semigroup& s) {
  if (s.frobenius() < 0) return true;  // (N \ {0}) - 1 = N
  const int f = s.frobenius();
  const int m = s.multiplicity();
  const int fs = f - m;  // Frobenius number of the shifted set
  if (fs < 1) return true;
  Bits shifted;
  shifted.set(0);
  for (int i = 1; i <= fs + 1; ++i)
    if (s.contains(i + m)) shifted.set(i);
  return Semigroup::closed(shifted, fs);
}

}  // namespace nsg
