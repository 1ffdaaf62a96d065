#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "nsg/combinatorics.hpp"
#include "nsg/enumerate.hpp"
#include "nsg/errors.hpp"
#include "nsg/rational.hpp"
#include "nsg/semigroup.hpp"

namespace nsg {

enum class Parity { kOdd, kEven };

inline Parity parity_of(int f) { return f % 2 ? Parity::kOdd : Parity::kEven; }

/// A (Y, Z) equivalence class. The empty key (Y = {}) collects every
/// semigroup of depth 1 or 2.
struct ClassKey {
  std::vector<int> y;  // sorted ascending; empty = the Empty key
  std::vector<int> z;  // sorted ascending; subset of [0, Max(Y)] \ Y

  bool empty() const { return y.empty(); }
  int max_y() const { return y.back(); }

  auto operator<=>(const ClassKey&) const = default;
};

/// A (Y, Z) pair with its derived sets and the three counting parameters.
struct YZSignature {
  std::vector<int> y, z;
  std::vector<int> two_y;  // {y1 + y2}
  std::vector<int> w1;     // (Y - Z - 1) intersect [0, inf)
  std::vector<int> w2;     // (Y - Z - 2) intersect [-1, inf)
  int alpha = 0;           // |2Y union W1|
  int alpha_prime = 0;     // |2Y union W2|
  int beta = 0;            // Max(Y) + 1 - |Y union Z|

  int forced_count(Parity p) const {
    return p == Parity::kOdd ? alpha : alpha_prime;
  }
};

namespace detail {

inline std::vector<int> sorted_unique(std::span<const int> xs) {
  std::vector<int> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// Populates 2Y, W1, W2 and alpha / alpha' / beta from the definitions.
/// Throws InvalidPairError unless Y is nonempty, Z is a subset of
/// [0, Max(Y)] and Y, Z are disjoint.
inline YZSignature derive_params(std::span<const int> y_in,
                                 std::span<const int> z_in) {
  YZSignature sig;
  sig.y = detail::sorted_unique(y_in);
  sig.z = detail::sorted_unique(z_in);
  if (sig.y.empty()) throw InvalidPairError("Y must be nonempty");
  if (sig.y.front() < 0) throw InvalidPairError("Y must be nonnegative");
  const int l = sig.y.back();
  std::set<int> yset(sig.y.begin(), sig.y.end());
  for (int z : sig.z) {
    if (z < 0 || z > l)
      throw InvalidPairError("Z must be a subset of [0, Max(Y)]");
    if (yset.count(z)) throw InvalidPairError("Y and Z must be disjoint");
  }
  std::set<int> two_y, w1, w2;
  for (int a : sig.y)
    for (int b : sig.y) two_y.insert(a + b);
  for (int a : sig.y)
    for (int z : sig.z) {
      if (a - z - 1 >= 0) w1.insert(a - z - 1);
      if (a - z - 2 >= -1) w2.insert(a - z - 2);
    }
  sig.two_y.assign(two_y.begin(), two_y.end());
  sig.w1.assign(w1.begin(), w1.end());
  sig.w2.assign(w2.begin(), w2.end());
  std::set<int> u1 = two_y, u2 = two_y;
  u1.insert(w1.begin(), w1.end());
  u2.insert(w2.begin(), w2.end());
  sig.alpha = static_cast<int>(u1.size());
  sig.alpha_prime = static_cast<int>(u2.size());
  sig.beta = l + 1 - static_cast<int>(sig.y.size() + sig.z.size());
  return sig;
}

inline YZSignature derive_params(const ClassKey& key) {
  return derive_params(key.y, key.z);
}

/// Y(S) = {t : fbar - t in S, 0 <= t < fbar} and, when Y is nonempty,
/// Z(S) = {x - f + fbar : x in S, f/2 < x <= f - m}.
inline ClassKey signature_of(const Semigroup& s) {
  const int f = s.frobenius();
  const int fb = fbar(f);
  ClassKey key;
  for (int t = 0; t < fb; ++t)
    if (s.contains(fb - t)) key.y.push_back(t);
  if (key.y.empty()) return key;
  const int m = s.multiplicity();
  for (int x = fb + 1; x <= f - m; ++x)
    if (2 * x > f && s.contains(x)) key.z.push_back(x - f + fb);
  std::sort(key.y.begin(), key.y.end());
  std::sort(key.z.begin(), key.z.end());
  return key;
}

namespace detail {

inline void require_formula_range(const ClassKey& key, int f) {
  if (key.empty()) throw InvalidPairError("Y must be nonempty");
  if (f <= 6 * key.max_y() + 6) throw FTooSmallError(f, key.max_y());
}

}  // namespace detail

/// N(Y, Z, f) = 2^(fbar - Max(Y) - 1 - alpha) for odd f, alpha' for even f.
/// Only valid above the threshold f > 6 Max(Y) + 6.
inline std::uint64_t class_count(const ClassKey& key, int f) {
  detail::require_formula_range(key, f);
  const YZSignature sig = derive_params(key);
  const int e = fbar(f) - key.max_y() - 1 - sig.forced_count(parity_of(f));
  if (e < 0 || e > 62) throw std::overflow_error("class_count exponent");
  return 1ull << e;
}

/// N(Y, Z, f, n): the binomial C(fbar - Max(Y) - 1 - alpha,
/// n - Max(Y) - 1 - alpha + beta); zero outside the valid index range.
inline std::uint64_t class_count_by_n(const ClassKey& key, int f, int n) {
  detail::require_formula_range(key, f);
  const YZSignature sig = derive_params(key);
  const int a = sig.forced_count(parity_of(f));
  const int upper = fbar(f) - key.max_y() - 1 - a;
  const int lower = n - key.max_y() - 1 - a + sig.beta;
  return binomial(upper, lower);
}

/// The explicit member construction for one class: the fixed base set, the
/// forced elements near f and the freely choosable positions.
struct ClassConstruction {
  std::vector<int> base;            // members below the free interval plus forced
  std::vector<int> forced;          // (f-1) - (2Y u W1)  [odd f]
                                    // (f-2) - (2Y u W2)  [even f]
  std::vector<int> free_positions;  // free interval minus forced
  int free_lo = 0, free_hi = 0;     // [f - fbar + Max(Y) + 1, f - 1]
};

inline ClassConstruction class_construction(const ClassKey& key, int f) {
  detail::require_formula_range(key, f);
  const YZSignature sig = derive_params(key);
  const int fb = fbar(f);
  const int l = key.max_y();
  ClassConstruction c;
  c.free_lo = f - fb + l + 1;
  c.free_hi = f - 1;

  std::set<int> forced;
  const bool odd = parity_of(f) == Parity::kOdd;
  const auto& w = odd ? sig.w1 : sig.w2;
  const int anchor = odd ? f - 1 : f - 2;
  for (int t : sig.two_y) forced.insert(anchor - t);
  for (int t : w) forced.insert(anchor - t);
  for (int x : forced) {
    // Location guarantees from the construction lemmas: forced elements sit
    // inside the free interval, clear of the Z region [f-fb, f-fb+l].
    if (x < c.free_lo || x > c.free_hi)
      throw Error("forced element " + std::to_string(x) +
                  " escapes the free interval");
  }
  c.forced.assign(forced.begin(), forced.end());

  std::set<int> base;
  for (int y : key.y) base.insert(fb - y);
  for (int z : key.z) base.insert(z + f - fb);
  base.insert(forced.begin(), forced.end());
  c.base.assign(base.begin(), base.end());

  for (int x = c.free_lo; x <= c.free_hi; ++x)
    if (!forced.count(x)) c.free_positions.push_back(x);
  return c;
}

/// Constructs every member of the class explicitly, validates each through
/// build() and signature_of(), feeds them to the visitor and returns the
/// count.
inline std::uint64_t class_members(const ClassKey& key, int f,
                                   const SemigroupVisitor& visit = {}) {
  const ClassConstruction c = class_construction(key, f);
  const int free = static_cast<int>(c.free_positions.size());
  if (free > 26)
    throw OutOfBudgetError("class has 2^" + std::to_string(free) +
                           " members; refusing to materialize");
  std::uint64_t count = 0;
  std::vector<int> members;
  for (std::uint32_t mask = 0; mask < (1u << free); ++mask) {
    members = c.base;
    for (int i = 0; i < free; ++i)
      if (mask >> i & 1) members.push_back(c.free_positions[i]);
    Semigroup s = Semigroup::build(f, members);  // throws if not closed
    if (signature_of(s) != key)
      throw Error("constructed member has the wrong signature");
    ++count;
    if (visit) visit(s);
  }
  return count;
}

/// All (Y, Z) pairs with Max(Y) <= L, ordered by Max(Y), then by the Y set
/// as a bitmask, then by the Z set as a bitmask.
inline std::vector<ClassKey> enumerate_class_keys(int L) {
  std::vector<ClassKey> keys;
  for (int l = 0; l <= L; ++l) {
    const std::uint32_t below = 1u << l;  // subsets of [0, l-1]
    for (std::uint32_t ymask = 0; ymask < below; ++ymask) {
      ClassKey proto;
      for (int i = 0; i < l; ++i)
        if (ymask >> i & 1) proto.y.push_back(i);
      proto.y.push_back(l);
      std::vector<int> allowed;
      for (int i = 0; i <= l; ++i)
        if (i != l && !(ymask >> i & 1)) allowed.push_back(i);
      const std::uint32_t zn = 1u << allowed.size();
      for (std::uint32_t zmask = 0; zmask < zn; ++zmask) {
        ClassKey key = proto;
        for (std::size_t i = 0; i < allowed.size(); ++i)
          if (zmask >> i & 1) key.z.push_back(allowed[i]);
        keys.push_back(std::move(key));
      }
    }
  }
  return keys;
}

/// Partial sum of Backelin's constant: 1 + sum over Max(Y) <= L of
/// 2^-(Max(Y) + 1 + alpha), with alpha' for the even-f constant. Exact and
/// monotone nondecreasing in L.
inline Dyadic constant_partial_sum(int L, Parity parity) {
  Dyadic total = 1;
  for (const ClassKey& key : enumerate_class_keys(L)) {
    const YZSignature sig = derive_params(key);
    total += Dyadic::pow2(-(key.max_y() + 1 + sig.forced_count(parity)));
  }
  return total;
}

struct MonotonicityRow {
  int f;
  std::uint64_t count_f;
  std::uint64_t count_f_plus_2;
  bool increasing;
};

/// Checks N(f) < N(f+2) for every 1 <= f <= f_max by exhaustive enumeration.
inline std::vector<MonotonicityRow> verify_monotonicity(
    int f_max, const EnumerateOptions& opt = {}) {
  if (f_max < 1) throw Error("f_max must be >= 1");
  std::vector<std::uint64_t> counts(f_max + 3);
  for (int f = 1; f <= f_max + 2; ++f)
    counts[f] = enumerate_by_frobenius(f, opt).total;
  std::vector<MonotonicityRow> rows;
  rows.reserve(f_max);
  for (int f = 1; f <= f_max; ++f)
    rows.push_back({f, counts[f], counts[f + 2], counts[f] < counts[f + 2]});
  return rows;
}

}  // namespace nsg
