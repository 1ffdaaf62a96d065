#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nsg/census.hpp"
#include "nsg/combinatorics.hpp"
#include "nsg/enumerate.hpp"
#include "nsg/errors.hpp"
#include "nsg/semigroup.hpp"

namespace nsg {

/// A depth-3 genus-side type (k; A): k = F - 2m and A = (S cap [m, m+k]) - m
/// with 0 in A and k not in A + A.
struct TypeKA {
  int k = 0;
  std::vector<int> a;
  int a_plus_a_cap = 0;  // |(A+A) cap [0, k]|

  TypeKey key() const {
    TypeKey t;
    t.k = k;
    for (int x : a) t.a_mask |= 1u << x;
    return t;
  }

  bool operator==(const TypeKA&) const = default;
};

namespace detail {

inline TypeKA make_type(int k, std::uint32_t a_mask) {
  TypeKA t;
  t.k = k;
  std::uint32_t sums = 0;
  for (int i = 0; i < k; ++i)
    if (a_mask >> i & 1) t.a.push_back(i);
  for (int i : t.a)
    for (int j : t.a)
      if (i + j <= k) sums |= 1u << (i + j);
  t.a_plus_a_cap = std::popcount(sums);
  return t;
}

}  // namespace detail

/// All A in A_k = {A subset of [0, k-1] : 0 in A, k not in A+A}, in
/// lexicographic (ascending bitmask) order.
inline std::vector<TypeKA> enumerate_Ak(int k) {
  if (k < 1) throw Error("k must be >= 1");
  if (k > 20)
    throw OutOfBudgetError("A_k scan is 2^(k-1) sets; limited to k <= 20");
  std::vector<TypeKA> out;
  const std::uint32_t limit = 1u << (k - 1);
  for (std::uint32_t rest = 0; rest < limit; ++rest) {
    const std::uint32_t a_mask = (rest << 1) | 1u;  // 0 is always in A
    // k not in A + A: no pair i + (k - i) with both ends in A (i = 0 would
    // need k itself in A, which [0, k-1] rules out)
    bool ok = true;
    for (int i = 1; 2 * i <= k && ok; ++i)
      if ((a_mask >> i & 1) && (a_mask >> (k - i) & 1)) ok = false;
    if (ok) out.push_back(detail::make_type(k, a_mask));
  }
  return out;
}

/// Extracts the (k; A) type of a depth-3 semigroup and validates A in A_k.
inline TypeKA type_of(const Semigroup& s) {
  if (s.depth() != 3)
    throw NotDepth3Error("type (k; A) requires depth 3, got depth " +
                         std::to_string(s.depth()));
  const int m = s.multiplicity();
  const int k = s.frobenius() - 2 * m;
  if (k > 31)
    throw OutOfBudgetError("k = " + std::to_string(k) +
                           " exceeds the 32-bit type mask");
  std::uint32_t a_mask = 0;
  for (int i = 0; i <= k; ++i)
    if (s.contains(m + i)) a_mask |= 1u << i;
  TypeKA t = detail::make_type(k, a_mask);
  // closure guarantees: 0 in A, A within [0, k-1], k not in A+A
  if (a_mask >> k & 1) throw Error("m + k cannot be a member");
  if (!(a_mask & 1)) throw Error("m must be a member");
  for (int i : t.a)
    for (int j : t.a)
      if (i + j == k) throw Error("k in A + A contradicts closure");
  return t;
}

/// Number of genus-g semigroups with 2m - F = k; the theorem value is
/// F(g - k). Requires k >= 1 and g >= k + 1 (every such semigroup has
/// depth 2 there).
inline std::uint64_t count_2m_minus_F(int g, int k,
                                      const EnumerateOptions& opt = {}) {
  if (k < 1) throw Error("k must be >= 1");
  if (g < k + 1) throw Error("need g >= k + 1");
  auto census = enumerate_by_genus(g, opt);
  auto it = census.by_2m_minus_f.find(k);
  return it == census.by_2m_minus_f.end() ? 0 : it->second;
}

/// Number of depth-2 semigroups of genus g; the corollary value is
/// F(g+1) - 1.
inline std::uint64_t depth2_by_genus(int g, const EnumerateOptions& opt = {}) {
  if (g < 0) throw Error("genus must be >= 0");
  auto census = enumerate_by_genus(g, opt);
  std::uint64_t total = 0;
  for (auto& [k, v] : census.by_2m_minus_f) total += v;
  return total;
}

/// One type class in a genus census, with its Fibonacci upper bound
/// F(g - |(A+A) cap [0,k]| + |A| - k - 1). Nonpositive Fibonacci indices
/// bound as 0; a nonzero count there is a hard failure.
struct TypeCensusRow {
  TypeKA type;
  std::uint64_t count = 0;
  int bound_index = 0;
  std::uint64_t bound = 0;
  bool ok = false;
};

struct TypeCensusResult {
  int g = 0;
  std::vector<TypeCensusRow> rows;
  bool all_ok = true;
  GenusCensus census;
};

inline TypeCensusResult type_census(int g, const EnumerateOptions& opt = {}) {
  TypeCensusResult result;
  result.g = g;
  result.census = enumerate_by_genus(g, opt);
  int max_k = 0;
  for (auto& [key, cnt] : result.census.by_type) max_k = std::max(max_k, key.k);
  for (int k = 1; k <= max_k; ++k) {
    for (const TypeKA& t : enumerate_Ak(k)) {
      TypeCensusRow row;
      row.type = t;
      auto it = result.census.by_type.find(t.key());
      row.count = it == result.census.by_type.end() ? 0 : it->second;
      row.bound_index =
          g - t.a_plus_a_cap + static_cast<int>(t.a.size()) - t.k - 1;
      row.bound = fibonacci(row.bound_index);
      row.ok = row.count <= row.bound;
      result.all_ok = result.all_ok && row.ok;
      result.rows.push_back(std::move(row));
    }
  }
  // every observed type must come from A_k; a type outside the rows above
  // would mean the closure guarantees failed
  for (auto& [key, cnt] : result.census.by_type) {
    bool found = false;
    for (auto& row : result.rows)
      if (row.type.key() == key) found = true;
    if (!found) {
      result.all_ok = false;
      TypeCensusRow row;
      row.type = detail::make_type(key.k, key.a_mask);
      row.count = cnt;
      row.ok = false;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

/// Fraction of genus-g semigroups with |F - 2m| > N. Depth <= 1 semigroups
/// are excluded from the numerator (F - 2m is not meaningful there); the
/// denominator is the full n_g.
inline double tail_mass_F_2m(int g, int N, const EnumerateOptions& opt = {}) {
  if (N < 0) throw Error("N must be >= 0");
  std::atomic<std::uint64_t> hits{0};
  auto census = enumerate_by_genus(
      g,
      [&](const Semigroup& s) {
        if (s.frobenius() < 0) return;
        const int m = s.multiplicity();
        const int f = s.frobenius();
        if (m > f) return;  // depth 1
        if (std::abs(f - 2 * m) > N) ++hits;
      },
      opt);
  return static_cast<double>(hits.load()) / static_cast<double>(census.total);
}

}  // namespace nsg
