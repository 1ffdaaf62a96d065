#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace nsg {

/// Genus-side (k; A) type key: k = F - 2m, A = (S intersect [m, m+k]) - m
/// stored as a bitmask over [0, k-1].
struct TypeKey {
  int k = 0;
  std::uint32_t a_mask = 0;

  auto operator<=>(const TypeKey&) const = default;

  std::vector<int> a_elements() const {
    std::vector<int> out;
    for (int i = 0; i < k; ++i)
      if (a_mask >> i & 1) out.push_back(i);
    return out;
  }
};

/// Counts of the semigroups with one fixed Frobenius number, broken down by
/// n(S), multiplicity and depth. Censuses merge by component-wise addition,
/// which is what makes parallel enumeration scheduler-independent.
struct FrobeniusCensus {
  int f = 0;
  std::uint64_t total = 0;
  std::map<int, std::uint64_t> by_n;
  std::map<int, std::uint64_t> by_multiplicity;
  std::map<int, std::uint64_t> by_depth;

  void merge(const FrobeniusCensus& o) {
    total += o.total;
    for (auto& [k, v] : o.by_n) by_n[k] += v;
    for (auto& [k, v] : o.by_multiplicity) by_multiplicity[k] += v;
    for (auto& [k, v] : o.by_depth) by_depth[k] += v;
  }

  bool operator==(const FrobeniusCensus&) const = default;

  std::string canonical_string() const {
    std::ostringstream os;
    os << "frobenius_census f=" << f << " total=" << total << "\n";
    auto line = [&os](const char* name,
                      const std::map<int, std::uint64_t>& m) {
      os << name;
      for (auto& [k, v] : m) os << ' ' << k << ':' << v;
      os << "\n";
    };
    line("by_n", by_n);
    line("by_multiplicity", by_multiplicity);
    line("by_depth", by_depth);
    return os.str();
  }
};

/// Counts of the semigroups with one fixed genus. The 2m-F and (k;A)
/// breakdowns cover depth 2 and depth 3 respectively; depth <= 1 (the
/// natural numbers and {0, f+1->}) sits in its own bucket, and deep counts
/// F > 3m.
struct GenusCensus {
  int g = 0;
  std::uint64_t total = 0;
  std::uint64_t depth_le1 = 0;
  std::uint64_t deep = 0;
  std::map<int, std::uint64_t> by_2m_minus_f;
  std::map<TypeKey, std::uint64_t> by_type;

  void merge(const GenusCensus& o) {
    total += o.total;
    depth_le1 += o.depth_le1;
    deep += o.deep;
    for (auto& [k, v] : o.by_2m_minus_f) by_2m_minus_f[k] += v;
    for (auto& [k, v] : o.by_type) by_type[k] += v;
  }

  bool operator==(const GenusCensus&) const = default;

  std::string canonical_string() const {
    std::ostringstream os;
    os << "genus_census g=" << g << " total=" << total
       << " depth_le1=" << depth_le1 << " deep=" << deep << "\n";
    os << "by_2m_minus_f";
    for (auto& [k, v] : by_2m_minus_f) os << ' ' << k << ':' << v;
    os << "\nby_type";
    for (auto& [key, v] : by_type) {
      os << ' ' << key.k << ';';
      bool first = true;
      for (int a : key.a_elements()) {
        if (!first) os << ',';
        os << a;
        first = false;
      }
      os << ':' << v;
    }
    os << "\n";
    return os.str();
  }
};

}  // namespace nsg
