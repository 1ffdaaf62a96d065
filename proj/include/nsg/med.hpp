#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nsg/enumerate.hpp"
#include "nsg/semigroup.hpp"

namespace nsg {

/// MED(f): count of max-embedding-dimension semigroups with Frobenius
/// number f, decided by the generator-count criterion e = m.
inline std::uint64_t count_med(int f, const EnumerateOptions& opt = {}) {
  std::atomic<std::uint64_t> hits{0};
  enumerate_by_frobenius(
      f,
      [&](const Semigroup& s) {
        const auto p = profile(s);
        if (p.e == p.m) ++hits;
      },
      opt);
  return hits.load();
}

/// MED(m, f) for every multiplicity at once, same criterion as count_med.
inline std::map<int, std::uint64_t> med_by_multiplicity(
    int f, const EnumerateOptions& opt = {}) {
  std::map<int, std::uint64_t> out;
  std::mutex mu;
  enumerate_by_frobenius(
      f,
      [&](const Semigroup& s) {
        const auto p = profile(s);
        if (p.e != p.m) return;
        std::scoped_lock lock(mu);
        out[p.m]++;
      },
      opt);
  return out;
}

/// Independent oracle for MED(m, f): count the numerical semigroups that
/// contain m and have Frobenius number f - m. Never consults generator
/// counts, only membership.
inline std::uint64_t count_med_by_shift(int m, int f,
                                        const EnumerateOptions& opt = {}) {
  if (m < 2 || m > f + 1) return 0;
  if (m == f + 1) return 1;  // the shifted semigroup is N itself
  const int fs = f - m;
  if (fs < 1) return 0;      // no semigroup has Frobenius number 0
  if (m == fs) return 0;     // the Frobenius number is never a member
  if (m > fs) return enumerate_by_frobenius(fs, opt).total;  // m always in S
  std::atomic<std::uint64_t> hits{0};
  enumerate_by_frobenius(
      fs,
      [&](const Semigroup& s) {
        if (s.contains(m)) ++hits;
      },
      opt);
  return hits.load();
}

struct MedTableRow {
  int f = 0;
  std::uint64_t med = 0;
};

/// (f, MED(f)) for f = 1..f_max.
inline std::vector<MedTableRow> med_table(int f_max,
                                          const EnumerateOptions& opt = {}) {
  std::vector<MedTableRow> rows;
  rows.reserve(f_max);
  for (int f = 1; f <= f_max; ++f) rows.push_back({f, count_med(f, opt)});
  return rows;
}

struct MedBounds {
  int f = 0;
  std::uint64_t med = 0;
  bool lower_ok = false;    // 2^(-8/3) 2^(f/3) < MED(f), checked exactly
  double upper_ratio = 0.0; // MED(f) / 2^(0.41385 f); no explicit c' exists,
                            // so the artifact reports the ratio instead
};

inline MedBounds med_bounds_check(int f, const EnumerateOptions& opt = {}) {
  MedBounds b;
  b.f = f;
  b.med = count_med(f, opt);
  // 2^((f-8)/3) < med  <=>  2^(f-8) < med^3  <=>  2^f < 256 * med^3
  const unsigned __int128 cube =
      static_cast<unsigned __int128>(b.med) * b.med * b.med;
  b.lower_ok = (static_cast<unsigned __int128>(1) << f) < (cube << 8);
  b.upper_ratio =
      static_cast<double>(b.med) / std::exp2(0.41385 * static_cast<double>(f));
  return b;
}

struct MedGrowthRow {
  int f = 0;
  std::uint64_t med = 0;
  double log2_ratio = 0.0;  // log2(MED(f)) / f
};

/// Trend data behind the growth conjecture; no limit claim is made.
inline std::vector<MedGrowthRow> med_growth_table(
    int f_max, const EnumerateOptions& opt = {}) {
  std::vector<MedGrowthRow> rows;
  rows.reserve(f_max);
  for (int f = 1; f <= f_max; ++f) {
    const std::uint64_t med = count_med(f, opt);
    rows.push_back({f, med, std::log2(static_cast<double>(med)) / f});
  }
  return rows;
}

/// The single numeric inequality the upper-bound proof leans on, evaluated
/// with 100 decimal digits:
///   2^(1/2) * (13/16)^(1/8) * 2^(-0.628 * 0.0777)  <  2^0.41385
/// together with the exact identity (1 - 0.1723) / 2 = 0.41385.
struct ProofInequalityResult {
  bool exponent_identity_ok = false;
  bool inequality_holds = false;
  std::string lhs;
  std::string rhs;
  double margin = 0.0;
};

inline ProofInequalityResult med_proof_inequality() {
  using Big = boost::multiprecision::cpp_bin_float_100;
  ProofInequalityResult r;
  // (1 - 1723/10000) / 2 == 41385/100000, exactly
  r.exponent_identity_ok = (10000 - 1723) * 100000 == 41385 * 2 * 10000;
  const Big two = 2;
  const Big lhs = sqrt(two) * pow(Big(13) / 16, Big(1) / 8) *
                  pow(two, Big(-628 * 777) / 10000000);
  const Big rhs = pow(two, Big(41385) / 100000);
  r.inequality_holds = lhs < rhs;
  r.lhs = lhs.str(30);
  r.rhs = rhs.str(30);
  r.margin = static_cast<double>(rhs - lhs);
  return r;
}

}  // namespace nsg
