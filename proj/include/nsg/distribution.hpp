#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nsg/classify.hpp"
#include "nsg/enumerate.hpp"
#include "nsg/rational.hpp"

namespace nsg {

/// Exact n-distribution for one Frobenius number: counts[n] = N(f, n).
struct DistributionTable {
  int f = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> counts;  // index n in [0, fbar(f)]
};

inline DistributionTable empirical_distribution(
    int f, const EnumerateOptions& opt = {}) {
  auto census = enumerate_by_frobenius(f, opt);
  DistributionTable t;
  t.f = f;
  t.total = census.total;
  t.counts.assign(fbar(f) + 1, 0);
  for (auto& [n, c] : census.by_n) t.counts.at(n) = c;
  return t;
}

/// The power-series factor of the limiting distribution:
/// h_L(x) = 1 + sum over (Y, Z) with Max(Y) <= L of
///          (1 - x)^beta x^(Max(Y) + 1 + alpha - beta),
/// expanded into exact integer coefficients (alpha' for even parity).
struct HPolynomial {
  int L = 0;
  Parity parity = Parity::kOdd;
  std::vector<std::int64_t> coefficients;  // constant term first

  double evaluate(double x) const {
    double acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      acc = acc * x + static_cast<double>(*it);
    return acc;
  }

  Rational evaluate_exact(const Rational& x) const {
    Rational acc(0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      acc = acc * x + Rational(*it);
    return acc;
  }

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

inline HPolynomial h_polynomial(int L, Parity parity) {
  HPolynomial h;
  h.L = L;
  h.parity = parity;
  // max exponent is Max(Y) + 1 + alpha <= 3L + 2 for odd parity; the -1
  // element of W2 can push the even-parity degree one higher
  h.coefficients.assign(3 * L + 4, 0);
  h.coefficients[0] = 1;
  for (const ClassKey& key : enumerate_class_keys(L)) {
    const YZSignature sig = derive_params(key);
    const int a = sig.forced_count(parity);
    const int e = key.max_y() + 1 + a - sig.beta;
    for (int j = 0; j <= sig.beta; ++j) {
      const std::int64_t c = static_cast<std::int64_t>(binomial(sig.beta, j));
      h.coefficients.at(e + j) += (j % 2 ? -c : c);
    }
  }
  while (h.coefficients.size() > 1 && h.coefficients.back() == 0)
    h.coefficients.pop_back();
  return h;
}

/// Gaussian density with mean fbar/2 and variance fbar/4, evaluated at n.
inline double gaussian_density(int f, double n) {
  const double fb = fbar(f);
  const double var = fb / 4.0;
  const double d = n - fb / 2.0;
  return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * M_PI * var);
}

/// The limiting density of Theorem "Main Distribution" at desk scale:
/// (1/c) psi_f(n) h_L(n / fbar). The normalizer c is the L-partial sum of
/// the Backelin constant rather than the unknown full c1/c2, which keeps
/// the discrete mass summing to ~1 (the same keys are missing from both the
/// numerator and the normalizer).
inline double theoretical_density(int f, int L, int n) {
  if (f <= 6 * L + 6) throw FTooSmallError(f, L);
  const Parity parity = parity_of(f);
  const HPolynomial h = h_polynomial(L, parity);
  const double c = constant_partial_sum(L, parity).to_double();
  const double x = static_cast<double>(n) / static_cast<double>(fbar(f));
  return gaussian_density(f, n) * h.evaluate(x) / c;
}

/// Exact mean of n(S) over the semigroups with Frobenius number f. The mean
/// genus is f minus this.
inline Rational average_n(int f, const EnumerateOptions& opt = {}) {
  auto t = empirical_distribution(f, opt);
  std::int64_t weighted = 0;
  for (int n = 0; n < static_cast<int>(t.counts.size()); ++n)
    weighted += static_cast<std::int64_t>(t.counts[n]) * n;
  return Rational(weighted, static_cast<std::int64_t>(t.total));
}

/// Fraction of semigroups with |n(S) - f/4| < f^(1/2 + eps).
inline double concentration_mass(int f, double eps,
                                 const EnumerateOptions& opt = {}) {
  auto t = empirical_distribution(f, opt);
  const double window = std::pow(f, 0.5 + eps);
  std::uint64_t hits = 0;
  for (int n = 0; n < static_cast<int>(t.counts.size()); ++n)
    if (std::abs(n - f / 4.0) < window) hits += t.counts[n];
  return static_cast<double>(hits) / static_cast<double>(t.total);
}

/// Side-by-side empirical vs theoretical distribution, with the sup-norm
/// difference and total-variation distance (half the L1 difference).
struct DistributionComparison {
  int f = 0;
  int L = 0;
  DistributionTable empirical;
  std::vector<double> theory;  // density per n; empty when f <= 6L+6
  double sup_diff = 0.0;
  double tv_distance = 0.0;
};

inline DistributionComparison compare_distribution(
    int f, int L, const EnumerateOptions& opt = {}) {
  DistributionComparison cmp;
  cmp.f = f;
  cmp.L = L;
  cmp.empirical = empirical_distribution(f, opt);
  if (f <= 6 * L + 6) return cmp;  // caller decides how to report FTooSmall
  cmp.theory.resize(cmp.empirical.counts.size());
  for (int n = 0; n < static_cast<int>(cmp.theory.size()); ++n) {
    cmp.theory[n] = theoretical_density(f, L, n);
    const double emp = static_cast<double>(cmp.empirical.counts[n]) /
                       static_cast<double>(cmp.empirical.total);
    const double d = std::abs(emp - cmp.theory[n]);
    cmp.sup_diff = std::max(cmp.sup_diff, d);
    cmp.tv_distance += 0.5 * d;
  }
  return cmp;
}

}  // namespace nsg
