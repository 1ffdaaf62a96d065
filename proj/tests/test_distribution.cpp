#include "nsg/distribution.hpp"

#include <mutex>
#include <numeric>

#include <catch2/catch_amalgamated.hpp>

using namespace nsg;

TEST_CASE("empirical_distribution") {
  auto t7 = empirical_distribution(7);
  CHECK(t7.total == 11);
  CHECK(t7.counts == std::vector<std::uint64_t>{1, 3, 4, 3});
  CHECK(empirical_distribution(5).total == 5);
  auto t1 = empirical_distribution(1);
  CHECK(t1.total == 1);
  CHECK(t1.counts == std::vector<std::uint64_t>{1});
}

TEST_CASE("h polynomial from the definitions") {
  auto h0 = h_polynomial(0, Parity::kOdd);
  CHECK(h0.coefficients == std::vector<std::int64_t>{1, 0, 1});  // 1 + x^2

  // L = 2 expansions, frozen from an independent expansion of the
  // definitions (they do NOT match the polynomial printed in the source
  // text; see the comparison test below and the dist report).
  auto h2o = h_polynomial(2, Parity::kOdd);
  CHECK(h2o.coefficients ==
        std::vector<std::int64_t>{1, 0, 3, -3, 4, 1, 0, 0, 2});
  auto h2e = h_polynomial(2, Parity::kEven);
  CHECK(h2e.coefficients ==
        std::vector<std::int64_t>{1, 0, 3, -3, 4, 1, -1, 1, 2});
}

TEST_CASE("h polynomial invariants") {
  for (Parity p : {Parity::kOdd, Parity::kEven}) {
    for (int L = 0; L <= 5; ++L) {
      auto h = h_polynomial(L, p);
      // h(0) = 1
      CHECK(h.coefficients[0] == 1);
      CHECK(h.evaluate_exact(Rational(0)) == Rational(1));
      // h(1) = 1 + #{keys with beta = 0}
      std::int64_t beta0 = 0;
      for (auto& key : enumerate_class_keys(L))
        if (derive_params(key).beta == 0) ++beta0;
      CHECK(h.evaluate_exact(Rational(1)) == Rational(1 + beta0));
      // degree 3L+2 for odd parity; the -1 in W2 adds one for even parity
      CHECK(h.degree() <= (p == Parity::kOdd ? 3 * L + 2 : 3 * L + 3));
    }
  }
  // at L <= 5 the degree bound is attained
  CHECK(h_polynomial(5, Parity::kOdd).degree() == 17);
}

TEST_CASE("definition-derived h2 differs from the printed one") {
  // the source text prints 1 + 2x^2 - x^3 + 4x^4 - 2x^5 + 2x^6; its value
  // at 1 would be 6, but the key count forces h(1) = 8. The dist report
  // carries both candidates; the reconstruction test below settles which
  // one tiles the exact counts.
  const std::vector<std::int64_t> printed{1, 0, 2, -1, 4, -2, 2};
  CHECK(std::accumulate(printed.begin(), printed.end(), std::int64_t{0}) == 6);
  auto ours = h_polynomial(2, Parity::kOdd);
  CHECK(ours.evaluate_exact(Rational(1)) == Rational(8));
  CHECK(ours.coefficients != printed);
}

TEST_CASE("theoretical density: normalization and positivity") {
  // The discrete mass is 1 only in the limit: at finite f it carries the
  // O(1/fbar) curvature excess of E[h(x)] over h(1/2), measured at ~1.07
  // for f = 31 and shrinking as f grows.
  double prev_sum = 2.0;
  for (int f : {31, 33, 37}) {
    double sum = 0;
    for (int n = 0; n <= fbar(f); ++n) {
      const double d = theoretical_density(f, 2, n);
      CHECK(d >= 0.0);
      sum += d;
    }
    CHECK(sum > 1.0);
    CHECK(sum < 1.08);
    CHECK(sum < prev_sum);  // approaches 1 from above as f grows
    prev_sum = sum;
  }
  CHECK_THROWS_AS(theoretical_density(19, 5, 4), FTooSmallError);
  CHECK_THROWS_AS(theoretical_density(18, 2, 4), FTooSmallError);
}

TEST_CASE("structured reconstruction: exact N(f, n) from the class formulas") {
  // N(f, n) =   C(fbar, n)                       depth <= 2
  //           + sum over keys with Max(Y) <= L   closed-form classes
  //           + filtered enumeration              keys with Max(Y) > L
  // (C(fbar, 0) = 1 accounts for the single depth-1 semigroup.)
  for (int f : {19, 20}) {
    const int L = (f - 7) / 6;
    REQUIRE(L == 2);
    auto table = empirical_distribution(f);
    std::vector<std::uint64_t> rest(fbar(f) + 1, 0);
    std::mutex mu;
    enumerate_by_frobenius(f, [&](const Semigroup& s) {
      auto k = signature_of(s);
      if (k.empty() || k.max_y() <= L) return;
      std::scoped_lock lock(mu);
      rest[s.n()]++;
    });
    for (int n = 0; n <= fbar(f); ++n) {
      std::uint64_t expect = binomial(fbar(f), n) + rest[n];
      for (auto& key : enumerate_class_keys(L))
        expect += class_count_by_n(key, f, n);
      CHECK(table.counts[n] == expect);
    }
  }
}

TEST_CASE("average_n") {
  CHECK(average_n(7) == Rational(20, 11));
  CHECK(average_n(1) == Rational(0));
  // f=12 table {0:1, 1:5, 2:11, 3:13, 4:8, 5:2} gives 108/40
  CHECK(average_n(12) == Rational(27, 10));
  // mean genus = f - mean n stays near 3f/4 already at f = 25
  auto mean_n = average_n(25);
  double ratio = mean_n.to_double() / 25.0;
  CHECK(ratio > 0.18);
  CHECK(ratio < 0.32);
}

TEST_CASE("concentration mass") {
  // window wider than the whole range: fraction 1
  CHECK(concentration_mass(13, 1.0) == 1.0);
  // at eps = 0.25 the window f^0.75 already covers every n <= fbar at
  // desk scale, so the mass is 1 and the f-trend is trivially nondecreasing
  const double lo = concentration_mass(19, 0.25);
  const double hi = concentration_mass(39, 0.25, EnumerateOptions{.workers = 2});
  CHECK(hi > 0.8);
  CHECK(lo <= hi + 1e-12);
  CHECK(hi <= 1.0);
}

TEST_CASE("compare_distribution") {
  auto cmp = compare_distribution(19, 2);
  REQUIRE(cmp.theory.size() == cmp.empirical.counts.size());
  CHECK(cmp.sup_diff > 0.0);
  CHECK(cmp.sup_diff < 0.10);
  CHECK(cmp.tv_distance < 0.15);
  // FTooSmall: theory columns absent
  auto flat = compare_distribution(9, 2);
  CHECK(flat.theory.empty());
  CHECK(flat.sup_diff == 0.0);
}
