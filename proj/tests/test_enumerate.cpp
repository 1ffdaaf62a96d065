#include "nsg/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "nsg/semigroup.hpp"

using namespace nsg;

namespace {

std::map<int, std::uint64_t> m(std::initializer_list<std::pair<int, std::uint64_t>> xs) {
  return {xs.begin(), xs.end()};
}

}  // namespace

TEST_CASE("paper point values: N(5)=5, N(6)=4") {
  CHECK(enumerate_by_frobenius(5).total == 5);
  CHECK(enumerate_by_frobenius(6).total == 4);
  CHECK(brute_force_by_frobenius(5).total == 5);
  CHECK(brute_force_by_frobenius(6).total == 4);
}

TEST_CASE("f=7 census in full") {
  auto c = enumerate_by_frobenius(7);
  CHECK(c.total == 11);
  CHECK(c.by_n == m({{0, 1}, {1, 3}, {2, 4}, {3, 3}}));
  CHECK(c.by_multiplicity ==
        m({{2, 1}, {3, 2}, {4, 4}, {5, 2}, {6, 1}, {8, 1}}));
  CHECK(c.by_depth == m({{1, 1}, {2, 7}, {3, 2}, {4, 1}}));
  CHECK(brute_force_by_frobenius(7).by_n == c.by_n);
}

TEST_CASE("frozen N(f) for f = 1..18") {
  const std::uint64_t expected[] = {1,  1,  2,  2,   5,   4,   11,  10, 21,
                                    22, 51, 40, 106, 103, 200, 205, 465, 405};
  for (int f = 1; f <= 18; ++f)
    CHECK(enumerate_by_frobenius(f).total == expected[f - 1]);
}

TEST_CASE("oracle equivalence for f <= 14 (full run in acceptance)") {
  for (int f = 1; f <= 14; ++f) {
    auto fast = enumerate_by_frobenius(f);
    auto slow = brute_force_by_frobenius(f);
    CHECK(fast == slow);
  }
}

TEST_CASE("brute force refuses f > 22") {
  CHECK_THROWS_AS(brute_force_by_frobenius(23), OutOfBudgetError);
}

TEST_CASE("census invariants") {
  for (int f : {5, 9, 12, 17}) {
    auto c = enumerate_by_frobenius(f);
    std::uint64_t sn = 0, sm = 0;
    for (auto& [k, v] : c.by_n) sn += v;
    for (auto& [k, v] : c.by_multiplicity) sm += v;
    CHECK(sn == c.total);
    CHECK(sm == c.total);
    CHECK(c.by_depth.at(1) == 1);
    if (f >= 3)
      CHECK(c.by_depth.at(2) == (1ull << fbar(f)) - 1);
  }
}

TEST_CASE("by-genus totals match the known tree counts") {
  const std::uint64_t ng[] = {1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204};
  for (int g = 0; g <= 10; ++g)
    CHECK(enumerate_by_genus(g).total == ng[g]);
}

TEST_CASE("by-genus visits the right objects") {
  // g=3: gap sets {1,2,3}x..; exactly 4 semigroups, each of genus 3
  std::vector<Semigroup> seen;
  std::mutex mu;
  enumerate_by_genus(3, [&](const Semigroup& s) {
    std::scoped_lock lock(mu);
    seen.push_back(s);
  });
  REQUIRE(seen.size() == 4);
  for (auto& s : seen) CHECK(s.genus() == 3);
  // g=0 visits the naturals
  enumerate_by_genus(0, [&](const Semigroup& s) {
    CHECK(s.frobenius() == -1);
  });
}

TEST_CASE("by-genus / by-frobenius consistency") {
  // sum over f of #{S : g(S) = g, f(S) = f} equals n_g; f <= 2g covers all.
  for (int g = 1; g <= 14; ++g) {
    std::uint64_t total = 0;
    for (int f = 1; f <= 2 * g; ++f) {
      std::atomic<std::uint64_t> hits{0};
      enumerate_by_frobenius(f, [&](const Semigroup& s) {
        if (s.genus() == g) ++hits;
      });
      total += hits;
    }
    CHECK(total == enumerate_by_genus(g).total);
  }
}

TEST_CASE("count_by_multiplicity") {
  CHECK(count_by_multiplicity(8, 7) == 1);   // {0, f+1 ->}
  CHECK(count_by_multiplicity(3, 7) == 2);   // {0,3,6,8->}, {0,3,5,6,8->}
  CHECK(count_by_multiplicity(4, 7) == 4);   // 4 forced in, 5 and 6 free
  CHECK(count_by_multiplicity(7, 7) == 0);   // m = f impossible
  CHECK(count_by_multiplicity(2, 8) == 0);   // 2 | 8 forces 8 = f
  for (int f : {7, 10, 13}) {
    auto c = enumerate_by_frobenius(f);
    for (int mm = 2; mm <= f + 1; ++mm) {
      std::uint64_t expect =
          c.by_multiplicity.count(mm) ? c.by_multiplicity.at(mm) : 0;
      CHECK(count_by_multiplicity(mm, f) == expect);
    }
  }
}

TEST_CASE("Backelin sandwich and multiplicity tail bound up to f = 33") {
  for (int f = 3; f <= 33; ++f) {
    auto c = enumerate_by_frobenius(f, EnumerateOptions{.workers = 2});
    const std::uint64_t pow2 = 1ull << fbar(f);
    CHECK(pow2 <= c.total);
    CHECK(c.total < 4 * pow2);
    // N_mul(m, f) <= (1/4) 2^fbar (11/12)^(fbar - m) for m < f/2, checked in
    // exact integer arithmetic: 4 * N * 12^d <= 2^fbar * 11^d.
    for (auto& [mm, cnt] : c.by_multiplicity) {
      if (2 * mm >= f) continue;
      const int d = fbar(f) - mm;
      REQUIRE(d >= 0);
      unsigned __int128 lhs = 4 * static_cast<unsigned __int128>(cnt);
      unsigned __int128 rhs = static_cast<unsigned __int128>(1) << fbar(f);
      for (int i = 0; i < d; ++i) {
        lhs *= 12;
        rhs *= 11;
      }
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("determinism: census identical at 1 and 4 workers") {
  for (int f : {16, 17, 20}) {
    auto a = enumerate_by_frobenius(f, EnumerateOptions{.workers = 1});
    auto b = enumerate_by_frobenius(f, EnumerateOptions{.workers = 4});
    CHECK(a.canonical_string() == b.canonical_string());
  }
  auto a = enumerate_by_genus(10, EnumerateOptions{.workers = 1});
  auto b = enumerate_by_genus(10, EnumerateOptions{.workers = 4});
  CHECK(a.canonical_string() == b.canonical_string());
}

TEST_CASE("visitor sees every semigroup exactly once, any worker count") {
  for (int workers : {1, 3}) {
    std::set<std::vector<int>> seen;
    std::mutex mu;
    std::atomic<int> dupes{0};
    enumerate_by_frobenius(
        13,
        [&](const Semigroup& s) {
          std::scoped_lock lock(mu);
          if (!seen.insert(s.members()).second) ++dupes;
        },
        EnumerateOptions{.workers = workers});
    CHECK(dupes == 0);
    CHECK(seen.size() == 106);
  }
}

TEST_CASE("budgets") {
  CHECK_THROWS_AS(
      enumerate_by_frobenius(21, EnumerateOptions{.max_nodes = 50}),
      BudgetExceededError);
  CHECK_THROWS_AS(
      enumerate_by_genus(12, EnumerateOptions{.max_nodes = 20}),
      BudgetExceededError);
  // generous budgets do not interfere
  auto c = enumerate_by_frobenius(10, EnumerateOptions{.max_nodes = 1000000,
                                                       .max_seconds = 60.0});
  CHECK(c.total == 22);
}

TEST_CASE("genus census buckets") {
  auto c = enumerate_by_genus(7);
  CHECK(c.total == 39);
  CHECK(c.depth_le1 == 1);  // only {0, 8->}
  std::uint64_t d2 = 0;
  for (auto& [k, v] : c.by_2m_minus_f) {
    CHECK(k >= 1);
    d2 += v;
  }
  std::uint64_t d3 = 0;
  for (auto& [key, v] : c.by_type) {
    CHECK(key.k >= 1);
    d3 += v;
  }
  CHECK(d2 + d3 + c.deep + c.depth_le1 == c.total);
}
