#include "nsg/classify.hpp"

#include <map>
#include <mutex>
#include <set>

#include <catch2/catch_amalgamated.hpp>

using namespace nsg;

namespace {

ClassKey key(std::vector<int> y, std::vector<int> z = {}) {
  return ClassKey{std::move(y), std::move(z)};
}

}  // namespace

TEST_CASE("signature_of") {
  auto s = Semigroup::build(30, {12, 16, 24, 28});
  auto k = signature_of(s);
  CHECK(k.y == std::vector<int>{2});
  CHECK(k.z == std::vector<int>{0});

  // any depth-2 semigroup maps to the empty key
  CHECK(signature_of(Semigroup::build(9, {5, 7})).empty());
  CHECK(signature_of(Semigroup::build(5, {})).empty());

  // {0,3,5,6,8->}: fbar = 3 is a member, interval (3.5, 4] misses S
  auto k2 = signature_of(Semigroup::build(7, {3, 5, 6}));
  CHECK(k2.y == std::vector<int>{0});
  CHECK(k2.z.empty());
}

TEST_CASE("derive_params on the worked examples") {
  auto a = derive_params(std::vector<int>{2}, std::vector<int>{0});
  CHECK(a.two_y == std::vector<int>{4});
  CHECK(a.w1 == std::vector<int>{1});
  CHECK(a.w2 == std::vector<int>{0});
  CHECK(a.alpha == 2);
  CHECK(a.alpha_prime == 2);
  CHECK(a.beta == 1);

  auto b = derive_params(std::vector<int>{0}, std::vector<int>{});
  CHECK(b.two_y == std::vector<int>{0});
  CHECK(b.w1.empty());
  CHECK(b.w2.empty());
  CHECK(b.alpha == 1);
  CHECK(b.alpha_prime == 1);
  CHECK(b.beta == 0);

  auto c = derive_params(std::vector<int>{1}, std::vector<int>{0});
  CHECK(c.two_y == std::vector<int>{2});
  CHECK(c.w1 == std::vector<int>{0});
  CHECK(c.w2 == std::vector<int>{-1});
  CHECK(c.alpha == 2);
  CHECK(c.alpha_prime == 2);
  CHECK(c.beta == 0);
}

TEST_CASE("derive_params rejects bad pairs") {
  CHECK_THROWS_AS(derive_params(std::vector<int>{}, std::vector<int>{}),
                  InvalidPairError);
  CHECK_THROWS_AS(derive_params(std::vector<int>{1}, std::vector<int>{1}),
                  InvalidPairError);
  CHECK_THROWS_AS(derive_params(std::vector<int>{1}, std::vector<int>{2}),
                  InvalidPairError);
  CHECK_THROWS_AS(derive_params(std::vector<int>{-1}, std::vector<int>{}),
                  InvalidPairError);
}

TEST_CASE("class_count") {
  CHECK(class_count(key({2}, {0}), 30) == 512);   // the worked f=30 example
  CHECK(class_count(key({2}, {0}), 31) == 1024);
  CHECK(class_count(key({0}), 7) == 2);
  CHECK(class_count(key({1}, {0}), 13) == 4);
  CHECK_THROWS_AS(class_count(key({2}, {0}), 18), FTooSmallError);
  CHECK_THROWS_AS(class_count(key({0}), 6), FTooSmallError);
}

TEST_CASE("class_count_by_n") {
  CHECK(class_count_by_n(key({0}), 7, 2) == 1);  // {0,3,6,8->}
  CHECK(class_count_by_n(key({0}), 7, 3) == 1);  // {0,3,5,6,8->}
  CHECK(class_count_by_n(key({0}), 7, 1) == 0);
  CHECK(class_count_by_n(key({0}), 7, 9) == 0);
  CHECK(class_count_by_n(key({2}, {0}), 30, 2) == 0);  // below the range
  for (int f : {19, 20, 25, 26}) {
    for (auto& k : enumerate_class_keys(2)) {
      std::uint64_t sum = 0;
      for (int n = 0; n <= fbar(f); ++n) sum += class_count_by_n(k, f, n);
      CHECK(sum == class_count(k, f));
    }
  }
}

TEST_CASE("class_members explicit construction") {
  // (Y={0}, Z={}, f=7): exactly {0,3,6,8->} and {0,3,5,6,8->}
  std::set<std::vector<int>> got;
  auto count = class_members(key({0}), 7, [&](const Semigroup& s) {
    got.insert(s.members());
  });
  CHECK(count == 2);
  CHECK(got == std::set<std::vector<int>>{{3, 6}, {3, 5, 6}});

  // (Y={1}, Z={0}, f=13): four members, frozen from the subset-scan oracle
  got.clear();
  count = class_members(key({1}, {0}), 13, [&](const Semigroup& s) {
    got.insert(s.members());
  });
  CHECK(count == 4);
  CHECK(got == std::set<std::vector<int>>{{5, 7, 10, 12},
                                          {5, 7, 9, 10, 12},
                                          {5, 7, 10, 11, 12},
                                          {5, 7, 9, 10, 11, 12}});
}

TEST_CASE("the f=30 worked example: free interval [19,29] minus {24,28}") {
  auto c = class_construction(key({2}, {0}), 30);
  CHECK(c.free_lo == 19);
  CHECK(c.free_hi == 29);
  CHECK(c.forced == std::vector<int>{24, 28});
  std::vector<int> expect_free;
  for (int x = 19; x <= 29; ++x)
    if (x != 24 && x != 28) expect_free.push_back(x);
  CHECK(c.free_positions == expect_free);
  CHECK(class_members(key({2}, {0}), 30) == 512);
}

TEST_CASE("enumerate_class_keys") {
  auto k0 = enumerate_class_keys(0);
  REQUIRE(k0.size() == 1);
  CHECK(k0[0] == key({0}));

  auto k1 = enumerate_class_keys(1);
  REQUIRE(k1.size() == 4);
  CHECK(k1[0] == key({0}));
  CHECK(k1[1] == key({1}));
  CHECK(k1[2] == key({1}, {0}));
  CHECK(k1[3] == key({0, 1}));

  CHECK(enumerate_class_keys(2).size() == 13);
  CHECK(enumerate_class_keys(5).size() == 364);
}

TEST_CASE("constant partial sums, exact") {
  CHECK(constant_partial_sum(0, Parity::kOdd).to_string() == "5/4");
  CHECK(constant_partial_sum(1, Parity::kOdd).to_string() == "47/32");
  CHECK(constant_partial_sum(2, Parity::kOdd).to_string() == "213/128");
  CHECK(constant_partial_sum(2, Parity::kEven).to_string() == "53/32");
  CHECK(constant_partial_sum(5, Parity::kOdd).to_string() == "273405/131072");
  CHECK(constant_partial_sum(5, Parity::kEven).to_string() ==
        "541865/262144");

  // the paper's numeric checks: sum minus the leading 1 exceeds 1.08 / 1.06
  auto odd = constant_partial_sum(5, Parity::kOdd) - Dyadic(1);
  auto even = constant_partial_sum(5, Parity::kEven) - Dyadic(1);
  CHECK(odd.compare_fraction(108, 100) > 0);
  CHECK(even.compare_fraction(106, 100) > 0);

  // monotone nondecreasing in L
  for (Parity p : {Parity::kOdd, Parity::kEven}) {
    Dyadic prev = 0;
    for (int L = 0; L <= 6; ++L) {
      Dyadic cur = constant_partial_sum(L, p);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("verify_monotonicity") {
  auto rows = verify_monotonicity(13);
  REQUIRE(rows.size() == 13);
  for (auto& r : rows) CHECK(r.increasing);
  CHECK(rows[0].count_f == 1);        // N(1) = 1
  CHECK(rows[0].count_f_plus_2 == 2); // N(3) = 2
  CHECK(rows[4].count_f == 5);        // N(5) = 5
  CHECK(rows[4].count_f_plus_2 == 11);
  // plain monotonicity genuinely fails: N(6) = 4 < N(5) = 5
  CHECK(enumerate_by_frobenius(6).total < enumerate_by_frobenius(5).total);
}

TEST_CASE("partition property: signatures tile the enumeration") {
  for (int f = 3; f <= 20; ++f) {
    std::map<ClassKey, std::uint64_t> sizes;
    std::map<ClassKey, std::map<int, std::uint64_t>> sizes_by_n;
    std::mutex mu;
    enumerate_by_frobenius(f, [&](const Semigroup& s) {
      auto k = signature_of(s);
      // Y and Z disjoint for every signature
      for (int zi : k.z)
        REQUIRE(std::find(k.y.begin(), k.y.end(), zi) == k.y.end());
      if (!k.empty() && s.depth() == 3)
        REQUIRE((k.z.empty() || k.z.back() <= k.max_y()));
      std::scoped_lock lock(mu);
      sizes[k]++;
      sizes_by_n[k][s.n()]++;
    });
    // the empty class holds exactly the 2^fbar semigroups of depth <= 2
    CHECK(sizes.at(ClassKey{}) == (1ull << fbar(f)));
    for (auto& [k, size] : sizes) {
      if (k.empty() || f <= 6 * k.max_y() + 6) continue;
      CHECK(size == class_count(k, f));
      for (auto& [n, cnt] : sizes_by_n[k])
        CHECK(cnt == class_count_by_n(k, f, n));
    }
  }
}

TEST_CASE("construction equals filtered enumeration, set equality") {
  for (int f : {19, 20, 21}) {
    std::map<ClassKey, std::set<std::vector<int>>> enumerated;
    std::mutex mu;
    enumerate_by_frobenius(f, [&](const Semigroup& s) {
      auto k = signature_of(s);
      if (k.empty() || k.max_y() > 2) return;
      std::scoped_lock lock(mu);
      enumerated[k].insert(s.members());
    });
    for (auto& k : enumerate_class_keys(2)) {
      std::set<std::vector<int>> constructed;
      class_members(k, f, [&](const Semigroup& s) {
        constructed.insert(s.members());
      });
      CHECK(constructed == enumerated[k]);
    }
  }
}
