#include <doctest.h>

#include <set>

#include "bpb/harness.hpp"
#include "bpb/linf_geometry.hpp"

using namespace bpb;

namespace {

DomainVector dv(std::initializer_list<std::string> coords) {
  std::vector<Rat> out;
  for (const std::string& c : coords) out.push_back(rat_from_string(c));
  return DomainVector(std::move(out));
}

std::vector<std::vector<int>> tuple_lists(const std::vector<IndexTuple>& tuples) {
  std::vector<std::vector<int>> out;
  for (const IndexTuple& t : tuples) out.push_back(t.indices());
  return out;
}

DomainVector random_vector(Rng& rng, int n) {
  DomainVector v = DomainVector::zero(n);
  for (int i = 0; i < n; ++i) v.set(i, rng.rat_in_unit(12));
  return v;
}

DomainVector random_hull_point(Rng& rng, int n) {
  std::vector<Rat> weights(n);
  while (true) {
    long total = 0;
    std::vector<int> raw(n);
    for (int i = 0; i < n; ++i) {
      raw[i] = rng.below(9);
      total += raw[i];
    }
    if (total == 0) continue;
    for (int i = 0; i < n; ++i) {
      weights[i] = Rat(raw[i], total);
      weights[i].canonicalize();
    }
    break;
  }
  return recompose(BasisCoefficients{weights});
}

}  // namespace

TEST_SUITE("linf_geometry") {

TEST_CASE("basis vectors") {
  CHECK(basis_vector(1, 3) == dv({"1", "1", "1"}));
  CHECK(basis_vector(3, 3) == dv({"1", "-1", "-1"}));
  CHECK(basis_vector(2, 3) == dv({"1", "-1", "1"}));
  CHECK(basis_vector(1, 1) == dv({"1"}));
  CHECK_THROWS_AS(basis_vector(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(basis_vector(0, 3), std::invalid_argument);
}

TEST_CASE("tuple enumeration order and counts") {
  CHECK(tuple_lists(enumerate_odd_tuples(1)) == std::vector<std::vector<int>>{{1}});
  CHECK(tuple_lists(enumerate_odd_tuples(2)) == std::vector<std::vector<int>>{{1}, {2}});
  CHECK(tuple_lists(enumerate_odd_tuples(3)) ==
        std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2, 3}});
  CHECK(tuple_lists(enumerate_even_tuples(1)) == std::vector<std::vector<int>>{{}});
  CHECK(tuple_lists(enumerate_even_tuples(2)) == std::vector<std::vector<int>>{{}, {1, 2}});
  CHECK(tuple_lists(enumerate_even_tuples(3)) ==
        std::vector<std::vector<int>>{{}, {1, 2}, {1, 3}, {2, 3}});
  for (int n = 1; n <= 12; ++n) {
    const std::size_t expected = std::size_t(1) << (n - 1);
    CHECK(enumerate_odd_tuples(n).size() == expected);
    CHECK(enumerate_even_tuples(n).size() == expected);
  }
}

TEST_CASE("index tuple invariants") {
  CHECK_THROWS_AS(IndexTuple({2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(IndexTuple({3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(IndexTuple({0}), std::invalid_argument);
  CHECK(IndexTuple({1, 3}).size() == 2);
  CHECK_FALSE(IndexTuple({1, 3}).odd());
  CHECK(IndexTuple().empty());
  CHECK_THROWS_AS(IndexTuple({1, 4}).require_within(3), std::invalid_argument);
}

TEST_CASE("basis decomposition formula") {
  CHECK(basis_decompose(dv({"1", "1", "1"})).alphas ==
        std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
  CHECK(basis_decompose(dv({"1", "-1", "0"})).alphas ==
        std::vector<Rat>{Rat(0), rat_from_string("1/2"), rat_from_string("1/2")});
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Rat a = rng.rat_in_unit(10), b = rng.rat_in_unit(10);
    const auto coeffs = basis_decompose(DomainVector({a, b})).alphas;
    CHECK(coeffs[0] == Rat(a + b) / 2);
    CHECK(coeffs[1] == Rat(a - b) / 2);
  }
  CHECK(basis_decompose(dv({"-3/7"})).alphas == std::vector<Rat>{rat_from_string("-3/7")});
}

TEST_CASE("decompose/recompose round trip") {
  Rng rng(23);
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const DomainVector v = random_vector(rng, n);
      CHECK(recompose(basis_decompose(v)) == v);
    }
  }
}

TEST_CASE("monotone cone membership") {
  CHECK(in_O(dv({"1", "-1", "0"})));
  CHECK_FALSE(in_O(dv({"1", "0", "-1"})));
  CHECK(in_O(dv({"1"})));
  CHECK_FALSE(in_O(dv({"1", "-1", "-2"})));
  CHECK_FALSE(in_O(dv({"1/2", "0"})));
}

TEST_CASE("hull membership") {
  CHECK(in_convex_hull_B(dv({"1", "-1", "0"})));
  CHECK_FALSE(in_convex_hull_B(dv({"1/2", "0"})));
  for (int n = 1; n <= 8; ++n) {
    for (int i = 1; i <= n; ++i) CHECK(in_convex_hull_B(basis_vector(i, n)));
  }
}

TEST_CASE("hull membership agrees with the monotone cone") {
  Rng rng(37);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 150; ++trial) {
      const DomainVector v =
          trial % 3 == 0 ? random_hull_point(rng, n) : random_vector(rng, n);
      CHECK(in_convex_hull_B(v) == in_O(v));
    }
  }
  // all sign vectors
  for (int n = 1; n <= 8; ++n) {
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
      DomainVector v = DomainVector::zero(n);
      for (int i = 0; i < n; ++i) v.set(i, (mask >> i) & 1 ? Rat(-1) : Rat(1));
      CHECK(in_convex_hull_B(v) == in_O(v));
    }
  }
}

TEST_CASE("face extreme points") {
  auto as_set = [](const std::vector<DomainVector>& vs) {
    std::set<std::vector<Rat>> out;
    for (const DomainVector& v : vs) out.insert(v.coords());
    return out;
  };
  CHECK(as_set(extreme_points_E1(1)) == as_set({dv({"1"})}));
  CHECK(as_set(extreme_points_E1(2)) == as_set({dv({"1", "1"}), dv({"1", "-1"})}));
  CHECK(as_set(extreme_points_E1(3)) ==
        as_set({dv({"1", "1", "1"}), dv({"1", "-1", "1"}), dv({"1", "-1", "-1"}),
                dv({"1", "1", "-1"})}));

  for (int n = 1; n <= 12; ++n) {
    std::set<std::vector<Rat>> direct;
    for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
      DomainVector v = DomainVector::zero(n);
      v.set(0, Rat(1));
      for (int i = 1; i < n; ++i) v.set(i, (mask >> (i - 1)) & 1 ? Rat(-1) : Rat(1));
      direct.insert(v.coords());
    }
    CHECK(as_set(extreme_points_E1(n)) == direct);
    CHECK(extreme_points_E1(n).size() == (std::size_t(1) << (n - 1)));
  }
}

TEST_CASE("coefficient stability under sup-norm moves") {
  Rng rng(53);
  for (int n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      const DomainVector x = random_hull_point(rng, n);
      const DomainVector y = random_hull_point(rng, n);
      const Rat dist = sup_dist(x, y);
      const auto a = basis_decompose(x).alphas;
      const auto b = basis_decompose(y).alphas;
      CHECK(rat_abs(Rat(a[0] - b[0])) <= dist / 2);
      CHECK(rat_abs(Rat(a[n - 1] - b[n - 1])) <= dist / 2);
      for (int i = 1; i + 1 < n; ++i) CHECK(rat_abs(Rat(a[i] - b[i])) <= dist);
    }
  }
}

}  // TEST_SUITE
