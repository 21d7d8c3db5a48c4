#include <doctest.h>

#include "bpb/harness.hpp"
#include "bpb/operator_model.hpp"

using namespace bpb;

namespace {

TargetVector tv(std::initializer_list<std::pair<int, std::string>> entries) {
  TargetVector out{Ambient::l1()};
  for (const auto& [idx, val] : entries) out.set(idx, rat_from_string(val));
  return out;
}

OperatorTuple e1_e2() {
  return OperatorTuple({tv({{1, "1"}}), tv({{2, "1"}})});
}

}  // namespace

TEST_SUITE("operator_model") {

TEST_CASE("alternating sums") {
  const OperatorTuple op({tv({{1, "1"}}), tv({{2, "1"}}), tv({{3, "1"}})});
  CHECK(alternating_sum(op, IndexTuple({1, 2, 3})) ==
        tv({{1, "1"}, {2, "-1"}, {3, "1"}}));
  CHECK(alternating_sum(op, IndexTuple()) == tv({}));
  CHECK(alternating_sum(OperatorTuple({tv({{1, "1"}}), tv({{2, "1"}})}), IndexTuple({2})) ==
        tv({{2, "1"}}));
  CHECK_THROWS_AS(alternating_sum(op, IndexTuple({4})), std::invalid_argument);
}

TEST_CASE("operator norm by the odd tuple formula") {
  CHECK(operator_norm(e1_e2()) == 1);
  CHECK(operator_norm(OperatorTuple({tv({}), tv({})})) == 0);
  CHECK(operator_norm(OperatorTuple({tv({{1, "-2/3"}, {5, "1/2"}})})) ==
        rat_from_string("7/6"));
}

TEST_CASE("membership") {
  CHECK(in_M(e1_e2()));
  CHECK_FALSE(in_M(OperatorTuple({tv({{1, "2"}})})));
  CHECK(in_M(OperatorTuple({tv({}), tv({}), tv({})})));
}

TEST_CASE("apply evaluates through the basis decomposition") {
  const OperatorTuple op = e1_e2();
  CHECK(apply(op, DomainVector({Rat(1), Rat(1)})) == tv({{1, "1"}}));
  CHECK(apply(op, DomainVector::zero(2)) == tv({}));
  CHECK(apply(op, basis_vector(1, 2)) == op.image(0));
  CHECK(apply(op, basis_vector(2, 2)) == op.image(1));
  CHECK_THROWS_AS(apply(op, DomainVector::zero(3)), std::invalid_argument);
}

TEST_CASE("standard-basis columns convert to the tuple form") {
  const std::vector<TargetVector> cols{tv({{1, "1"}}), tv({{2, "1"}})};
  const OperatorTuple op = from_standard_images(cols);
  CHECK(op.image(0) == tv({{1, "1"}, {2, "1"}}));
  CHECK(op.image(1) == tv({{1, "1"}, {2, "-1"}}));
  for (int j = 1; j <= 2; ++j) {
    CHECK(apply(op, DomainVector::standard_unit(2, j)) == cols[j - 1]);
  }
  const OperatorTuple zero = from_standard_images({tv({}), tv({}), tv({})});
  for (const TargetVector& img : zero.images()) CHECK(img.is_zero());

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + rng.below(5);
    std::vector<TargetVector> random_cols;
    for (int j = 0; j < n; ++j) {
      TargetVector c{Ambient::l1()};
      for (int k = 1; k <= 4; ++k) {
        if (rng.below(2)) c.set(k, rng.rat_in_unit(8));
      }
      random_cols.push_back(std::move(c));
    }
    const OperatorTuple converted = from_standard_images(random_cols);
    for (int j = 1; j <= n; ++j) {
      CHECK(apply(converted, DomainVector::standard_unit(n, j)) == random_cols[j - 1]);
    }
  }
}

TEST_CASE("tau rotation") {
  const OperatorTuple op({tv({{1, "1"}}), tv({{2, "1"}}), tv({{3, "1"}})});
  const OperatorTuple rotated = tau(op);
  CHECK(rotated.image(0) == tv({{2, "1"}}));
  CHECK(rotated.image(1) == tv({{3, "1"}}));
  CHECK(rotated.image(2) == tv({{1, "-1"}}));
  CHECK(tau_pow(op, 6) == op);
  CHECK(tau(OperatorTuple({tv({{1, "1"}})})) == OperatorTuple({tv({{1, "-1"}})}));

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + rng.below(4);
    const OperatorTuple member = gen_member_tuple(rng, n, 4);
    for (int k = 0; k <= 2 * n; ++k) {
      CHECK(in_M(tau_pow(member, k)) == in_M(member));
    }
    CHECK(tau_pow(member, 2 * n) == member);
    CHECK(tau_pow(tau_pow(member, 3), 1) == tau_pow(member, 4));
  }
}

TEST_CASE("norm formula agrees with the sign-vertex oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + rng.below(6);
    const int m = 1 + rng.below(5);
    const OperatorTuple op = gen_raw_tuple(rng, n, m);
    CHECK(operator_norm(op) == brute_norm(op));
  }
}

TEST_CASE("membership set is symmetric and convex") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + rng.below(4);
    const OperatorTuple a = gen_member_tuple(rng, n, 4);
    const OperatorTuple b = gen_member_tuple(rng, n, 4);
    CHECK(in_M(scale(a, Rat(-1))));
    Rat w(rng.below(17), 16);
    w.canonicalize();
    CHECK(in_M(combine(a, w, b, 1 - w)));
  }
}

TEST_CASE("apply is linear and norm-bounded") {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + rng.below(4);
    const OperatorTuple op = gen_raw_tuple(rng, n, 4);
    DomainVector x = DomainVector::zero(n), y = DomainVector::zero(n);
    for (int i = 0; i < n; ++i) {
      x.set(i, rng.rat_in_unit(8));
      y.set(i, rng.rat_in_unit(8));
    }
    const Rat a = rng.rat_in_unit(8), b = rng.rat_in_unit(8);
    CHECK(apply(op, x.scaled(a) + y.scaled(b)) ==
          apply(op, x).scaled(a) + apply(op, y).scaled(b));
    CHECK(exact_norm(apply(op, x)) <= operator_norm(op) * sup_norm(x));
  }
}

TEST_CASE("sup-type target norms are exact") {
  const Ambient amb = Ambient::linf(3);
  TargetVector a(amb), b(amb);
  a.set(1, Rat(1));
  b.set(3, rat_from_string("-4/5"));
  const OperatorTuple op({a, b});
  CHECK(operator_norm(op) == 1);
  CHECK(in_M(op));
}

TEST_CASE("oracle ambient norms are estimates") {
  const Ambient amb = Ambient::with_oracle(make_euclidean_oracle());
  TargetVector a(amb);
  a.set(1, rat_from_string("3/5"));
  a.set(2, rat_from_string("4/5"));
  const OperatorTuple op({a});
  CHECK_THROWS_AS(operator_norm(op), std::invalid_argument);
  const NormEstimate est = operator_norm_estimate(op);
  CHECK_FALSE(est.exact);
  CHECK(rat_to_double(est.value) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sign conjugation is an involution preserving membership") {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const OperatorTuple op = gen_member_tuple(rng, 3, 4);
    std::set<int> negatives{1, 3};
    CHECK(flip_signs(flip_signs(op, negatives), negatives) == op);
    CHECK(in_M(flip_signs(op, negatives)));
  }
}

}  // TEST_SUITE
