#include <doctest.h>

#include "bpb/harness.hpp"
#include "bpb/sequence_space.hpp"

using namespace bpb;

namespace {

TargetVector tv(std::initializer_list<std::pair<int, std::string>> entries,
                Ambient ambient = Ambient::l1()) {
  TargetVector out(std::move(ambient));
  for (const auto& [idx, val] : entries) out.set(idx, rat_from_string(val));
  return out;
}

TargetVector random_l1(Rng& rng, int m) {
  TargetVector v{Ambient::l1()};
  for (int k = 1; k <= m; ++k) {
    if (rng.below(3)) v.set(k, rng.rat_in_unit(9));
  }
  return v;
}

}  // namespace

TEST_SUITE("sequence_space") {

TEST_CASE("norms") {
  CHECK(exact_norm(tv({{1, "3/5"}, {2, "-2/5"}})) == 1);
  CHECK(exact_norm(tv({})) == 0);
  CHECK(exact_norm(tv({{1, "1/2"}, {2, "-3/4"}}, Ambient::linf(2))) == rat_from_string("3/4"));
  CHECK_THROWS_AS(exact_norm(TargetVector(Ambient::with_oracle(make_euclidean_oracle()))),
                  std::invalid_argument);
}

TEST_CASE("sparse canonical form") {
  TargetVector v{Ambient::l1()};
  v.set(3, Rat(2));
  v.set(3, Rat(0));
  CHECK(v.is_zero());
  CHECK(v.at(3) == 0);
  CHECK(v.max_support_index() == 0);
  v.set(5, Rat(1));
  CHECK(v.max_support_index() == 5);
  CHECK_THROWS_AS(v.set(0, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(TargetVector::unit(Ambient::linf(2), 3), std::invalid_argument);
}

TEST_CASE("summing functional") {
  CHECK(u_star(tv({{1, "3/5"}, {2, "-2/5"}})) == rat_from_string("1/5"));
  CHECK(u_star(tv({})) == 0);
  CHECK(u_star(tv({{1, "1"}})) == 1);
  CHECK_THROWS_AS(u_star(tv({{1, "1"}}, Ambient::linf(2))), std::invalid_argument);
}

TEST_CASE("positive part") {
  CHECK(positive_part(tv({{1, "3/5"}, {2, "3/10"}, {3, "-1/20"}})) ==
        tv({{1, "3/5"}, {2, "3/10"}}));
  const TargetVector nonneg = tv({{2, "1/3"}, {7, "2/3"}});
  CHECK(positive_part(nonneg) == nonneg);
  CHECK(positive_part(tv({{1, "-1"}})) == tv({}));

  Rng rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    const TargetVector v = random_l1(rng, 6);
    const TargetVector p = positive_part(v);
    CHECK(p.nonnegative());
    CHECK(p.entrywise_geq(v));
    CHECK(u_star(p) == exact_norm(p));
    CHECK(exact_norm(p - v) == exact_norm(v) - exact_norm(p));
  }
}

TEST_CASE("sign functionals norm their vector") {
  const TargetVector v = tv({{1, "3/5"}, {2, "-2/5"}});
  const DualFunctional f = sign_functional(v);
  CHECK(f.sign_at(1) == 1);
  CHECK(f.sign_at(2) == -1);
  CHECK(f.sign_at(3) == 1);  // sign(0) = +1
  CHECK(f(v) == 1);

  CHECK(sign_functional(tv({}))(tv({})) == 0);
  CHECK(sign_functional(tv({{1, "-1/2"}}))(tv({{1, "-1/2"}})) == rat_from_string("1/2"));

  Rng rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const TargetVector v = random_l1(rng, 6);
    CHECK(sign_functional(v)(v) == exact_norm(v));
    // dual ball membership of an unrelated sign functional
    std::set<int> negatives;
    for (int k = 1; k <= 6; ++k) {
      if (rng.below(2)) negatives.insert(k);
    }
    const DualFunctional g = DualFunctional::sign_vector(negatives);
    CHECK(rat_abs(g(v)) <= exact_norm(v));
  }
}

TEST_CASE("coordinate max") {
  CHECK(coordinate_max({tv({{1, "1"}}), tv({{2, "1"}})}) == tv({{1, "1"}, {2, "1"}}));
  const TargetVector single = tv({{1, "-1"}, {4, "2/3"}});
  CHECK(coordinate_max({single}) == single);
  CHECK(coordinate_max({tv({{1, "-1/10"}, {2, "1/2"}}), tv({{1, "-1/5"}, {2, "2/5"}})}) ==
        tv({{1, "-1/10"}, {2, "1/2"}}));
  CHECK_THROWS_AS(coordinate_max({}), std::invalid_argument);

  Rng rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<TargetVector> vs;
    const int count = 1 + rng.below(4);
    for (int i = 0; i < count; ++i) vs.push_back(random_l1(rng, 5));
    const TargetVector w = coordinate_max(vs);
    for (const TargetVector& v : vs) CHECK(w.entrywise_geq(v));
  }
}

TEST_CASE("coordinate functional") {
  const DualFunctional e2 = DualFunctional::coordinate(2);
  CHECK(e2(tv({{1, "1/2"}, {2, "-3/4"}}, Ambient::linf(2))) == rat_from_string("-3/4"));
  CHECK(e2(tv({{1, "1"}})) == 0);
}

TEST_CASE("oracle ambients are tolerance-tagged") {
  const Ambient amb = Ambient::with_oracle(make_euclidean_oracle());
  TargetVector v(amb);
  v.set(1, rat_from_string("3/5"));
  v.set(2, rat_from_string("4/5"));
  const NormEstimate est = norm_estimate(v);
  CHECK_FALSE(est.exact);
  CHECK(est.tolerance > 0);
  CHECK(rat_to_double(est.value) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(amb.describe() == "oracle(euclid)");
}

TEST_CASE("ambient mismatch is rejected") {
  CHECK_THROWS_AS(tv({{1, "1"}}) + tv({{1, "1"}}, Ambient::linf(3)), std::invalid_argument);
}

}  // TEST_SUITE
