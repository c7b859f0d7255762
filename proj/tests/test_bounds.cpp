#include "doctest.h"
#include "oracles.hpp"
#include "sdist/bounds.hpp"
#include "sdist/error.hpp"

using namespace sdist;

TEST_CASE("binomial matches Pascal's triangle") {
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == oracle::pascal_binomial(n, k));
  CHECK(binomial(5, 7) == 0);
}

TEST_CASE("binomial overflow is reported") {
  CHECK_THROWS_AS(binomial(200, 100), Error);
}

TEST_CASE("polynomial space dimensions") {
  CHECK(dim_poly_space(PolySpace::w_space, 10, 2) == 77);
  CHECK(dim_poly_space(PolySpace::full, 7, 0) == 1);
  CHECK(dim_poly_space(PolySpace::sphere, 3, 2) == 9);
  CHECK(dim_poly_space(PolySpace::full, 3, 2) == 10);
  CHECK(dim_poly_space(PolySpace::star_sphere, 9, 2) == 45);
}

TEST_CASE("U(N) exact floor") {
  CHECK(ratio_bound_U(77) == 6);
  CHECK(ratio_bound_U(36) == 4);
  CHECK(ratio_bound_U(2) == 2);
  CHECK(ratio_bound_U(7) == 2);
  for (Count n = 2; n <= 20000; ++n) {
    INFO("N = " << n);
    REQUIRE(ratio_bound_U(n) == oracle::brute_U(n));
  }
}

TEST_CASE("antipodal ratio bound exact floor") {
  CHECK(antipodal_ratio_bound(8) == 3);
  CHECK(antipodal_ratio_bound(1) == 1);
  CHECK(antipodal_ratio_bound(36) == 8);
  for (Count n = 1; n <= 20000; ++n) REQUIRE(antipodal_ratio_bound(n) == oracle::brute_antipodal_bound(n));
}

TEST_CASE("cardinality bounds") {
  CHECK(cardinality_bound(CardinalityBound::euclidean_bbs, 10, 3) == 286);
  CHECK(cardinality_bound(CardinalityBound::spherical_dgs, 8, 4) == 450);
  CHECK(cardinality_bound(CardinalityBound::antipodal_dgs, 8, 4) == 240);
}

TEST_CASE("theorem contexts") {
  const auto e = theorem_context(Setting::euclidean, 10, 3);
  CHECK(e.n_dim == 77);
  CHECK(e.cardinality_threshold == 154);
  CHECK(e.ratio_bound == 6);
  CHECK(e.space == PolySpace::w_space);
  CHECK(e.degree == 2);

  const auto a = theorem_context(Setting::antipodal_even_v1, 8, 4);
  CHECK(a.n_dim == 36);
  CHECK(a.cardinality_threshold == 144);
  CHECK(a.ratio_bound == 4);

  const auto v2 = theorem_context(Setting::antipodal_even_v2, 8, 4);
  CHECK(v2.n_dim == 8);
  CHECK(v2.cardinality_threshold == 34);
  CHECK(v2.ratio_bound == 3);

  const auto sph = theorem_context(Setting::spherical, 2, 2);
  CHECK(sph.n_dim == 3);
  CHECK(sph.cardinality_threshold == 6);

  CHECK_THROWS_AS(theorem_context(Setting::antipodal_odd_v1, 8, 4), Error);
  CHECK_THROWS_AS(theorem_context(Setting::antipodal_even_v1, 8, 3), Error);
  CHECK_THROWS_AS(theorem_context(Setting::euclidean, 0, 3), Error);
}

TEST_CASE("odd antipodal contexts") {
  const auto v1 = theorem_context(Setting::antipodal_odd_v1, 3, 5);
  CHECK(v1.n_dim == oracle::pascal_binomial(3 + 5 - 4, 5 - 3));
  CHECK(v1.cardinality_threshold == 4 * v1.n_dim);
  const auto v2 = theorem_context(Setting::antipodal_odd_v2, 3, 5);
  CHECK(v2.n_dim == oracle::pascal_binomial(3 + 5 - 3, 5 - 2));
  CHECK(v2.cardinality_threshold == 4 * v2.n_dim + 2);
}

TEST_CASE("setting names round trip") {
  for (auto s : {Setting::euclidean, Setting::spherical, Setting::antipodal_odd_v1, Setting::antipodal_odd_v2,
                 Setting::antipodal_even_v1, Setting::antipodal_even_v2}) {
    const auto back = setting_from_string(to_string(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK_FALSE(setting_from_string("hyperbolic").has_value());
}
