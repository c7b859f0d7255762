#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sdist/error.hpp"
#include "sdist/inverse.hpp"

using namespace sdist;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(Index(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::parse;
}

}  // namespace

TEST_CASE("forward map values") {
  const Eigen::VectorXd full = forward_K_full(vec({1.0 / 3, 2.0 / 3}));
  CHECK(full(0) == doctest::Approx(3));
  CHECK(full(1) == doctest::Approx(-3));
  CHECK(full(2) == doctest::Approx(1));

  const Eigen::VectorXd k = forward_K_full(vec({0.5, 0.75}));
  CHECK(k(0) == doctest::Approx(6));
  CHECK(k(1) == doctest::Approx(-8));
  CHECK(k(2) == doctest::Approx(3));

  CHECK(forward_K(vec({0.5}))(0) == doctest::Approx(2));
  CHECK(kind_of([] { forward_K(vec({0.6, 0.4})); }) == ErrorKind::domain);
  CHECK(kind_of([] { forward_K(vec({0.5, 1.0})); }) == ErrorKind::domain);
}

TEST_CASE("closed-form determinant") {
  CHECK(jacobian_det_closed(vec({0.25, 0.5})) == doctest::Approx(-256.0 / 9).epsilon(1e-12));
  CHECK(jacobian_det_closed(vec({0.5})) == doctest::Approx(4).epsilon(1e-12));
  CHECK(jacobian(vec({0.25, 0.5})).determinant() == doctest::Approx(-256.0 / 9).epsilon(1e-12));
}

TEST_CASE("Newton inversion of worked tuples") {
  const auto johnson = invert_K(vec({3, -3}));
  REQUIRE(johnson.converged);
  CHECK(std::abs(johnson.t(0) - 1.0 / 3) < 1e-10);
  CHECK(std::abs(johnson.t(1) - 2.0 / 3) < 1e-10);

  const auto other = invert_K(vec({6, -8}));
  REQUIRE(other.converged);
  CHECK(std::abs(other.t(0) - 0.5) < 1e-10);
  CHECK(std::abs(other.t(1) - 0.75) < 1e-10);

  const auto two = invert_K(vec({2}));
  REQUIRE(two.converged);
  CHECK(std::abs(two.t(0) - 0.5) < 1e-12);

  CHECK(kind_of([] { invert_K(vec({-2})); }) == ErrorKind::invalid_sign);
  CHECK(kind_of([] { invert_K(vec({3, 3})); }) == ErrorKind::invalid_sign);
}

TEST_CASE("non-integer targets are accepted") {
  const Eigen::VectorXd t = vec({0.2, 0.55, 0.9});
  const auto r = invert_K(forward_K(t));
  REQUIRE(r.converged);
  CHECK((r.t - t).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("s = 3 closed form") {
  const auto r = invert_s3_closed(6, -8);
  CHECK(std::abs(r.t(0) - 0.5) < 1e-12);
  CHECK(std::abs(r.t(1) - 0.75) < 1e-12);
  CHECK(r.branch_t1 == '+');
  CHECK(r.branch_t2 == '-');
  CHECK(kind_of([] { invert_s3_closed(3, -3); }) == ErrorKind::singular);
  CHECK(kind_of([] { invert_s3_closed(1, -1); }) == ErrorKind::singular);
}

TEST_CASE("closed form agrees with Newton") {
  std::mt19937_64 rng(5);
  int agreed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::VectorXd t = oracle::random_domain_point(2, 1e-2, rng);
    const Eigen::VectorXd k = forward_K(t);
    if (std::abs(k(0) + k(1)) < 1e-6) continue;
    const auto cf = invert_s3_closed(k(0), k(1));
    const auto nt = invert_K(k);
    REQUIRE(nt.converged);
    CHECK((Eigen::VectorXd(cf.t) - nt.t).cwiseAbs().maxCoeff() < 1e-8);
    ++agreed;
  }
  CHECK(agreed > 250);
}

TEST_CASE("random round trips, Jacobian and identities") {
  std::mt19937_64 rng(0);
  for (Index s = 2; s <= 6; ++s) {
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::VectorXd t = oracle::random_domain_point(s - 1, 1e-3, rng);
      const Eigen::VectorXd full = forward_K_full(t);
      CHECK(std::abs(full.sum() - 1) < 1e-10 * std::max(1.0, full.cwiseAbs().maxCoeff()));
      for (Index i = 0; i < s - 1; ++i) CHECK((i % 2 == 0 ? full(i) > 0 : full(i) < 0));

      const Eigen::MatrixXd jac = jacobian(t);
      const Eigen::MatrixXd fd = oracle::central_difference_jacobian(
          [](const Eigen::VectorXd& p) { return Eigen::VectorXd(forward_K(p)); }, t, 1e-5 * oracle::domain_min_gap(t));
      CHECK((jac - fd).norm() / jac.norm() < 1e-6);

      const double det_closed = jacobian_det_closed(t);
      CHECK(det_closed != 0.0);
      const long double numeric = jacobian(Eigen::Matrix<long double, Eigen::Dynamic, 1>(t.cast<long double>())).determinant();
      CHECK(std::abs(double(numeric) - det_closed) <= 1e-9 * std::abs(det_closed));

      const auto r = invert_K(forward_K(t));
      REQUIRE(r.converged);
      CHECK((r.t - t).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("starting points lie in the domain") {
  for (Index s = 2; s <= 8; ++s) {
    const auto starts = newton_starts(s);
    CHECK(starts.size() == 6);
    for (const auto& t : starts) CHECK(in_domain(t));
  }
}

TEST_CASE("tail sums alternate on the domain") {
  std::mt19937_64 rng(7);
  for (Index s = 2; s <= 7; ++s) {
    for (int trial = 0; trial < 300; ++trial) {
      const Eigen::VectorXd full = forward_K_full(oracle::random_domain_point(s - 1, 1e-4, rng));
      for (Index r = 1; r < s; ++r) {
        const double tail = full.tail(s - r).sum();
        CHECK((r % 2 == 1 ? tail < 0 : tail > 0));
      }
    }
  }
}

TEST_CASE("targets with alternating tail sums are reached") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> log_mag(-5, 5);
  for (Index s = 2; s <= 5; ++s) {
    for (int trial = 0; trial < 200; ++trial) {
      // Build k from tails T_r = (-1)^r e^{y_r}, T_0 = 1, k_i = T_{i-1} - T_i.
      Eigen::VectorXd tails(s);
      tails(0) = 1;
      for (Index r = 1; r < s; ++r) tails(r) = (r % 2 == 1 ? -1.0 : 1.0) * std::exp(log_mag(rng));
      Eigen::VectorXd k(s - 1);
      for (Index i = 0; i < s - 1; ++i) k(i) = tails(i) - tails(i + 1);
      const auto r = invert_K(k);
      CHECK(r.converged);
      CHECK(in_domain(r.t));
    }
  }
}

TEST_CASE("k_1 = 1 is out of reach for s = 3") {
  Eigen::VectorXd k(2);
  k << 1, -1;
  CHECK_FALSE(invert_K(k).converged);
}
