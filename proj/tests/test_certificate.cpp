#include <cmath>
#include <random>

#include "bundled.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "sdist/certificate.hpp"
#include "sdist/error.hpp"

using namespace sdist;

namespace {

PointSet unit_square() {
  Eigen::MatrixXd m(4, 2);
  m << 0, 0, 1, 0, 1, 1, 0, 1;
  return PointSet(m);
}

std::vector<Setting> applicable_settings(const PointSet& x) {
  AnalyzeOptions options;
  options.all = true;
  std::vector<Setting> out;
  for (const auto& r : analyze(x, options).reports) out.push_back(r.setting);
  return out;
}

Count class_count(const PointSet& x, Setting setting) {
  AnalyzeOptions options;
  options.all = true;
  for (const auto& r : analyze(x, options).reports)
    if (r.setting == setting) return Count(r.indices.size());
  return 0;
}

Count first_class(const PointSet& x, Setting setting) {
  AnalyzeOptions options;
  options.all = true;
  for (const auto& r : analyze(x, options).reports)
    if (r.setting == setting) return r.indices.front();
  return 1;
}

}  // namespace

TEST_CASE("Johnson indicator matrix decomposes as kI + A") {
  const auto x = construct_johnson(10, 3);
  const auto im = indicator_matrix(x, Setting::euclidean, 1);
  CHECK(im.n() == 165);
  CHECK(im.k == doctest::Approx(3));
  CHECK(im.n_cap == 77);
  CHECK(im.decomposition_error() < 1e-9);
  CHECK(im.M.diagonal().isConstant(im.M(0, 0), 1e-9));
  CHECK(numeric_rank(im.M) <= 77);
  const auto spec = eigen_multiplicities(im.M);
  CHECK(spec.zero_multiplicity >= 88);

  const auto verdict = verify_key_lemma(im);
  CHECK(verdict.passed());
  CHECK(verdict.rounded_k == 3);
}

TEST_CASE("unit square diagonal class") {
  const auto im = indicator_matrix(unit_square(), Setting::euclidean, 2);
  CHECK(im.k == doctest::Approx(-1));
  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(4, 4);
  a2(0, 2) = a2(2, 0) = a2(1, 3) = a2(3, 1) = 1;
  CHECK(oracle::max_abs_diff(im.M, a2 - Eigen::MatrixXd::Identity(4, 4)) < 1e-12);
}

TEST_CASE("unit square edge class spectrum is the shifted 4-cycle") {
  const auto im = indicator_matrix(unit_square(), Setting::euclidean, 1);
  CHECK(im.k == doctest::Approx(2));
  const auto spec = eigen_multiplicities(im.M);
  const double expected[] = {0, 2, 2, 4};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(spec.eigenvalues(i) - expected[i]) < 1e-12);
  CHECK(spec.multiplicity_of(2) == 2);
}

TEST_CASE("E8 signed indicator matrix") {
  const auto x = construct_named(NamedSet::e8_roots);
  const auto im = indicator_matrix(x, Setting::antipodal_even_v2, 2);
  CHECK(im.n() == 120);
  CHECK(im.k == doctest::Approx(2));
  for (Index i = 0; i < im.n(); ++i) {
    CHECK(im.M(i, i) == doctest::Approx(2));
    for (Index j = 0; j < im.n(); ++j) {
      if (i == j) continue;
      const double a = im.A(i, j);
      CHECK((a == 0.0 || a == 1.0 || a == -1.0));
    }
  }
  CHECK(im.decomposition_error() < 1e-9);
  CHECK(verify_key_lemma(im).passed());
}

TEST_CASE("E8 v1 tight bound") {
  const auto im = indicator_matrix(construct_named(NamedSet::e8_roots), Setting::antipodal_even_v1, 2);
  const auto verdict = verify_key_lemma(im);
  CHECK(verdict.rounded_k == 4);
  CHECK(verdict.ratio_bound == 4);
  CHECK(verdict.passed());
}

TEST_CASE("pentagon certificate") {
  const auto im = indicator_matrix(construct_named(NamedSet::pentagon), Setting::euclidean, 1);
  CHECK(numeric_rank(im.M) <= 4);
  const auto verdict = verify_key_lemma(im);
  const auto* rank = verdict.find("rank");
  const auto* zero = verdict.find("zero_multiplicity");
  const auto* integral = verdict.find("integral_k");
  REQUIRE(rank);
  REQUIRE(zero);
  REQUIRE(integral);
  CHECK(rank->passed);
  CHECK_FALSE(zero->applies);
  CHECK_FALSE(integral->passed);
  CHECK_FALSE(verdict.hypothesis_met);
  CHECK_FALSE(verdict.theorem_violated());

  // Seidel matrix of the pentagon's edge class satisfies the eigenvalue bound.
  const Index n = im.n();
  const double k = im.k;
  const Eigen::MatrixXd d = 2 * im.M - Eigen::MatrixXd::Ones(n, n) - (2 * k - 1) * Eigen::MatrixXd::Identity(n, n);
  const auto spec = eigen_multiplicities(d);
  const auto c = spec.largest_cluster();
  CHECK(verify_sign_matrix_bound(d, c.center, c.multiplicity));
}

TEST_CASE("numeric rank and multiplicities of simple matrices") {
  CHECK(numeric_rank(Eigen::MatrixXd::Zero(6, 6)) == 0);
  CHECK(numeric_rank(Eigen::MatrixXd::Identity(6, 6)) == 6);
  const auto spec = eigen_multiplicities(Eigen::MatrixXd::Identity(5, 5));
  REQUIRE(spec.clusters.size() == 1);
  CHECK(spec.clusters[0].center == doctest::Approx(1));
  CHECK(spec.clusters[0].multiplicity == 5);
}

TEST_CASE("sign matrix bound") {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  CHECK(verify_sign_matrix_bound(d, 1, 1));
  CHECK_FALSE(verify_sign_matrix_bound(d, 1.5, 1));
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 0.5, 0.5, 0;
  CHECK_THROWS_AS(verify_sign_matrix_bound(bad, 1, 1), Error);
}

TEST_CASE("random sign matrices obey the eigenvalue bound") {
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> entry(-1, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 20;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = entry(rng);
    const auto c = eigen_multiplicities(d).largest_cluster();
    CHECK(verify_sign_matrix_bound(d, c.center, c.multiplicity));
  }
}

TEST_CASE("certificates on every bundled set and class") {
  for (const auto& b : bundled_sets()) {
    for (Setting setting : applicable_settings(b.points)) {
      const Count classes = class_count(b.points, setting);
      const Count first = first_class(b.points, setting);
      for (Count i = first; i < first + classes; ++i) {
        INFO(b.name << " " << to_string(setting) << " class " << i);
        const auto im = indicator_matrix(b.points, setting, i);
        CHECK(im.M == im.M.transpose());
        CHECK(im.decomposition_error() < 1e-8);
        const Index rank = numeric_rank(im.M);
        CHECK(rank <= im.n_cap);
        if (im.n() >= 2 * im.n_cap) CHECK(eigen_multiplicities(im.M).zero_multiplicity >= im.n_cap);
        CHECK_FALSE(verify_key_lemma(im).theorem_violated());
      }
    }
  }
}

TEST_CASE("signed verdict does not depend on the half-set representatives") {
  const auto x = construct_named(NamedSet::e8_roots);
  const auto im = indicator_matrix(x, Setting::antipodal_even_v2, 2);
  Eigen::VectorXd flips = Eigen::VectorXd::Ones(im.n());
  std::mt19937_64 rng(3);
  for (Index i = 0; i < flips.size(); ++i)
    if (rng() & 1) flips(i) = -1;
  const Eigen::MatrixXd conj = flips.asDiagonal() * im.M * flips.asDiagonal();
  const auto a = eigen_multiplicities(im.M);
  const auto b = eigen_multiplicities(conj);
  CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(numeric_rank(im.M) == numeric_rank(conj));
}

TEST_CASE("certify dispatch") {
  CertifyRequest request;
  request.class_index = 1;
  const auto verdicts = certify(construct_johnson(10, 3), request);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].passed());
  const auto all = certify(construct_johnson(10, 3));
  CHECK(all.size() == 3);
}
