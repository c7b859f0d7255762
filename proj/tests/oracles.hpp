#pragma once
// Independent reference computations used only by the tests. Each one is
// written from the defining formula and avoids the library's own routines.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sdist/pointset.hpp"

namespace oracle {

using sdist::Count;
using sdist::Index;

inline std::int64_t pascal_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::vector<std::vector<std::int64_t>> row(n + 1);
  for (int i = 0; i <= n; ++i) {
    row[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) row[i][j] = row[i - 1][j - 1] + row[i - 1][j];
  }
  return row[n][k];
}

// Largest k with k <= 1/2 + sqrt(N^2/(2N-2) + 1/4), i.e. (N-1)(2k-1)^2 <= 2N^2 + N - 1.
inline std::int64_t brute_U(std::int64_t n) {
  std::int64_t k = 0;
  while ((n - 1) * (2 * (k + 1) - 1) * (2 * (k + 1) - 1) <= 2 * n * n + n - 1) ++k;
  return k;
}

// Largest k with k <= sqrt(2N^2/(N+1)).
inline std::int64_t brute_antipodal_bound(std::int64_t n) {
  std::int64_t k = 0;
  while ((k + 1) * (k + 1) * (n + 1) <= 2 * n * n) ++k;
  return k;
}

// Weight-s words of length d+1; squared distances are Hamming distances.
inline std::vector<std::uint32_t> johnson_words(int d, int s) {
  std::vector<std::uint32_t> words;
  for (std::uint32_t w = 0; w < (1u << (d + 1)); ++w)
    if (std::popcount(w) == s) words.push_back(w);
  return words;
}

inline std::vector<int> johnson_squared_distances(int d, int s) {
  const auto words = johnson_words(d, s);
  std::vector<bool> seen(2 * s + 1, false);
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b) seen[std::popcount(words[a] ^ words[b])] = true;
  std::vector<int> out;
  for (int v = 1; v <= 2 * s; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

// k_i = prod_{j != i} a_j / (a_j - a_i), written out literally.
inline std::vector<double> lrs_ratios(const std::vector<double>& a) {
  std::vector<double> k(a.size(), 1.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) k[i] *= a[j] / (a[j] - a[i]);
  return k;
}

inline Eigen::MatrixXd central_difference_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& t, double h) {
  const Eigen::VectorXd f0 = f(t);
  Eigen::MatrixXd jac(f0.size(), t.size());
  for (Index j = 0; j < t.size(); ++j) {
    Eigen::VectorXd plus = t, minus = t;
    plus(j) += h;
    minus(j) -= h;
    jac.col(j) = (f(plus) - f(minus)) / (2 * h);
  }
  return jac;
}

// Every tuple in [-u, u]^(s-1) satisfying the sign, bound and k_s constraints,
// in lexicographic order.
inline std::vector<std::vector<Count>> brute_tuples(Count s, Count u) {
  std::vector<std::vector<Count>> out;
  const Count m = s - 1;
  std::vector<Count> cur(std::size_t(m), -u);
  auto admissible = [&](Count value, Count index) {
    if (value == 0 || value < -u || value > u) return false;
    return (index % 2 == 1) ? value > 0 : value < 0;
  };
  while (true) {
    Count sum = 0;
    bool ok = true;
    for (Count i = 0; i < m; ++i) {
      ok = ok && admissible(cur[std::size_t(i)], i + 1);
      sum += cur[std::size_t(i)];
    }
    if (ok && admissible(1 - sum, s)) out.push_back(cur);
    Count pos = m - 1;
    while (pos >= 0 && cur[std::size_t(pos)] == u) cur[std::size_t(pos--)] = -u;
    if (pos < 0) break;
    ++cur[std::size_t(pos)];
  }
  return out;
}

inline Eigen::MatrixXd random_orthogonal(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ();
}

// Uniform point of D with every gap at least min_gap: sorted uniforms,
// resampled until the gaps qualify.
inline Eigen::VectorXd random_domain_point(Index m, double min_gap, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (true) {
    std::vector<double> v(static_cast<std::size_t>(m));
    for (auto& x : v) x = unif(rng);
    std::sort(v.begin(), v.end());
    bool ok = v.front() >= min_gap && 1.0 - v.back() >= min_gap;
    for (std::size_t i = 1; i < v.size(); ++i) ok = ok && v[i] - v[i - 1] >= min_gap;
    if (ok) return Eigen::Map<Eigen::VectorXd>(v.data(), m);
  }
}

// Smallest gap among 0, t_1, ..., t_m, 1.
inline double domain_min_gap(const Eigen::VectorXd& t) {
  double gap = std::min(t(0), 1.0 - t(t.size() - 1));
  for (Index i = 1; i < t.size(); ++i) gap = std::min(gap, t(i) - t(i - 1));
  return gap;
}

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
