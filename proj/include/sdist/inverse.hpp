#pragma once

// The forward map K on the open simplex D = {0 < t_1 < ... < t_{s-1} < 1}
// (t_s = 1 implicit), its Jacobian, and inversion from ratio tuples back to
// normalized squared distances.

#include <Eigen/Core>
#include <Eigen/LU>
#include <cmath>
#include <string>
#include <vector>

#include "sdist/error.hpp"
#include "sdist/ratios.hpp"

namespace sdist {

inline constexpr double kDomainGap = 1e-12;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// True when every gap 0 < t_1 < ... < t_{s-1} < 1 exceeds min_gap.
template <typename Derived>
bool in_domain(const Eigen::MatrixBase<Derived>& t, double min_gap = kDomainGap) {
  using Scalar = typename Derived::Scalar;
  if (t.size() < 1) return false;
  Scalar prev(0);
  for (Index i = 0; i < t.size(); ++i) {
    if (!(t(i) - prev > Scalar(min_gap))) return false;
    prev = t(i);
  }
  return Scalar(1) - prev > Scalar(min_gap);
}

template <typename Derived>
void require_domain(const Eigen::MatrixBase<Derived>& t) {
  if (!in_domain(t)) throw Error(ErrorKind::domain, "t is not strictly inside 0 < t_1 < ... < t_{s-1} < 1");
}

/// Nodes (t_1, ..., t_{s-1}, 1).
template <typename Derived>
Vec<typename Derived::Scalar> with_unit_node(const Eigen::MatrixBase<Derived>& t) {
  Vec<typename Derived::Scalar> nodes(t.size() + 1);
  nodes << t, typename Derived::Scalar(1);
  return nodes;
}

/// All s values K_1..K_s, each computed from its own product.
template <typename Derived>
Vec<typename Derived::Scalar> forward_K_full(const Eigen::MatrixBase<Derived>& t) {
  require_domain(t);
  return lagrange_weights(with_unit_node(t), typename Derived::Scalar(0));
}

/// K_i = prod_{j != i} t_j / (t_j - t_i), i = 1..s-1.
template <typename Derived>
Vec<typename Derived::Scalar> forward_K(const Eigen::MatrixBase<Derived>& t) {
  return forward_K_full(t).head(t.size());
}

/// Analytic partials dK_i/dt_j:
///   i == j:  K_i * sum_{k != i, k <= s} 1/(t_k - t_i)
///   i != j:  K_i * (t_i / t_j) / (t_i - t_j)
template <typename Derived>
Mat<typename Derived::Scalar> jacobian(const Eigen::MatrixBase<Derived>& t) {
  using Scalar = typename Derived::Scalar;
  const Vec<Scalar> nodes = with_unit_node(t);
  const Vec<Scalar> k = forward_K(t);
  const Index m = t.size();
  Mat<Scalar> jac(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (i == j) {
        Scalar sum(0);
        for (Index l = 0; l < nodes.size(); ++l)
          if (l != i) sum += Scalar(1) / (nodes(l) - nodes(i));
        jac(i, i) = sum * k(i);
      } else {
        jac(i, j) = (t(i) / t(j)) / (t(i) - t(j)) * k(i);
      }
    }
  }
  return jac;
}

/// det J = (s-1)! prod_i K_i / (1 - t_i).
template <typename Derived>
typename Derived::Scalar jacobian_det_closed(const Eigen::MatrixBase<Derived>& t) {
  using Scalar = typename Derived::Scalar;
  const Vec<Scalar> k = forward_K(t);
  Scalar det(1);
  for (Index i = 0; i < t.size(); ++i) det *= Scalar(i + 1) * k(i) / (Scalar(1) - t(i));
  return det;
}

/// Scaled residual max_i |K_i(t) - k_i| / max(1, |k_i|).
double scaled_residual(const Eigen::VectorXd& t, const Eigen::VectorXd& k_target);

/// Throws ErrorKind::invalid_sign unless sign(k_i) = (-1)^(i-1) for every i.
void require_sign_pattern(const Eigen::VectorXd& k_target);

struct InverseOptions {
  int max_iter = 200;
  double tol_res = 1e-10;   // on the scaled residual
  bool multistart = true;
};

struct InversionResult {
  bool converged = false;
  Eigen::VectorXd t;
  double residual = 0;      // scaled residual at t
  int iterations = 0;
  int start_index = -1;     // 0: default start t_i = i/s; 1..5: geometric spreads
};

/// Damped Newton with step halving that keeps the iterate strictly inside D.
/// The equations are taken in the tail sums T_r = k_{r+1} + ... + k_s as
/// log|T_r(t)| = log|T_r(k)| when those alternate in sign (as they do on all
/// of D), otherwise as log|K_i(t)| = log|k_i|. Non-integer targets are
/// accepted.
InversionResult invert_K(const Eigen::VectorXd& k_target, const InverseOptions& options = {});

/// Starting points tried by invert_K, in order.
std::vector<Eigen::VectorXd> newton_starts(Index s);

struct ClosedFormResult {
  Eigen::Vector2d t;
  char branch_t1 = '+';   // sign taken in front of the square root
  char branch_t2 = '+';
  double residual = 0;
};

/// s = 3 closed form
///   t_1 = (k1 S +- sqrt(k1 k2 S)) / (k1 (k1 + k2)),
///   t_2 = (k2 S +- sqrt(k1 k2 S)) / (k2 (k1 + k2)),   S = k1 + k2 - 1.
/// All four sign combinations are tried and validated against forward_K.
/// Throws ErrorKind::singular when |k1 + k2| < 1e-12, ErrorKind::no_solution
/// when no combination lands in D and round-trips within 1e-9.
ClosedFormResult invert_s3_closed(double k1, double k2);

}  // namespace sdist
