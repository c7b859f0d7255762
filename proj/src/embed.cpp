#include "sdist/embed.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdist/error.hpp"

namespace sdist {

namespace {

EmbeddingVerdict verdict_from_gram(const Eigen::MatrixXd& g, Index d, double tol_psd) {
  EmbeddingVerdict v;
  const Index n = g.rows();
  // The QR iteration can stall on highly degenerate spectra; a slightly
  // rescaled copy has the same eigenvectors and usually converges.
  double rescale = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
  for (int attempt = 0; attempt < 3 && solver.info() != Eigen::Success; ++attempt) {
    rescale *= 1.0 + 0x1p-10;
    solver.compute(g * rescale);
  }
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::decomposition_failure, "eigensolver did not converge");
  const Eigen::VectorXd lambda = solver.eigenvalues() / rescale;  // ascending
  const double top = std::max(lambda(n - 1), 0.0);
  v.eigenvalue_slack = lambda(0);
  v.psd = lambda(0) >= -tol_psd * top;
  v.minimal_dimension = (lambda.array() > tol_psd * top).count();
  v.embeddable = v.psd && v.minimal_dimension <= d;
  if (!v.embeddable) return v;

  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, d);
  for (Index r = 0; r < v.minimal_dimension; ++r) {
    const Index col = n - 1 - r;
    coords.col(r) = solver.eigenvectors().col(col) * std::sqrt(lambda(col));
  }
  v.realization = PointSet(std::move(coords));
  return v;
}

double relative_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

Eigen::MatrixXd centering_matrix(Index n) {
  return Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
}

Eigen::MatrixXd double_center(const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd h = centering_matrix(c.rows());
  Eigen::MatrixXd g = -0.5 * h * c * h;
  return 0.5 * (g + g.transpose());
}

void validate_squared_distance_matrix(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols() || c.rows() < 2) throw Error(ErrorKind::shape, "need a square matrix of size >= 2");
  if (!c.allFinite()) throw Error(ErrorKind::shape, "non-finite entry");
  const double scale = c.cwiseAbs().maxCoeff();
  for (Index a = 0; a < c.rows(); ++a) {
    if (c(a, a) != 0.0) throw Error(ErrorKind::shape, "diagonal must be zero");
    for (Index b = a + 1; b < c.cols(); ++b) {
      if (std::abs(c(a, b) - c(b, a)) > 1e-12 * scale) throw Error(ErrorKind::shape, "matrix is not symmetric");
      if (!(c(a, b) > 0)) throw Error(ErrorKind::shape, "off-diagonal entries must be positive");
    }
  }
}

EmbeddingVerdict euclidean_embeddable(const Eigen::MatrixXd& c, Index d, double tol_psd) {
  validate_squared_distance_matrix(c);
  EmbeddingVerdict v = verdict_from_gram(double_center(c), d, tol_psd);
  if (v.realization) v.reproduction_error = relative_gap(c, squared_distance_matrix(*v.realization));
  return v;
}

EmbeddingVerdict spherical_embeddable(const Eigen::MatrixXd& g, Index d, double tol_psd) {
  if (g.rows() != g.cols() || g.rows() < 2) throw Error(ErrorKind::shape, "need a square matrix of size >= 2");
  if (!g.allFinite()) throw Error(ErrorKind::shape, "non-finite entry");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw Error(ErrorKind::shape, "matrix is not symmetric");
  if ((g.diagonal().array() - 1.0).abs().maxCoeff() > 1e-9) throw Error(ErrorKind::shape, "diagonal must be 1");
  EmbeddingVerdict v = verdict_from_gram(0.5 * (g + g.transpose()), d, tol_psd);
  if (v.realization) {
    const Eigen::MatrixXd& p = v.realization->points();
    v.reproduction_error = relative_gap(g, p * p.transpose());
  }
  return v;
}

CongruenceResult congruent(const PointSet& x, const PointSet& y, double tol, std::int64_t node_cap) {
  const Index n = x.size();
  if (y.size() != n) throw Error(ErrorKind::size_mismatch, "point sets have different cardinalities");
  const Eigen::MatrixXd cx = squared_distance_matrix(x);
  const Eigen::MatrixXd cy = squared_distance_matrix(y);
  const double abs_tol = tol * std::max(cx.maxCoeff(), cy.maxCoeff());
  CongruenceResult out;

  auto sorted_row = [](const Eigen::MatrixXd& c, Index a) {
    std::vector<double> row(std::size_t(c.cols()));
    for (Index b = 0; b < c.cols(); ++b) row[std::size_t(b)] = c(a, b);
    std::sort(row.begin(), row.end());
    return row;
  };
  auto rows_match = [&](const std::vector<double>& l, const std::vector<double>& r) {
    for (std::size_t i = 0; i < l.size(); ++i)
      if (std::abs(l[i] - r[i]) > abs_tol) return false;
    return true;
  };

  std::vector<std::vector<double>> rx, ry;
  for (Index a = 0; a < n; ++a) {
    rx.push_back(sorted_row(cx, a));
    ry.push_back(sorted_row(cy, a));
  }
  std::vector<std::vector<Index>> candidates(static_cast<std::size_t>(n));
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b)
      if (rows_match(rx[std::size_t(a)], ry[std::size_t(b)])) candidates[std::size_t(a)].push_back(b);
    if (candidates[std::size_t(a)].empty()) {
      out.verdict = Congruence::not_congruent;
      return out;
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) {
    return candidates[std::size_t(l)].size() < candidates[std::size_t(r)].size();
  });

  std::vector<Index> mapping(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  bool capped = false;

  auto consistent = [&](std::size_t depth, Index b) {
    const Index a = order[depth];
    for (std::size_t p = 0; p < depth; ++p) {
      const Index ap = order[p];
      if (std::abs(cx(a, ap) - cy(b, mapping[std::size_t(ap)])) > abs_tol) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == std::size_t(n)) return true;
    const Index a = order[depth];
    for (Index b : candidates[std::size_t(a)]) {
      if (used[std::size_t(b)] || !consistent(depth, b)) continue;
      if (++out.nodes > node_cap) {
        capped = true;
        return false;
      }
      mapping[std::size_t(a)] = b;
      used[std::size_t(b)] = 1;
      if (self(self, depth + 1)) return true;
      used[std::size_t(b)] = 0;
      mapping[std::size_t(a)] = -1;
      if (capped) return false;
    }
    return false;
  };

  if (search(search, 0)) {
    out.verdict = Congruence::congruent;
    out.mapping = std::move(mapping);
  } else {
    out.verdict = capped ? Congruence::inconclusive : Congruence::not_congruent;
  }
  return out;
}

}  // namespace sdist
