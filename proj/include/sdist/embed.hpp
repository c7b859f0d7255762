#pragma once

// Realizability of squared-distance and Gram matrices, and congruence of
// point sets up to relabeling.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "sdist/pointset.hpp"

namespace sdist {

inline constexpr double kDefaultPsdTol = 1e-8;

struct EmbeddingVerdict {
  bool embeddable = false;
  bool psd = false;
  Index minimal_dimension = 0;
  std::optional<PointSet> realization;
  double eigenvalue_slack = 0;      // most negative (centered) eigenvalue
  double reproduction_error = 0;    // relative, realization vs input; 0 when not embeddable
};

/// H = I - J/n.
Eigen::MatrixXd centering_matrix(Index n);
/// G = -1/2 H C H.
Eigen::MatrixXd double_center(const Eigen::MatrixXd& c);

/// Throws ErrorKind::shape unless c is square, symmetric, zero on the diagonal
/// and positive off the diagonal.
void validate_squared_distance_matrix(const Eigen::MatrixXd& c);

/// Eigenvalues >= -tol_psd * lambda_max count as nonnegative; the numeric
/// rank counts eigenvalues above tol_psd * lambda_max. Embeddable in R^d iff
/// PSD and rank <= d. The realization has exactly d coordinates.
EmbeddingVerdict euclidean_embeddable(const Eigen::MatrixXd& c, Index d, double tol_psd = kDefaultPsdTol);

/// Same criterion applied directly to a Gram matrix with unit diagonal; the
/// realization lies on S^{d-1}.
EmbeddingVerdict spherical_embeddable(const Eigen::MatrixXd& g, Index d, double tol_psd = kDefaultPsdTol);

enum class Congruence { congruent, not_congruent, inconclusive };

struct CongruenceResult {
  Congruence verdict = Congruence::inconclusive;
  std::vector<Index> mapping;   // x point a -> y point mapping[a] when congruent
  std::int64_t nodes = 0;       // backtracking nodes visited
};

inline constexpr std::int64_t kDefaultNodeCap = 1'000'000;

/// Searches for a relabeling under which the squared-distance matrices agree
/// within tol (relative to the largest squared distance). Candidates are
/// pruned by sorted distance rows; the backtracking is capped at node_cap and
/// reports inconclusive beyond it. The ambient dimensions may differ. Throws
/// ErrorKind::size_mismatch on different cardinalities.
CongruenceResult congruent(const PointSet& x, const PointSet& y, double tol = 1e-8,
                           std::int64_t node_cap = kDefaultNodeCap);

}  // namespace sdist
