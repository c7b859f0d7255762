#pragma once

// Indicator matrices M = (F_x(y)) built from the interpolating polynomials of
// the integrality proofs, and the rank / spectral checks they must satisfy.

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "sdist/bounds.hpp"
#include "sdist/pointset.hpp"
#include "sdist/ratios.hpp"

namespace sdist {

inline constexpr double kDefaultRankTol = 1e-8;     // times n * sigma_max
inline constexpr double kDefaultClusterTol = 1e-6;  // times max |eigenvalue|

struct IndicatorMatrix {
  Eigen::MatrixXd M;          // F_x(y), evaluated pair by pair
  Eigen::MatrixXd A;          // class pattern from the profile (signed for v2)
  Setting setting;
  Count class_index = 0;      // 1-based theorem index i
  double k = 0;               // diagonal claimed by the ratio formula
  Count n_cap = 0;            // dimension of the space the F_x live in
  PolySpace space = PolySpace::full;
  Count degree = 0;
  Count dimension = 0;        // d used for n_cap
  Count cardinality = 0;      // |X| (the full set for antipodal settings)

  Index n() const { return M.rows(); }
  /// max |M - (kI + A)|
  double decomposition_error() const;
};

/// Builds M for class i of the given setting. Antipodal settings evaluate on
/// the half set Y_X of x (with the lexicographic representative rule), every
/// other setting on x itself.
IndicatorMatrix indicator_matrix(const PointSet& x, Setting setting, Count class_index,
                                 double tol = kDefaultGroupingTol);

/// Singular values above rel_tol * n * sigma_max.
Index numeric_rank(const Eigen::MatrixXd& m, double rel_tol = kDefaultRankTol);

struct EigenCluster {
  double center = 0;
  Index multiplicity = 0;
};

struct SpectrumReport {
  Eigen::VectorXd eigenvalues;  // ascending
  std::vector<EigenCluster> clusters;
  Index rank = 0;
  Index zero_multiplicity = 0;
  double zero_threshold = 0;
  double cluster_tol = 0;

  /// Number of eigenvalues within cluster_tol of value.
  Index multiplicity_of(double value) const;
  /// Cluster with the largest multiplicity (ties: smallest center).
  EigenCluster largest_cluster() const;
};

/// Eigenvalues with |lambda| <= rank_rel_tol * n * max|lambda| form the zero
/// cluster; the rest are single-linkage clustered with gap
/// cluster_rel_tol * max|lambda|.
SpectrumReport eigen_multiplicities(const Eigen::MatrixXd& m, double cluster_rel_tol = kDefaultClusterTol,
                                    double rank_rel_tol = kDefaultRankTol);

/// e^2 <= (n-1)(n-m)/m for a symmetric matrix with zero diagonal and 0/+-1
/// entries that has eigenvalue e of multiplicity >= m. Throws ErrorKind::shape
/// when d violates the entry constraints by more than 1e-9.
bool verify_sign_matrix_bound(const Eigen::MatrixXd& d, double e, Index m);

struct Check {
  std::string name;
  bool passed = false;
  bool applies = true;   // false: vacuous, or gated by an unmet cardinality hypothesis
  double measured = 0;
  double required = 0;
  std::string detail;
};

struct CertificateVerdict {
  Setting setting;
  Count class_index = 0;
  Count n = 0;              // order of M
  Count cardinality = 0;
  Count n_cap = 0;
  double k = 0;
  Count rounded_k = 0;
  Count ratio_bound = 0;
  bool hypothesis_met = false;
  Index rank = 0;
  Index zero_multiplicity = 0;
  std::vector<Check> checks;

  bool passed() const;            // every applicable check holds
  bool theorem_violated() const { return hypothesis_met && !passed(); }
  const Check* find(const std::string& name) const;
};

struct CertifyOptions {
  double tol_int = kDefaultIntegralityTol;
  double tol_rank = kDefaultRankTol;
  double cluster_tol = kDefaultClusterTol;
};

/// Runs the rank, multiplicity, integrality, bound and Seidel-matrix checks of
/// the key lemma (or its signed variant for v2 settings).
CertificateVerdict verify_key_lemma(const IndicatorMatrix& im, const CertifyOptions& options = {});

struct CertifyRequest {
  AnalyzeOptions analyze;             // setting selection and grouping tolerance
  std::optional<Count> class_index;   // nullopt: every class
  CertifyOptions certify;
};

std::vector<CertificateVerdict> certify(const PointSet& x, const CertifyRequest& request = {});

}  // namespace sdist
