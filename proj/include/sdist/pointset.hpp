#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdist/bounds.hpp"

namespace sdist {

using Index = Eigen::Index;

/// Finite point set X in R^d, one point per row. Construction enforces n >= 2
/// and rejects duplicate points (duplicates would put distance 0 into A(X)).
class PointSet {
 public:
  explicit PointSet(Eigen::MatrixXd points, std::vector<std::string> labels = {});

  Index size() const { return points_.rows(); }
  Index dimension() const { return points_.cols(); }
  const Eigen::MatrixXd& points() const { return points_; }
  auto point(Index i) const { return points_.row(i); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Eigen::MatrixXd points_;
  std::vector<std::string> labels_;
};

enum class PointFormat { json, csv };

PointSet load_points(std::istream& in, PointFormat format);
PointSet load_points(const std::string& path);  // format from extension
PointSet parse_points(std::string_view text, PointFormat format);

/// Pairwise squared Euclidean distances, computed row by row (no Gram trick) so
/// equal distances stay bitwise close.
Eigen::MatrixXd squared_distance_matrix(const Eigen::MatrixXd& points);
inline Eigen::MatrixXd squared_distance_matrix(const PointSet& x) {
  return squared_distance_matrix(x.points());
}

/// Dimension of the smallest affine flat containing X (numeric rank of the
/// centered coordinates).
Index affine_dimension(const PointSet& x, double rel_tol = 1e-9);
/// Dimension of the linear span of X.
Index linear_dimension(const PointSet& x, double rel_tol = 1e-9);

/// Partition of the unordered pairs of X into s value classes.
struct PairClasses {
  Eigen::VectorXd values;   // class representatives, strictly increasing
  Eigen::MatrixXi class_of; // class index per pair, -1 on the diagonal
  double tolerance = 0;

  Index s() const { return values.size(); }
  Index n() const { return class_of.rows(); }
  /// 0/1 adjacency matrix A_i of class i (0-based).
  Eigen::MatrixXd adjacency(Index i) const;
  std::vector<Count> pair_counts() const;
};

/// Groups sorted pair values by single linkage. Relative mode compares
/// |a-b|/max(|a|,|b|), absolute mode compares |a-b|. A split whose gap is within
/// 10*tol, or a class whose chained span exceeds 10*tol, is ambiguous and throws.
PairClasses group_pair_values(const Eigen::MatrixXd& pair_values, double tol, bool relative);

struct DistanceProfile : PairClasses {
  const Eigen::VectorXd& squared_distances() const { return values; }
};

struct InnerProductProfile : PairClasses {
  bool contains_minus_one = false;
  bool antipodal = false;
  const Eigen::VectorXd& inner_products() const { return values; }
};

inline constexpr double kDefaultGroupingTol = 1e-9;

DistanceProfile distance_profile(const PointSet& x, double tol = kDefaultGroupingTol);

bool is_on_unit_sphere(const PointSet& x, double tol = kDefaultGroupingTol);

/// Inner products are grouped with an absolute tolerance (they live in [-1,1]
/// and include 0). Throws ErrorKind::not_on_sphere.
InnerProductProfile inner_product_profile(const PointSet& x, double tol = kDefaultGroupingTol);

struct AntipodalCheck {
  bool antipodal = false;
  std::vector<Index> partner;  // partner[i] = index of -x_i; empty when not antipodal
};

AntipodalCheck is_antipodal(const PointSet& x, double tol = kDefaultGroupingTol);

/// One representative per antipodal pair, the lexicographically larger of x and
/// -x, in original index order.
std::vector<Index> half_set_indices(const PointSet& x, double tol = kDefaultGroupingTol);
PointSet half_set(const PointSet& x, double tol = kDefaultGroupingTol);

PointSet select_rows(const PointSet& x, const std::vector<Index>& rows);

/// All weight-s 0/1 vectors of length d+1. Requires 1 <= s <= (d+1)/2.
PointSet construct_johnson(Count d, Count s);

enum class NamedSet { cross_polytope, simplex, hypercube, e8_roots, pentagon, icosahedron };

std::optional<NamedSet> named_set_from_string(std::string_view name);
bool named_set_takes_dimension(NamedSet name);

/// Standard configurations used as fixtures; all are centered and scaled onto
/// the unit sphere.
PointSet construct_named(NamedSet name, Count d = 0);
PointSet construct_named(std::string_view name, Count d = 0);

}  // namespace sdist
