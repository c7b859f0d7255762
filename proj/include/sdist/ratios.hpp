#pragma once

// The integer ratios k_i of the Euclidean, spherical and antipodal integrality
// theorems. Every family is a Lagrange basis polynomial evaluated at one point:
//
//   euclidean   k_i = l_i(0) on nodes alpha_j^2
//   spherical   k_i = l_i(1) on nodes beta_j
//   antipodal   k_i = l_i(1) on nodes beta_j^2   (v2 additionally divides by beta_i)
//
// which is why the Euclidean and spherical families sum to one.

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sdist/bounds.hpp"
#include "sdist/error.hpp"
#include "sdist/pointset.hpp"

namespace sdist {

inline constexpr double kDegenerateRelTol = 1e-12;

namespace detail {

template <typename Derived>
void require_strictly_increasing(const Eigen::MatrixBase<Derived>& nodes, const char* what) {
  using std::abs;
  using std::max;
  for (Index i = 1; i < nodes.size(); ++i) {
    const auto scale = max(abs(nodes(i)), abs(nodes(i - 1)));
    if (abs(nodes(i) - nodes(i - 1)) <= kDegenerateRelTol * scale)
      throw Error(ErrorKind::degenerate, std::string(what) + " values coincide");
    if (nodes(i) < nodes(i - 1)) throw Error(ErrorKind::parameter, std::string(what) + " must be strictly increasing");
  }
}

}  // namespace detail

/// l_i(at) for the Lagrange basis on the given nodes.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> lagrange_weights(const Eigen::MatrixBase<Derived>& nodes,
                                                                           typename Derived::Scalar at) {
  using Scalar = typename Derived::Scalar;
  const Index s = nodes.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> k(s);
  for (Index i = 0; i < s; ++i) {
    Scalar prod(1);
    for (Index j = 0; j < s; ++j)
      if (j != i) prod *= (nodes(j) - at) / (nodes(j) - nodes(i));
    k(i) = prod;
  }
  return k;
}

/// k_i = prod_{j != i} a_j / (a_j - a_i) over ascending squared distances.
template <typename Derived>
auto euclidean_ratios(const Eigen::MatrixBase<Derived>& squared_distances) {
  if (squared_distances.size() < 1 || (squared_distances.array() <= 0).any())
    throw Error(ErrorKind::parameter, "squared distances must be positive");
  detail::require_strictly_increasing(squared_distances, "squared distance");
  return lagrange_weights(squared_distances, typename Derived::Scalar(0));
}

/// k_i = prod_{j != i} (1 - b_j) / (b_i - b_j) over ascending inner products.
template <typename Derived>
auto spherical_ratios(const Eigen::MatrixBase<Derived>& inner_products) {
  if (inner_products.size() < 1) throw Error(ErrorKind::parameter, "need at least one inner product");
  if ((inner_products.array() >= 1).any()) throw Error(ErrorKind::domain, "inner products must be < 1");
  detail::require_strictly_increasing(inner_products, "inner product");
  return lagrange_weights(inner_products, typename Derived::Scalar(1));
}

enum class Variant { v1, v2 };

/// Odd antipodal family over 0 < b_1 < ... < b_m < 1. v1 is the product over
/// squared nodes, v2 divides it by b_i.
template <typename Derived>
auto antipodal_odd_ratios(const Eigen::MatrixBase<Derived>& beta_abs, Variant variant) {
  using Scalar = typename Derived::Scalar;
  if (beta_abs.size() < 1) throw Error(ErrorKind::parameter, "need at least one inner product");
  if ((beta_abs.array() <= 0).any() || (beta_abs.array() >= 1).any())
    throw Error(ErrorKind::domain, "antipodal inner products must lie in (0, 1)");
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> squares = beta_abs.array().square().matrix();
  detail::require_strictly_increasing(squares, "squared inner product");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> k = lagrange_weights(squares, Scalar(1));
  if (variant == Variant::v2) k = (k.array() / beta_abs.array()).matrix();
  return k;
}

/// Even antipodal family: beta_abs(0) must be exactly 0, the rest ascending in
/// (0, 1). v1 yields k_1..k_m over all nodes; v2 yields k_2..k_m over the
/// nonzero nodes divided by b_i (empty when there are none).
template <typename Derived>
auto antipodal_even_ratios(const Eigen::MatrixBase<Derived>& beta_abs, Variant variant) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (beta_abs.size() < 1 || beta_abs(0) != Scalar(0))
    throw Error(ErrorKind::parameter, "even antipodal family needs beta_1 = 0");
  const Index m = beta_abs.size();
  const auto tail = beta_abs.tail(m - 1);
  if ((tail.array() <= 0).any() || (tail.array() >= 1).any())
    throw Error(ErrorKind::domain, "antipodal inner products must lie in (0, 1)");
  const Vec squares = beta_abs.array().square().matrix();
  detail::require_strictly_increasing(squares.tail(m - 1), "squared inner product");
  if (variant == Variant::v1) return Vec(lagrange_weights(squares, Scalar(1)));
  if (m == 1) return Vec(0);
  const Vec tail_sq = squares.tail(m - 1);
  return Vec((lagrange_weights(tail_sq, Scalar(1)).array() / tail.array()).matrix());
}

/// Reduced fraction with positive denominator.
struct Rational {
  Count num = 0;
  Count den = 1;

  static Rational make(Count num, Count den);
  double value() const { return double(num) / double(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class Parity { odd, even };

/// Recovers the positive inner products from integral v1/v2 families:
/// odd: beta_i = k1_i / k2_i; even: beta_i = k2_i / k1_i with v1 indexed from
/// i = 1 and v2 from i = 2 (v1 may also be passed already aligned with v2).
/// Throws ErrorKind::non_integer when an input is not within tol_int of an
/// integer, ErrorKind::zero_division on a zero divisor.
std::vector<Rational> rational_inner_products(const Eigen::VectorXd& v1, const Eigen::VectorXd& v2, Parity parity,
                                              double tol_int = 1e-6);

inline constexpr double kDefaultIntegralityTol = 1e-6;

struct RatioReport {
  Setting setting;
  TheoremContext context;
  Count cardinality = 0;        // |X| (the full set, also for antipodal settings)
  std::vector<Count> indices;   // 1-based theorem indices i of each k value
  Eigen::VectorXd k_values;
  std::vector<Count> rounded;
  std::vector<bool> integral;
  std::vector<bool> within_bound;
  bool hypothesis_met = false;
  double tol_int = kDefaultIntegralityTol;

  bool all_integral() const;
  bool all_within_bound() const;
  /// The theorem's hypothesis holds but its conclusion does not.
  bool theorem_violated() const { return hypothesis_met && !(all_integral() && all_within_bound()); }
  /// Sum of the k values; equals 1 for the Euclidean and spherical families.
  double k_sum() const { return k_values.sum(); }
};

RatioReport make_ratio_report(const TheoremContext& context, Count cardinality, std::vector<Count> indices,
                              Eigen::VectorXd k_values, double tol_int);

enum class SettingChoice { automatic, euclidean, spherical, antipodal };

struct AnalyzeOptions {
  SettingChoice choice = SettingChoice::automatic;
  bool all = false;
  double tol = kDefaultGroupingTol;
  double tol_int = kDefaultIntegralityTol;
};

/// Shape of an antipodal inner-product profile: the distinct |beta| below 1
/// (with 0 first in the even case).
struct AntipodalShape {
  Parity parity;
  Count s;
  Eigen::VectorXd beta_abs;
};

/// Extracts |beta| classes from an antipodal profile; nullopt when the profile
/// is not antipodal or its values are not symmetric under beta -> -beta.
std::optional<AntipodalShape> antipodal_shape(const InnerProductProfile& profile, double tol);

struct RationalExtraction {
  bool hypothesis_met = false;  // |X| >= 4 C(d+s-3, s-2) + 2
  Count threshold = 0;
  std::optional<std::vector<Rational>> betas;  // present when both families are integral
  double max_deviation = 0;                    // |extracted - measured| over the betas
  std::string note;
};

struct Analysis {
  Count n = 0;
  Index affine_dimension = 0;
  Index linear_dimension = 0;
  bool spherical = false;
  bool antipodal = false;
  std::vector<RatioReport> reports;
  std::optional<RationalExtraction> rational;

  bool theorem_violated() const;
};

Analysis analyze(const PointSet& x, const AnalyzeOptions& options = {});

}  // namespace sdist
