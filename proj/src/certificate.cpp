#include "sdist/certificate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "sdist/error.hpp"

namespace sdist {

namespace {

// Fills the upper triangle with f(a, b) and mirrors it, so M is exactly symmetric.
template <typename F>
Eigen::MatrixXd symmetric_from(Index n, F&& f) {
  Eigen::MatrixXd m(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = a; b < n; ++b) m(a, b) = m(b, a) = f(a, b);
  return m;
}

double lagrange_factor(const Eigen::VectorXd& nodes, Index i, double value) {
  double prod = 1.0;
  for (Index j = 0; j < nodes.size(); ++j)
    if (j != i) prod *= (value - nodes(j)) / (nodes(i) - nodes(j));
  return prod;
}

Eigen::MatrixXd upper_gram(const Eigen::MatrixXd& pts) {
  return symmetric_from(pts.rows(), [&](Index a, Index b) { return pts.row(a).dot(pts.row(b)); });
}

void require_class(Count i, Count first, Count last) {
  if (i < first || i > last)
    throw Error(ErrorKind::parameter, "class index " + std::to_string(i) + " outside " + std::to_string(first) +
                                          ".." + std::to_string(last));
}

}  // namespace

double IndicatorMatrix::decomposition_error() const {
  Eigen::MatrixXd expected = A;
  expected.diagonal().setConstant(k);
  return (M - expected).cwiseAbs().maxCoeff();
}

IndicatorMatrix indicator_matrix(const PointSet& x, Setting setting, Count i, double tol) {
  IndicatorMatrix im;
  im.setting = setting;
  im.class_index = i;
  im.cardinality = x.size();
  TheoremContext ctx{};

  if (setting == Setting::euclidean) {
    const auto dp = distance_profile(x, tol);
    ctx = theorem_context(setting, affine_dimension(x), dp.s());
    require_class(i, 1, dp.s());
    const Eigen::VectorXd& nodes = dp.values;
    const Eigen::MatrixXd c = squared_distance_matrix(x);
    im.M = symmetric_from(x.size(), [&](Index a, Index b) { return lagrange_factor(nodes, Index(i - 1), c(a, b)); });
    im.k = euclidean_ratios(nodes)(i - 1);
    im.A = dp.adjacency(i - 1);
  } else if (setting == Setting::spherical) {
    const auto ip = inner_product_profile(x, tol);
    ctx = theorem_context(setting, linear_dimension(x), ip.s());
    require_class(i, 1, ip.s());
    const Eigen::VectorXd& nodes = ip.values;
    const Eigen::MatrixXd g = upper_gram(x.points());
    im.M = symmetric_from(x.size(), [&](Index a, Index b) { return lagrange_factor(nodes, Index(i - 1), g(a, b)); });
    im.k = spherical_ratios(nodes)(i - 1);
    im.A = ip.adjacency(i - 1);
  } else {
    const auto ip = inner_product_profile(x, tol);
    const auto shape = antipodal_shape(ip, tol);
    if (!shape) throw Error(ErrorKind::not_antipodal, "point set has no antipodal inner-product structure");
    ctx = theorem_context(setting, linear_dimension(x), shape->s);
    const bool odd = setting == Setting::antipodal_odd_v1 || setting == Setting::antipodal_odd_v2;
    if (odd != (shape->parity == Parity::odd))
      throw Error(ErrorKind::parameter, "setting parity does not match the point set");
    const Eigen::VectorXd& beta = shape->beta_abs;
    const Index m = beta.size();
    const bool is_signed = is_signed_variant(setting);
    const Index first = (!odd && is_signed) ? 2 : 1;
    require_class(i, first, m);

    const PointSet y = half_set(x, tol);
    const Eigen::MatrixXd g = upper_gram(y.points());
    const Index n = y.size();

    // Label each pair of the half set by its |inner product| class.
    const double slack = 10 * std::max(tol, 1e-12);
    Eigen::MatrixXi cls = Eigen::MatrixXi::Constant(n, n, -1);
    for (Index a = 0; a < n; ++a)
      for (Index b = a + 1; b < n; ++b) {
        for (Index c = 0; c < m; ++c)
          if (std::abs(std::abs(g(a, b)) - beta(c)) <= slack) cls(a, b) = cls(b, a) = int(c);
        if (cls(a, b) < 0) throw Error(ErrorKind::ambiguous_grouping, "half-set inner product matches no class");
      }

    // Nodes of the product: squares of every beta for v1 and odd v2, of the
    // nonzero betas for even v2.
    const Index offset = first - 1;
    const Eigen::VectorXd nodes = beta.tail(m - offset).array().square().matrix();
    const Index local = Index(i - 1 - offset);
    const double beta_i = beta(i - 1);
    im.M = symmetric_from(n, [&](Index a, Index b) {
      const double v = g(a, b);
      const double base = lagrange_factor(nodes, local, v * v);
      return is_signed ? base * v / beta_i : base;
    });
    im.A = Eigen::MatrixXd::Zero(n, n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (a != b && cls(a, b) == int(i - 1)) im.A(a, b) = is_signed ? (g(a, b) > 0 ? 1.0 : -1.0) : 1.0;

    const Variant variant = is_signed ? Variant::v2 : Variant::v1;
    const Eigen::VectorXd k = odd ? antipodal_odd_ratios(beta, variant) : antipodal_even_ratios(beta, variant);
    im.k = k(local);
  }

  im.space = ctx.space;
  im.degree = ctx.degree;
  im.dimension = ctx.d;
  im.n_cap = dim_poly_space(ctx.space, ctx.d, ctx.degree);
  return im;
}

Index numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  if (svd.info() != Eigen::Success) throw Error(ErrorKind::decomposition_failure, "SVD did not converge");
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = rel_tol * double(std::max(m.rows(), m.cols())) * sv(0);
  return (sv.array() > threshold).count();
}

Index SpectrumReport::multiplicity_of(double value) const {
  const double tol = std::max(cluster_tol, zero_threshold);
  return ((eigenvalues.array() - value).abs() <= tol).count();
}

EigenCluster SpectrumReport::largest_cluster() const {
  EigenCluster best;
  for (const auto& c : clusters)
    if (c.multiplicity > best.multiplicity) best = c;
  return best;
}

namespace {

// Ascending eigenvalues of a symmetric matrix. The tridiagonal QR iteration
// occasionally stalls on highly degenerate integer matrices; the Schur-based
// general solver is used as a fallback.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success) return solver.eigenvalues();
  Eigen::EigenSolver<Eigen::MatrixXd> general(m, false);
  if (general.info() != Eigen::Success)
    throw Error(ErrorKind::decomposition_failure, "eigensolver did not converge");
  const Eigen::VectorXcd values = general.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values.imag().cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw Error(ErrorKind::decomposition_failure, "complex eigenvalues for a symmetric matrix");
  Eigen::VectorXd real = values.real();
  std::sort(real.data(), real.data() + real.size());
  return real;
}

}  // namespace

SpectrumReport eigen_multiplicities(const Eigen::MatrixXd& m, double cluster_rel_tol, double rank_rel_tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::shape, "matrix is not square");
  SpectrumReport r;
  const Index n = m.rows();
  if (n == 0) return r;
  r.eigenvalues = symmetric_eigenvalues(m);
  const double scale = r.eigenvalues.cwiseAbs().maxCoeff();
  r.zero_threshold = rank_rel_tol * double(n) * scale;
  r.cluster_tol = cluster_rel_tol * scale;

  bool zero_placed = false;
  for (Index k = 0; k < n; ++k) {
    const double lambda = r.eigenvalues(k);
    if (std::abs(lambda) <= r.zero_threshold) {
      if (!zero_placed) {
        r.clusters.push_back({0.0, 0});
        zero_placed = true;
      }
      // Zero eigenvalues are contiguous in the sorted spectrum.
      ++r.clusters.back().multiplicity;
      ++r.zero_multiplicity;
      continue;
    }
    const bool extend = k > 0 && !r.clusters.empty() && r.clusters.back().center != 0.0 &&
                        std::abs(r.eigenvalues(k - 1)) > r.zero_threshold &&
                        lambda - r.eigenvalues(k - 1) <= r.cluster_tol;
    if (extend) {
      auto& c = r.clusters.back();
      c.center = (c.center * double(c.multiplicity) + lambda) / double(c.multiplicity + 1);
      ++c.multiplicity;
    } else {
      r.clusters.push_back({lambda, 1});
    }
  }
  r.rank = n - r.zero_multiplicity;
  return r;
}

bool verify_sign_matrix_bound(const Eigen::MatrixXd& d, double e, Index m) {
  const Index n = d.rows();
  if (n != d.cols()) throw Error(ErrorKind::shape, "matrix is not square");
  if (m < 1 || m > n) throw Error(ErrorKind::parameter, "multiplicity must lie in 1..n");
  constexpr double kEntryTol = 1e-9;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const double v = d(a, b);
      if (std::abs(v - d(b, a)) > kEntryTol) throw Error(ErrorKind::shape, "matrix is not symmetric");
      const bool ok = a == b ? std::abs(v) <= kEntryTol
                             : std::min({std::abs(v), std::abs(v - 1.0), std::abs(v + 1.0)}) <= kEntryTol;
      if (!ok) throw Error(ErrorKind::shape, "entries must be 0 on the diagonal and 0/+-1 elsewhere");
    }
  const double rhs = double(n - 1) * double(n - m) / double(m);
  return e * e <= rhs + 1e-9 * std::max(1.0, rhs);
}

bool CertificateVerdict::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.applies || c.passed; });
}

const Check* CertificateVerdict::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CertificateVerdict verify_key_lemma(const IndicatorMatrix& im, const CertifyOptions& options) {
  CertificateVerdict v;
  v.setting = im.setting;
  v.class_index = im.class_index;
  v.n = im.n();
  v.cardinality = im.cardinality;
  v.n_cap = im.n_cap;
  v.k = im.k;
  v.rounded_k = std::isfinite(im.k) ? Count(std::llround(im.k)) : 0;

  const bool is_signed = is_signed_variant(im.setting);
  const Count n = v.n;
  const Count cap = v.n_cap;
  v.ratio_bound = is_signed ? antipodal_ratio_bound(cap) : ratio_bound_U(cap);
  v.hypothesis_met = is_signed ? n >= 2 * cap + 1 : n >= 2 * cap;

  const double decomposition = im.decomposition_error();
  const double decomposition_tol = 1e-8 * std::max(1.0, std::abs(im.k));
  v.checks.push_back({"decomposition", decomposition <= decomposition_tol, true, decomposition, decomposition_tol,
                      "max |M - (kI + A)|"});

  v.rank = numeric_rank(im.M, options.tol_rank);
  v.checks.push_back({"rank", Count(v.rank) <= cap, true, double(v.rank), double(cap), "rank(M) <= N"});

  const auto spectrum = eigen_multiplicities(im.M, options.cluster_tol, options.tol_rank);
  v.zero_multiplicity = spectrum.zero_multiplicity;
  const Count zero_needed = is_signed ? cap + 1 : cap;
  v.checks.push_back({"zero_multiplicity", Count(v.zero_multiplicity) >= zero_needed, v.hypothesis_met,
                      double(v.zero_multiplicity), double(zero_needed), "zero eigenvalue multiplicity of M"});

  const double frac = std::abs(im.k - std::round(im.k));
  v.checks.push_back({"integral_k", std::isfinite(im.k) && frac <= options.tol_int, v.hypothesis_met, frac,
                      options.tol_int, "|k - round(k)|"});

  v.checks.push_back({"ratio_bound", std::abs(v.rounded_k) <= v.ratio_bound, v.hypothesis_met,
                      double(std::abs(v.rounded_k)), double(v.ratio_bound),
                      is_signed ? "|k| <= floor(sqrt(2N^2/(N+1)))" : "|k| <= U(N)"});

  // Standard case: D = 2M - J - (2k-1)I has eigenvalue -(2k-1) of multiplicity
  // >= n - N - 1. Signed case: A = M - kI has eigenvalue -k of multiplicity >= n - N.
  Eigen::MatrixXd d;
  double e = 0;
  Count needed = 0;
  if (is_signed) {
    d = im.M;
    d.diagonal().array() -= im.k;
    e = -im.k;
    needed = n - cap;
  } else {
    d = 2.0 * im.M - Eigen::MatrixXd::Ones(n, n);
    d.diagonal().array() -= 2.0 * im.k - 1.0;
    e = -(2.0 * im.k - 1.0);
    needed = n - cap - 1;
  }
  const auto d_spectrum = eigen_multiplicities(d, options.cluster_tol, options.tol_rank);
  const Index mult = d_spectrum.multiplicity_of(e);
  v.checks.push_back({"seidel_multiplicity", Count(mult) >= needed, needed > 0, double(mult), double(needed),
                      is_signed ? "multiplicity of -k in M - kI" : "multiplicity of -(2k-1) in 2M - J - (2k-1)I"});

  Check bound{"sign_matrix_bound", false, mult >= 1, e * e, 0.0, "e^2 <= (n-1)(n-m)/m"};
  if (mult >= 1) {
    bound.required = double(n - 1) * double(n - Count(mult)) / double(mult);
    try {
      bound.passed = verify_sign_matrix_bound(d, e, mult);
    } catch (const Error& err) {
      bound.passed = false;
      bound.detail = err.what();
    }
  }
  v.checks.push_back(bound);
  return v;
}

std::vector<CertificateVerdict> certify(const PointSet& x, const CertifyRequest& request) {
  const Analysis analysis = analyze(x, request.analyze);
  std::vector<CertificateVerdict> out;
  for (const auto& report : analysis.reports) {
    std::vector<Count> classes = report.indices;
    if (request.class_index) {
      if (std::find(classes.begin(), classes.end(), *request.class_index) == classes.end()) continue;
      classes = {*request.class_index};
    }
    for (Count i : classes)
      out.push_back(verify_key_lemma(indicator_matrix(x, report.setting, i, request.analyze.tol), request.certify));
  }
  if (request.class_index && out.empty())
    throw Error(ErrorKind::parameter, "class " + std::to_string(*request.class_index) + " does not exist");
  return out;
}

}  // namespace sdist
