#include "sdist/pointset.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "sdist/error.hpp"

namespace sdist {

namespace {

constexpr double kDuplicateTol = 1e-12;

double max_abs_entry(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Index numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = rel_tol * sv(0) * double(std::max(m.rows(), m.cols()));
  return (sv.array() > threshold).count();
}

double parse_double(std::string_view token, std::size_t line) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value))
    throw Error(ErrorKind::parse, "bad number '" + std::string(token) + "' on line " + std::to_string(line));
  return value;
}

PointSet parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(parse_double(line.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorKind::dimension_mismatch, "row " + std::to_string(line_no) + " has " +
                                                     std::to_string(row.size()) + " coordinates, expected " +
                                                     std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::parse, "no points in CSV input");
  Eigen::MatrixXd m(Index(rows.size()), Index(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[std::size_t(i)][std::size_t(j)];
  return PointSet(std::move(m));
}

PointSet parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw Error(ErrorKind::parse, "expected an object with a \"points\" array");
  const auto& pts = doc["points"];
  if (pts.empty()) throw Error(ErrorKind::parse, "empty \"points\" array");
  Index d = -1;
  if (doc.contains("dimension")) {
    if (!doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() < 1)
      throw Error(ErrorKind::parse, "\"dimension\" must be a positive integer");
    d = doc["dimension"].get<Index>();
  }
  if (d < 0) {
    if (!pts.front().is_array()) throw Error(ErrorKind::parse, "points must be arrays");
    d = Index(pts.front().size());
  }
  Eigen::MatrixXd m(Index(pts.size()), d);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].is_array()) throw Error(ErrorKind::parse, "point " + std::to_string(i) + " is not an array");
    if (Index(pts[i].size()) != d)
      throw Error(ErrorKind::dimension_mismatch, "point " + std::to_string(i) + " has " +
                                                     std::to_string(pts[i].size()) + " coordinates, expected " +
                                                     std::to_string(d));
    for (std::size_t j = 0; j < pts[i].size(); ++j) {
      if (!pts[i][j].is_number()) throw Error(ErrorKind::parse, "non-numeric coordinate in point " + std::to_string(i));
      m(Index(i), Index(j)) = pts[i][j].get<double>();
    }
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != pts.size())
      throw Error(ErrorKind::parse, "\"labels\" must be an array with one entry per point");
    for (const auto& l : doc["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return PointSet(std::move(m), std::move(labels));
}

// Lexicographic comparison that ignores coordinates within tol of each other.
bool lex_greater(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b, double tol) {
  for (Index j = 0; j < a.size(); ++j) {
    if (std::abs(a(j) - b(j)) <= tol) continue;
    return a(j) > b(j);
  }
  return false;
}

}  // namespace

PointSet::PointSet(Eigen::MatrixXd points, std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.rows() < 2) throw Error(ErrorKind::parameter, "a point set needs at least two points");
  if (points_.cols() < 1) throw Error(ErrorKind::parameter, "points need at least one coordinate");
  if (!labels_.empty() && Index(labels_.size()) != points_.rows())
    throw Error(ErrorKind::parameter, "label count does not match point count");
  if (!points_.allFinite()) throw Error(ErrorKind::parse, "non-finite coordinate");
  const double scale = std::max(1.0, max_abs_entry(points_));
  for (Index i = 0; i < points_.rows(); ++i)
    for (Index j = i + 1; j < points_.rows(); ++j)
      if ((points_.row(i) - points_.row(j)).norm() <= kDuplicateTol * scale)
        throw Error(ErrorKind::duplicate_point,
                    "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

PointSet parse_points(std::string_view text, PointFormat format) {
  return format == PointFormat::json ? parse_json(text) : parse_csv(text);
}

PointSet load_points(std::istream& in, PointFormat format) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_points(buffer.str(), format);
}

PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return load_points(in, csv ? PointFormat::csv : PointFormat::json);
}

Eigen::MatrixXd squared_distance_matrix(const Eigen::MatrixXd& points) {
  const Index n = points.rows();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) c(i, j) = c(j, i) = (points.row(i) - points.row(j)).squaredNorm();
  return c;
}

Index affine_dimension(const PointSet& x, double rel_tol) {
  const Eigen::RowVectorXd centroid = x.points().colwise().mean();
  return numeric_rank(x.points().rowwise() - centroid, rel_tol);
}

Index linear_dimension(const PointSet& x, double rel_tol) { return numeric_rank(x.points(), rel_tol); }

Eigen::MatrixXd PairClasses::adjacency(Index i) const {
  return (class_of.array() == int(i)).cast<double>().matrix();
}

std::vector<Count> PairClasses::pair_counts() const {
  std::vector<Count> counts(std::size_t(s()), 0);
  for (Index a = 0; a < n(); ++a)
    for (Index b = a + 1; b < n(); ++b) ++counts[std::size_t(class_of(a, b))];
  return counts;
}

PairClasses group_pair_values(const Eigen::MatrixXd& pair_values, double tol, bool relative) {
  const Index n = pair_values.rows();
  struct Entry {
    double value;
    Index a, b;
  };
  std::vector<Entry> entries;
  entries.reserve(std::size_t(n * (n - 1) / 2));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) entries.push_back({pair_values(a, b), a, b});
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) { return l.value < r.value; });

  auto distance = [&](double lo, double hi) {
    const double diff = hi - lo;
    if (!relative) return diff;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    return scale == 0.0 ? 0.0 : diff / scale;
  };

  PairClasses out;
  out.tolerance = tol;
  out.class_of = Eigen::MatrixXi::Constant(n, n, -1);
  std::vector<double> sums;
  std::vector<Index> counts;
  std::size_t start = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0) {
      const double gap = distance(entries[k - 1].value, entries[k].value);
      if (gap > tol) {
        if (gap <= 10 * tol)
          throw Error(ErrorKind::ambiguous_grouping,
                      "values " + std::to_string(entries[k - 1].value) + " and " +
                          std::to_string(entries[k].value) + " are neither clearly equal nor clearly distinct");
        start = k;
      }
    }
    if (k == start) {
      sums.push_back(0.0);
      counts.push_back(0);
    }
    if (distance(entries[start].value, entries[k].value) > 10 * tol)
      throw Error(ErrorKind::ambiguous_grouping,
                  "chained class spans " + std::to_string(entries[start].value) + " to " +
                      std::to_string(entries[k].value));
    sums.back() += entries[k].value;
    ++counts.back();
    const int cls = int(sums.size() - 1);
    out.class_of(entries[k].a, entries[k].b) = out.class_of(entries[k].b, entries[k].a) = cls;
  }
  out.values.resize(Index(sums.size()));
  for (std::size_t c = 0; c < sums.size(); ++c) out.values(Index(c)) = sums[c] / double(counts[c]);
  return out;
}

DistanceProfile distance_profile(const PointSet& x, double tol) {
  DistanceProfile p;
  static_cast<PairClasses&>(p) = group_pair_values(squared_distance_matrix(x), tol, true);
  return p;
}

bool is_on_unit_sphere(const PointSet& x, double tol) {
  const double slack = std::max(tol, 1e-12);
  return ((x.points().rowwise().squaredNorm().array() - 1.0).abs() <= slack).all();
}

InnerProductProfile inner_product_profile(const PointSet& x, double tol) {
  if (!is_on_unit_sphere(x, tol)) throw Error(ErrorKind::not_on_sphere, "points are not unit vectors");
  const Eigen::MatrixXd gram = x.points() * x.points().transpose();
  InnerProductProfile p;
  static_cast<PairClasses&>(p) = group_pair_values(gram, tol, false);
  p.contains_minus_one = std::abs(p.values(0) + 1.0) <= std::max(tol, 1e-12) * 10;
  p.antipodal = is_antipodal(x, tol).antipodal;
  return p;
}

AntipodalCheck is_antipodal(const PointSet& x, double tol) {
  const Index n = x.size();
  AntipodalCheck out;
  if (n % 2 != 0) return out;
  const double slack = std::max(tol, 1e-12) * std::max(1.0, max_abs_entry(x.points()));
  std::vector<Index> partner(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if ((x.point(i) + x.point(j)).norm() <= slack) {
        partner[std::size_t(i)] = j;
        break;
      }
    }
    // A fixed point would be the origin, which cannot pair off.
    if (partner[std::size_t(i)] < 0 || partner[std::size_t(i)] == i) return out;
  }
  for (Index i = 0; i < n; ++i)
    if (partner[std::size_t(partner[std::size_t(i)])] != i) return out;
  out.antipodal = true;
  out.partner = std::move(partner);
  return out;
}

std::vector<Index> half_set_indices(const PointSet& x, double tol) {
  const auto check = is_antipodal(x, tol);
  if (!check.antipodal) throw Error(ErrorKind::not_antipodal, "point set is not antipodal");
  const double slack = std::max(tol, 1e-12);
  std::vector<Index> rows;
  for (Index i = 0; i < x.size(); ++i) {
    const Index j = check.partner[std::size_t(i)];
    if (lex_greater(x.point(i), x.point(j), slack)) rows.push_back(i);
  }
  return rows;
}

PointSet half_set(const PointSet& x, double tol) { return select_rows(x, half_set_indices(x, tol)); }

PointSet select_rows(const PointSet& x, const std::vector<Index>& rows) {
  Eigen::MatrixXd m(Index(rows.size()), x.dimension());
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.row(Index(r)) = x.point(rows[r]);
    if (!x.labels().empty()) labels.push_back(x.labels()[std::size_t(rows[r])]);
  }
  return PointSet(std::move(m), std::move(labels));
}

PointSet construct_johnson(Count d, Count s) {
  if (d < 1 || s < 1 || 2 * s > d + 1)
    throw Error(ErrorKind::parameter, "johnson construction needs 1 <= s <= (d+1)/2");
  const Count len = d + 1;
  const Count n = binomial(len, s);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, len);
  // Enumerate supports in lexicographic order.
  std::vector<Count> support(static_cast<std::size_t>(s));
  std::iota(support.begin(), support.end(), 0);
  for (Count row = 0; row < n; ++row) {
    for (Count c : support) m(row, c) = 1.0;
    Count k = s - 1;
    while (k >= 0 && support[std::size_t(k)] == len - s + k) --k;
    if (k < 0) break;
    ++support[std::size_t(k)];
    for (Count r = k + 1; r < s; ++r) support[std::size_t(r)] = support[std::size_t(r - 1)] + 1;
  }
  return PointSet(std::move(m));
}

std::optional<NamedSet> named_set_from_string(std::string_view name) {
  if (name == "cross_polytope") return NamedSet::cross_polytope;
  if (name == "simplex") return NamedSet::simplex;
  if (name == "hypercube") return NamedSet::hypercube;
  if (name == "e8_roots" || name == "e8") return NamedSet::e8_roots;
  if (name == "pentagon") return NamedSet::pentagon;
  if (name == "icosahedron") return NamedSet::icosahedron;
  return std::nullopt;
}

bool named_set_takes_dimension(NamedSet name) {
  return name == NamedSet::cross_polytope || name == NamedSet::simplex || name == NamedSet::hypercube;
}

PointSet construct_named(NamedSet name, Count d) {
  if (named_set_takes_dimension(name) && d < 1)
    throw Error(ErrorKind::parameter, "this configuration needs a dimension d >= 1");
  switch (name) {
    case NamedSet::cross_polytope: {
      Eigen::MatrixXd m(2 * d, d);
      m << Eigen::MatrixXd::Identity(d, d), -Eigen::MatrixXd::Identity(d, d);
      return PointSet(std::move(m));
    }
    case NamedSet::simplex: {
      // e_1..e_d plus a(1,...,1) with every edge of length sqrt(2), then
      // centered and pushed onto the sphere.
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d + 1, d);
      m.topRows(d).setIdentity();
      m.row(d).setConstant((1.0 - std::sqrt(double(d + 1))) / double(d));
      const Eigen::RowVectorXd centroid = m.colwise().mean();
      m = m.rowwise() - centroid;
      m.rowwise().normalize();
      return PointSet(std::move(m));
    }
    case NamedSet::hypercube: {
      if (d > 20) throw Error(ErrorKind::parameter, "hypercube dimension too large");
      const Index n = Index(1) << d;
      Eigen::MatrixXd m(n, d);
      for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < d; ++c) m(r, c) = ((r >> (d - 1 - c)) & 1) ? -1.0 : 1.0;
      m /= std::sqrt(double(d));
      return PointSet(std::move(m));
    }
    case NamedSet::e8_roots: {
      Eigen::MatrixXd m(240, 8);
      Index row = 0;
      for (Index i = 0; i < 8; ++i)
        for (Index j = i + 1; j < 8; ++j)
          for (double si : {1.0, -1.0})
            for (double sj : {1.0, -1.0}) {
              m.row(row).setZero();
              m(row, i) = si;
              m(row, j) = sj;
              ++row;
            }
      for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(unsigned(mask)) % 2 != 0) continue;
        for (Index c = 0; c < 8; ++c) m(row, c) = (mask >> c) & 1 ? -0.5 : 0.5;
        ++row;
      }
      m /= std::sqrt(2.0);
      return PointSet(std::move(m));
    }
    case NamedSet::pentagon: {
      Eigen::MatrixXd m(5, 2);
      for (Index k = 0; k < 5; ++k) {
        const double angle = 2.0 * M_PI * double(k) / 5.0;
        m.row(k) << std::cos(angle), std::sin(angle);
      }
      return PointSet(std::move(m));
    }
    case NamedSet::icosahedron: {
      const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
      Eigen::MatrixXd m(12, 3);
      Index row = 0;
      for (double a : {1.0, -1.0})
        for (double b : {phi, -phi}) {
          m.row(row++) << 0.0, a, b;
          m.row(row++) << a, b, 0.0;
          m.row(row++) << b, 0.0, a;
        }
      m.rowwise().normalize();
      return PointSet(std::move(m));
    }
  }
  throw Error(ErrorKind::unknown_name, "unknown configuration");
}

PointSet construct_named(std::string_view name, Count d) {
  const auto parsed = named_set_from_string(name);
  if (!parsed) throw Error(ErrorKind::unknown_name, "unknown configuration '" + std::string(name) + "'");
  return construct_named(*parsed, d);
}

}  // namespace sdist
