#pragma once

// JSON forms of every report. Floats are rounded to 12 significant digits at
// dump time so outputs are byte-stable.

#include <string>

#include "json.hpp"
#include "sdist/certificate.hpp"
#include "sdist/embed.hpp"
#include "sdist/inverse.hpp"
#include "sdist/pointset.hpp"
#include "sdist/ratios.hpp"
#include "sdist/search.hpp"

namespace sdist {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSignificantDigits = 12;

double round_significant(double value, int digits = kJsonSignificantDigits);
/// Rounds every floating value in the tree.
Json rounded(Json value);
std::string dump_json(const Json& value, bool pretty = false);

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const PointSet& x);
Json to_json(const PairClasses& classes, const char* values_key);
Json profile_json(const PointSet& x, double tol = kDefaultGroupingTol);
Json to_json(const TheoremContext& ctx);
Json to_json(const RatioReport& report);
Json to_json(const Analysis& analysis);
Json to_json(const CertificateVerdict& verdict);
Json to_json(const InversionResult& result);
Json to_json(const EmbeddingVerdict& verdict);
Json to_json(const CandidateCatalog& catalog);

/// Reads {"matrix": [[...], ...], "kind": "squared_distance" | "gram"}.
struct MatrixFile {
  Eigen::MatrixXd matrix;
  bool gram = false;
};
MatrixFile parse_matrix_file(const std::string& text);

}  // namespace sdist
