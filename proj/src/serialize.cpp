#include "sdist/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "sdist/error.hpp"

namespace sdist {

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

Json rounded(Json value) {
  if (value.is_number_float()) return round_significant(value.get<double>());
  if (value.is_structured())
    for (auto& child : value) child = rounded(std::move(child));
  return value;
}

std::string dump_json(const Json& value, bool pretty) {
  return rounded(value).dump(pretty ? 2 : -1) + "\n";
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return out;
}

Json to_json(const PointSet& x) {
  Json out;
  out["dimension"] = x.dimension();
  out["points"] = to_json(x.points());
  if (!x.labels().empty()) out["labels"] = x.labels();
  return out;
}

Json to_json(const PairClasses& classes, const char* values_key) {
  Json out;
  out["s"] = classes.s();
  out[values_key] = to_json(classes.values);
  out["pair_counts"] = classes.pair_counts();
  return out;
}

Json profile_json(const PointSet& x, double tol) {
  Json out;
  out["n"] = x.size();
  out["dimension"] = x.dimension();
  out["affine_dimension"] = affine_dimension(x);
  const auto dp = distance_profile(x, tol);
  out["s"] = dp.s();
  out["squared_distances"] = to_json(dp.values);
  out["pair_counts"] = dp.pair_counts();
  const bool spherical = is_on_unit_sphere(x, tol);
  out["spherical"] = spherical;
  if (spherical) {
    const auto ip = inner_product_profile(x, tol);
    out["inner_products"] = to_json(ip.values);
    out["inner_product_pair_counts"] = ip.pair_counts();
    out["antipodal"] = ip.antipodal;
  }
  return out;
}

Json to_json(const TheoremContext& ctx) {
  Json out;
  out["setting"] = to_string(ctx.setting);
  out["d"] = ctx.d;
  out["s"] = ctx.s;
  out["N"] = ctx.n_dim;
  out["space"] = to_string(ctx.space);
  out["degree"] = ctx.degree;
  out["cardinality_threshold"] = ctx.cardinality_threshold;
  out["ratio_bound"] = ctx.ratio_bound;
  return out;
}

Json to_json(const RatioReport& r) {
  Json out;
  out["setting"] = to_string(r.setting);
  out["context"] = to_json(r.context);
  out["cardinality"] = r.cardinality;
  out["hypothesis_met"] = r.hypothesis_met;
  out["indices"] = r.indices;
  out["k_values"] = to_json(r.k_values);
  out["rounded_k"] = r.rounded;
  out["integral"] = r.integral;
  out["within_bound"] = r.within_bound;
  out["tol_int"] = r.tol_int;
  if (r.setting == Setting::euclidean || r.setting == Setting::spherical) out["k_sum"] = r.k_sum();
  out["theorem_violated"] = r.theorem_violated();
  return out;
}

Json to_json(const Analysis& a) {
  Json out;
  out["n"] = a.n;
  out["affine_dimension"] = a.affine_dimension;
  out["linear_dimension"] = a.linear_dimension;
  out["spherical"] = a.spherical;
  out["antipodal"] = a.antipodal;
  Json reports = Json::array();
  for (const auto& r : a.reports) reports.push_back(to_json(r));
  out["reports"] = std::move(reports);
  if (a.rational) {
    Json rat;
    rat["threshold"] = a.rational->threshold;
    rat["hypothesis_met"] = a.rational->hypothesis_met;
    if (a.rational->betas) {
      Json betas = Json::array();
      for (const auto& b : *a.rational->betas) betas.push_back(b.str());
      rat["betas"] = std::move(betas);
      rat["max_deviation"] = a.rational->max_deviation;
    } else {
      rat["betas"] = nullptr;
      rat["note"] = a.rational->note;
    }
    out["rational_inner_products"] = std::move(rat);
  }
  out["theorem_violated"] = a.theorem_violated();
  return out;
}

Json to_json(const CertificateVerdict& v) {
  Json out;
  out["setting"] = to_string(v.setting);
  out["class"] = v.class_index;
  out["n"] = v.n;
  out["cardinality"] = v.cardinality;
  out["N"] = v.n_cap;
  out["k"] = v.k;
  out["rounded_k"] = v.rounded_k;
  out["ratio_bound"] = v.ratio_bound;
  out["hypothesis_met"] = v.hypothesis_met;
  out["rank"] = v.rank;
  out["zero_multiplicity"] = v.zero_multiplicity;
  Json checks = Json::array();
  for (const auto& c : v.checks) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["applies"] = c.applies;
    j["measured"] = c.measured;
    j["required"] = c.required;
    j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  out["passed"] = v.passed();
  out["theorem_violated"] = v.theorem_violated();
  return out;
}

Json to_json(const InversionResult& r) {
  Json out;
  out["converged"] = r.converged;
  out["t"] = to_json(r.t);
  out["residual"] = r.residual;
  out["iterations"] = r.iterations;
  out["start_index"] = r.start_index;
  return out;
}

Json to_json(const EmbeddingVerdict& v) {
  Json out;
  out["embeddable"] = v.embeddable;
  out["psd"] = v.psd;
  out["minimal_dimension"] = v.minimal_dimension;
  out["eigenvalue_slack"] = v.eigenvalue_slack;
  out["reproduction_error"] = v.reproduction_error;
  out["realization"] = v.realization ? to_json(*v.realization) : Json(nullptr);
  return out;
}

Json to_json(const CandidateCatalog& c) {
  Json out;
  out["d"] = c.d;
  out["s"] = c.s;
  out["context"] = to_json(c.context);
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    Json j;
    j["k"] = e.k;
    j["k_s"] = e.k_last;
    j["status"] = to_string(e.status);
    if (c.realized_stage) {
      j["method"] = e.method;
      j["residual"] = e.residual;
      j["t"] = e.status == TupleStatus::realized ? to_json(e.t) : Json(nullptr);
    }
    entries.push_back(std::move(j));
  }
  out["tuples"] = std::move(entries);
  const auto summary = catalog_report(c);
  Json counts;
  counts["total"] = summary.total;
  counts["realized"] = summary.realized;
  counts["unrealizable"] = summary.unrealizable;
  counts["newton_failed"] = summary.newton_failed;
  counts["pending"] = summary.pending;
  out["counts"] = std::move(counts);
  out["statement"] = summary.statement;
  return out;
}

MatrixFile parse_matrix_file(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array() || doc["matrix"].empty())
    throw Error(ErrorKind::parse, "expected an object with a non-empty \"matrix\" array");
  MatrixFile out;
  const std::string kind = doc.value("kind", std::string("squared_distance"));
  if (kind == "gram")
    out.gram = true;
  else if (kind != "squared_distance")
    throw Error(ErrorKind::parse, "\"kind\" must be squared_distance or gram");
  const auto& rows = doc["matrix"];
  const Index n = Index(rows.size());
  out.matrix.resize(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto& row = rows[std::size_t(r)];
    if (!row.is_array() || Index(row.size()) != n) throw Error(ErrorKind::shape, "matrix must be square");
    for (Index c = 0; c < n; ++c) {
      if (!row[std::size_t(c)].is_number()) throw Error(ErrorKind::parse, "non-numeric matrix entry");
      out.matrix(r, c) = row[std::size_t(c)].get<double>();
    }
  }
  return out;
}

}  // namespace sdist
