#include "sdist/ratios.hpp"

#include <algorithm>
#include <numeric>

namespace sdist {

namespace {

bool near_integer(double v, double tol) { return std::abs(v - std::round(v)) <= tol; }

Count to_integer(double v, double tol) {
  if (!std::isfinite(v) || !near_integer(v, tol))
    throw Error(ErrorKind::non_integer, "ratio " + std::to_string(v) + " is not integral");
  return Count(std::llround(v));
}

Rational checked_ratio(Count num, Count den) {
  if (den == 0) throw Error(ErrorKind::zero_division, "zero ratio in denominator");
  return Rational::make(num, den);
}

std::vector<Count> iota_indices(Count first, Index count) {
  std::vector<Count> idx(static_cast<std::size_t>(count));
  std::iota(idx.begin(), idx.end(), first);
  return idx;
}

}  // namespace

Rational Rational::make(Count num, Count den) {
  if (den == 0) throw Error(ErrorKind::zero_division, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Count g = std::gcd(num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::vector<Rational> rational_inner_products(const Eigen::VectorXd& v1, const Eigen::VectorXd& v2, Parity parity,
                                              double tol_int) {
  std::vector<Rational> out;
  if (parity == Parity::odd) {
    if (v1.size() != v2.size()) throw Error(ErrorKind::size_mismatch, "odd families must have equal length");
    for (Index i = 0; i < v1.size(); ++i)
      out.push_back(checked_ratio(to_integer(v1(i), tol_int), to_integer(v2(i), tol_int)));
    return out;
  }
  // Even: v1 includes the i = 1 entry for beta_1 = 0 unless already aligned.
  Index offset = 0;
  if (v1.size() == v2.size() + 1)
    offset = 1;
  else if (v1.size() != v2.size())
    throw Error(ErrorKind::size_mismatch, "even families must have lengths m and m-1");
  for (Index i = 0; i < v2.size(); ++i)
    out.push_back(checked_ratio(to_integer(v2(i), tol_int), to_integer(v1(i + offset), tol_int)));
  return out;
}

bool RatioReport::all_integral() const { return std::all_of(integral.begin(), integral.end(), [](bool b) { return b; }); }

bool RatioReport::all_within_bound() const {
  return std::all_of(within_bound.begin(), within_bound.end(), [](bool b) { return b; });
}

RatioReport make_ratio_report(const TheoremContext& context, Count cardinality, std::vector<Count> indices,
                              Eigen::VectorXd k_values, double tol_int) {
  RatioReport r;
  r.setting = context.setting;
  r.context = context;
  r.cardinality = cardinality;
  r.indices = std::move(indices);
  r.k_values = std::move(k_values);
  r.tol_int = tol_int;
  r.hypothesis_met = cardinality >= context.cardinality_threshold;
  for (Index i = 0; i < r.k_values.size(); ++i) {
    const double k = r.k_values(i);
    const Count rounded = std::isfinite(k) ? Count(std::llround(k)) : 0;
    r.rounded.push_back(rounded);
    r.integral.push_back(std::isfinite(k) && near_integer(k, tol_int));
    r.within_bound.push_back(std::isfinite(k) && std::abs(rounded) <= context.ratio_bound);
  }
  return r;
}

std::optional<AntipodalShape> antipodal_shape(const InnerProductProfile& profile, double tol) {
  if (!profile.antipodal || !profile.contains_minus_one) return std::nullopt;
  const double slack = 10 * std::max(tol, 1e-12);
  std::vector<double> rest(profile.values.data() + 1, profile.values.data() + profile.values.size());
  bool has_zero = false;
  std::vector<double> positives;
  for (double v : rest) {
    if (std::abs(v) <= slack) {
      has_zero = true;
      continue;
    }
    const bool mirrored =
        std::any_of(rest.begin(), rest.end(), [&](double w) { return std::abs(w + v) <= slack; });
    if (!mirrored) return std::nullopt;
    if (v > 0) positives.push_back(v);
  }
  AntipodalShape shape;
  shape.s = profile.s();
  shape.parity = has_zero ? Parity::even : Parity::odd;
  shape.beta_abs.resize(Index(positives.size()) + (has_zero ? 1 : 0));
  Index k = 0;
  if (has_zero) shape.beta_abs(k++) = 0.0;
  for (double v : positives) shape.beta_abs(k++) = v;
  return shape;
}

bool Analysis::theorem_violated() const {
  return std::any_of(reports.begin(), reports.end(), [](const RatioReport& r) { return r.theorem_violated(); });
}

Analysis analyze(const PointSet& x, const AnalyzeOptions& options) {
  Analysis a;
  a.n = x.size();
  a.affine_dimension = affine_dimension(x);
  a.linear_dimension = linear_dimension(x);
  a.spherical = is_on_unit_sphere(x, options.tol);

  std::optional<RatioReport> euclid, sphere;
  std::vector<RatioReport> antipodal;

  const auto dp = distance_profile(x, options.tol);
  if (dp.s() >= 2) {
    const auto ctx = theorem_context(Setting::euclidean, a.affine_dimension, dp.s());
    euclid = make_ratio_report(ctx, a.n, iota_indices(1, dp.s()), euclidean_ratios(dp.values), options.tol_int);
  }

  std::optional<AntipodalShape> shape;
  if (a.spherical) {
    const auto ip = inner_product_profile(x, options.tol);
    a.antipodal = ip.antipodal;
    if (ip.s() >= 2) {
      const auto ctx = theorem_context(Setting::spherical, a.linear_dimension, ip.s());
      sphere = make_ratio_report(ctx, a.n, iota_indices(1, ip.s()), spherical_ratios(ip.values), options.tol_int);
    }
    shape = antipodal_shape(ip, options.tol);
    if (shape) {
      const Count s = shape->s;
      const Count d = a.linear_dimension;
      if (shape->parity == Parity::odd && s >= 5 && s % 2 == 1) {
        const Index m = shape->beta_abs.size();
        antipodal.push_back(make_ratio_report(theorem_context(Setting::antipodal_odd_v1, d, s), a.n,
                                              iota_indices(1, m),
                                              antipodal_odd_ratios(shape->beta_abs, Variant::v1), options.tol_int));
        antipodal.push_back(make_ratio_report(theorem_context(Setting::antipodal_odd_v2, d, s), a.n,
                                              iota_indices(1, m),
                                              antipodal_odd_ratios(shape->beta_abs, Variant::v2), options.tol_int));
      } else if (shape->parity == Parity::even && s >= 4 && s % 2 == 0) {
        const Index m = shape->beta_abs.size();
        antipodal.push_back(make_ratio_report(theorem_context(Setting::antipodal_even_v1, d, s), a.n,
                                              iota_indices(1, m),
                                              antipodal_even_ratios(shape->beta_abs, Variant::v1), options.tol_int));
        antipodal.push_back(make_ratio_report(theorem_context(Setting::antipodal_even_v2, d, s), a.n,
                                              iota_indices(2, m - 1),
                                              antipodal_even_ratios(shape->beta_abs, Variant::v2), options.tol_int));
      }
    }
  }

  auto take_antipodal = [&] {
    for (auto& r : antipodal) a.reports.push_back(r);
  };
  auto unavailable = [](const char* what) {
    return Error(ErrorKind::parameter, std::string(what) + " setting does not apply to this point set");
  };

  if (options.all) {
    if (euclid) a.reports.push_back(*euclid);
    if (sphere) a.reports.push_back(*sphere);
    take_antipodal();
  } else {
    switch (options.choice) {
      case SettingChoice::automatic:
        if (!antipodal.empty())
          take_antipodal();
        else if (sphere)
          a.reports.push_back(*sphere);
        else if (euclid)
          a.reports.push_back(*euclid);
        break;
      case SettingChoice::euclidean:
        if (!euclid) throw unavailable("euclidean");
        a.reports.push_back(*euclid);
        break;
      case SettingChoice::spherical:
        if (!sphere) throw unavailable("spherical");
        a.reports.push_back(*sphere);
        break;
      case SettingChoice::antipodal:
        if (antipodal.empty()) throw unavailable("antipodal");
        take_antipodal();
        break;
    }
  }

  const bool have_antipodal_reports =
      std::any_of(a.reports.begin(), a.reports.end(), [](const RatioReport& r) { return is_antipodal(r.setting); });
  if (have_antipodal_reports && antipodal.size() == 2) {
    RationalExtraction ext;
    const Count s = shape->s;
    ext.threshold = 4 * binomial(a.linear_dimension + s - 3, s - 2) + 2;
    ext.hypothesis_met = a.n >= ext.threshold;
    if (antipodal[0].all_integral() && antipodal[1].all_integral()) {
      ext.betas = rational_inner_products(antipodal[0].k_values, antipodal[1].k_values, shape->parity,
                                          options.tol_int);
      const Index offset = shape->parity == Parity::even ? 1 : 0;
      for (std::size_t i = 0; i < ext.betas->size(); ++i)
        ext.max_deviation = std::max(
            ext.max_deviation, std::abs((*ext.betas)[i].value() - shape->beta_abs(Index(i) + offset)));
    } else {
      ext.note = "ratio families are not integral; no rational extraction";
    }
    a.rational = std::move(ext);
  }
  return a;
}

}  // namespace sdist
