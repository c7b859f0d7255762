#include "sdist/bounds.hpp"

#include <array>
#include <limits>
#include <string>
#include <utility>

#include "sdist/error.hpp"

namespace sdist {

namespace {

using Wide = __int128;

constexpr std::array<std::pair<Setting, std::string_view>, 6> kSettingNames{{
    {Setting::euclidean, "euclidean"},
    {Setting::spherical, "spherical"},
    {Setting::antipodal_odd_v1, "antipodal_odd_v1"},
    {Setting::antipodal_odd_v2, "antipodal_odd_v2"},
    {Setting::antipodal_even_v1, "antipodal_even_v1"},
    {Setting::antipodal_even_v2, "antipodal_even_v2"},
}};

constexpr std::array<std::pair<PolySpace, std::string_view>, 4> kSpaceNames{{
    {PolySpace::full, "P_full"},
    {PolySpace::sphere, "P_sphere"},
    {PolySpace::star_sphere, "P_star_sphere"},
    {PolySpace::w_space, "W_space"},
}};

Count narrow(Wide v) {
  if (v > std::numeric_limits<Count>::max() || v < std::numeric_limits<Count>::min())
    throw Error(ErrorKind::overflow, "integer result exceeds 64 bits");
  return static_cast<Count>(v);
}

Count checked_add(Count a, Count b) { return narrow(Wide(a) + Wide(b)); }

}  // namespace

std::string_view to_string(Setting setting) {
  for (auto [s, name] : kSettingNames)
    if (s == setting) return name;
  return "unknown";
}

std::optional<Setting> setting_from_string(std::string_view name) {
  for (auto [s, n] : kSettingNames)
    if (n == name) return s;
  return std::nullopt;
}

std::string_view to_string(PolySpace kind) {
  for (auto [k, name] : kSpaceNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<PolySpace> poly_space_from_string(std::string_view name) {
  for (auto [k, n] : kSpaceNames)
    if (n == name) return k;
  return std::nullopt;
}

Count binomial(Count n, Count k) {
  if (n < 0) throw Error(ErrorKind::parameter, "binomial with negative n");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // Each prefix product C(n-k+i, i) is an integer, so the division is exact.
  constexpr Wide kLimit = Wide(1) << 120;
  Wide acc = 1;
  for (Count i = 1; i <= k; ++i) {
    const Wide factor = Wide(n - k + i);
    if (acc > kLimit / factor)
      throw Error(ErrorKind::overflow, "binomial C(" + std::to_string(n) + "," +
                                           std::to_string(k) + ") overflows");
    acc = acc * factor / i;
  }
  return narrow(acc);
}

Count dim_poly_space(PolySpace kind, Count d, Count l) {
  if (d < 1 || l < 0)
    throw Error(ErrorKind::parameter, "dim_poly_space needs d >= 1 and l >= 0");
  switch (kind) {
    case PolySpace::full:
      return binomial(d + l, l);
    case PolySpace::sphere:
      return checked_add(binomial(d + l - 1, l), l >= 1 ? binomial(d + l - 2, l - 1) : 0);
    case PolySpace::star_sphere:
      return binomial(d + l - 1, l);
    case PolySpace::w_space:
      return checked_add(binomial(d + l, l), l >= 1 ? binomial(d + l - 1, l - 1) : 0);
  }
  throw Error(ErrorKind::parameter, "unknown polynomial space");
}

Count ratio_bound_U(Count n) {
  if (n < 2) throw Error(ErrorKind::parameter, "U(N) needs N >= 2");
  // k <= 1/2 + sqrt(N^2/(2N-2) + 1/4)  <=>  (2k-1)^2 <= 2N^2/(N-1) + 1  (k >= 1)
  //                                     <=>  2k(k-1)(N-1) <= N^2
  const Wide n2 = Wide(n) * n;
  auto fits = [&](Wide k) { return 2 * k * (k - 1) * Wide(n - 1) <= n2; };
  Wide lo = 1, hi = 2;
  while (fits(hi)) hi *= 2;
  while (hi - lo > 1) {
    const Wide mid = (lo + hi) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return narrow(lo);
}

Count antipodal_ratio_bound(Count n) {
  if (n < 1) throw Error(ErrorKind::parameter, "antipodal bound needs N >= 1");
  const Wide rhs = 2 * Wide(n) * n;
  auto fits = [&](Wide k) { return k * k * Wide(n + 1) <= rhs; };
  Wide lo = 0, hi = 1;
  while (fits(hi)) hi *= 2;
  while (hi - lo > 1) {
    const Wide mid = (lo + hi) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return narrow(lo);
}

Count cardinality_bound(CardinalityBound kind, Count d, Count s) {
  if (d < 1 || s < 1) throw Error(ErrorKind::parameter, "cardinality bound needs d, s >= 1");
  switch (kind) {
    case CardinalityBound::euclidean_bbs:
      return binomial(d + s, s);
    case CardinalityBound::spherical_dgs:
      return checked_add(binomial(d + s - 1, s), binomial(d + s - 2, s - 1));
    case CardinalityBound::antipodal_dgs:
      return narrow(2 * Wide(binomial(d + s - 2, s - 1)));
  }
  throw Error(ErrorKind::parameter, "unknown cardinality bound");
}

TheoremContext theorem_context(Setting setting, Count d, Count s) {
  if (d < 1) throw Error(ErrorKind::parameter, "dimension must be positive");
  auto require = [&](bool ok, const char* what) {
    if (!ok)
      throw Error(ErrorKind::parameter, std::string(to_string(setting)) + " requires " + what +
                                            " (got s=" + std::to_string(s) + ")");
  };
  TheoremContext ctx{setting, d, s, 0, 0, 0, PolySpace::full, 0};
  switch (setting) {
    case Setting::euclidean:
      require(s >= 2, "s >= 2");
      ctx.space = PolySpace::w_space;
      ctx.degree = s - 1;
      break;
    case Setting::spherical:
      require(s >= 2, "s >= 2");
      ctx.space = PolySpace::sphere;
      ctx.degree = s - 1;
      break;
    case Setting::antipodal_odd_v1:
      require(s >= 5 && s % 2 == 1, "odd s >= 5");
      ctx.space = PolySpace::star_sphere;
      ctx.degree = s - 3;
      break;
    case Setting::antipodal_odd_v2:
      require(s >= 5 && s % 2 == 1, "odd s >= 5");
      ctx.space = PolySpace::star_sphere;
      ctx.degree = s - 2;
      break;
    case Setting::antipodal_even_v1:
      require(s >= 4 && s % 2 == 0, "even s >= 4");
      ctx.space = PolySpace::star_sphere;
      ctx.degree = s - 2;
      break;
    case Setting::antipodal_even_v2:
      require(s >= 4 && s % 2 == 0, "even s >= 4");
      ctx.space = PolySpace::star_sphere;
      ctx.degree = s - 3;
      break;
  }
  ctx.n_dim = dim_poly_space(ctx.space, d, ctx.degree);
  if (is_signed_variant(setting)) {
    ctx.cardinality_threshold = narrow(4 * Wide(ctx.n_dim) + 2);
    ctx.ratio_bound = antipodal_ratio_bound(ctx.n_dim);
  } else if (is_antipodal(setting)) {
    ctx.cardinality_threshold = narrow(4 * Wide(ctx.n_dim));
    ctx.ratio_bound = ratio_bound_U(ctx.n_dim);
  } else {
    ctx.cardinality_threshold = narrow(2 * Wide(ctx.n_dim));
    ctx.ratio_bound = ratio_bound_U(ctx.n_dim);
  }
  return ctx;
}

}  // namespace sdist
