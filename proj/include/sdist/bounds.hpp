#pragma once

// Polynomial-space dimensions, cardinality thresholds and integer bounds on the
// ratios k_i. Everything here is exact integer arithmetic.

#include <cstdint>
#include <optional>
#include <string_view>

namespace sdist {

using Count = std::int64_t;

enum class PolySpace {
  full,          // P_l(R^d)
  sphere,        // P_l(S^{d-1})
  star_sphere,   // P*_l(S^{d-1})
  w_space,       // W_l(R^d), polynomials in xi_1..xi_d and xi_0 = |xi|^2
};

enum class Setting {
  euclidean,
  spherical,
  antipodal_odd_v1,
  antipodal_odd_v2,
  antipodal_even_v1,
  antipodal_even_v2,
};

enum class CardinalityBound { euclidean_bbs, spherical_dgs, antipodal_dgs };

std::string_view to_string(Setting setting);
std::optional<Setting> setting_from_string(std::string_view name);
std::string_view to_string(PolySpace kind);
std::optional<PolySpace> poly_space_from_string(std::string_view name);

/// True for the two variants whose indicator matrices carry signed (+-1) entries.
constexpr bool is_signed_variant(Setting s) {
  return s == Setting::antipodal_odd_v2 || s == Setting::antipodal_even_v2;
}
constexpr bool is_antipodal(Setting s) {
  return s != Setting::euclidean && s != Setting::spherical;
}

/// Binomial coefficient C(n, k) with 128-bit intermediates. Returns 0 for k < 0
/// or k > n (n >= 0). Throws ErrorKind::overflow when the result leaves int64.
Count binomial(Count n, Count k);

/// Dimension of the restricted polynomial space of degree l. Throws
/// ErrorKind::parameter on d < 1 or l < 0.
Count dim_poly_space(PolySpace kind, Count d, Count l);

/// floor(1/2 + sqrt(N^2/(2N-2) + 1/4)), the largest k >= 1 with
/// 2k(k-1)(N-1) <= N^2. N >= 2.
Count ratio_bound_U(Count n);

/// floor(sqrt(2N^2/(N+1))), the largest k >= 0 with k^2 (N+1) <= 2N^2. N >= 1.
Count antipodal_ratio_bound(Count n);

Count cardinality_bound(CardinalityBound kind, Count d, Count s);

struct TheoremContext {
  Setting setting;
  Count d;
  Count s;
  Count n_dim;                  // N
  Count cardinality_threshold;  // 2N, 4N or 4N+2
  Count ratio_bound;            // U(N) or floor(sqrt(2N^2/(N+1)))
  PolySpace space;              // space the interpolating F_x live in
  Count degree;                 // degree l of that space
};

/// Fills N, the |X| threshold and the ratio bound for a setting. Throws
/// ErrorKind::parameter when s violates the setting's parity or minimum.
TheoremContext theorem_context(Setting setting, Count d, Count s);

}  // namespace sdist
