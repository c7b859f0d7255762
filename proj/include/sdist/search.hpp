#pragma once

// Finite catalog of ratio tuples admissible for given (d, s), each inverted to
// a normalized distance system.

#include <Eigen/Core>
#include <string>
#include <vector>

#include "sdist/bounds.hpp"
#include "sdist/inverse.hpp"

namespace sdist {

enum class TupleStatus { pending, realized, unrealizable, newton_failed };

std::string_view to_string(TupleStatus status);

struct CatalogEntry {
  std::vector<Count> k;        // k_1..k_{s-1}
  Count k_last = 0;            // k_s = 1 - sum
  TupleStatus status = TupleStatus::pending;
  Eigen::VectorXd t;           // normalized squared distances (t_s = 1) when realized
  double residual = 0;         // scaled residual of the best attempt
  std::string method;          // "closed_form" or "newton"
};

struct CandidateCatalog {
  Count d = 0;
  Count s = 0;
  TheoremContext context{};
  std::vector<CatalogEntry> entries;
  bool realized_stage = false;

  Count count(TupleStatus status) const;
};

inline constexpr Count kDefaultTupleCap = 10'000'000;

/// Every (k_1, ..., k_{s-1}) with sign(k_i) = (-1)^(i-1), 1 <= |k_i| <= U(N),
/// and k_s = 1 - sum k_i obeying the same sign and bound, in ascending
/// lexicographic order. Throws ErrorKind::overflow when the box U^(s-1)
/// exceeds cap.
CandidateCatalog enumerate_tuples(Count d, Count s, Count cap = kDefaultTupleCap);

/// Inverts every tuple. For s = 3 the closed form is tried first; a tuple it
/// rules out (and Newton cannot reach) is unrealizable. Other Newton failures
/// are recorded as newton_failed.
CandidateCatalog realize_catalog(CandidateCatalog catalog, const InverseOptions& options = {});

struct CatalogSummary {
  Count total = 0;
  Count realized = 0;
  Count unrealizable = 0;
  Count newton_failed = 0;
  Count pending = 0;
  std::string statement;
};

CatalogSummary catalog_report(const CandidateCatalog& catalog);

}  // namespace sdist
