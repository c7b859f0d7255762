#include "sdist/search.hpp"

#include <algorithm>
#include <numeric>

#include "sdist/error.hpp"

namespace sdist {

std::string_view to_string(TupleStatus status) {
  switch (status) {
    case TupleStatus::pending: return "pending";
    case TupleStatus::realized: return "realized";
    case TupleStatus::unrealizable: return "unrealizable";
    case TupleStatus::newton_failed: return "newton_failed";
  }
  return "unknown";
}

Count CandidateCatalog::count(TupleStatus status) const {
  return Count(std::count_if(entries.begin(), entries.end(), [&](const CatalogEntry& e) { return e.status == status; }));
}

CandidateCatalog enumerate_tuples(Count d, Count s, Count cap) {
  if (s < 2) throw Error(ErrorKind::parameter, "enumeration needs s >= 2");
  CandidateCatalog catalog;
  catalog.d = d;
  catalog.s = s;
  catalog.context = theorem_context(Setting::euclidean, d, s);
  const Count bound = catalog.context.ratio_bound;
  const Count m = s - 1;

  Count box = 1;
  for (Count i = 0; i < m; ++i) {
    if (box > cap / std::max<Count>(bound, 1))
      throw Error(ErrorKind::overflow, "tuple box exceeds the cap of " + std::to_string(cap));
    box *= bound;
  }

  // Odometer over ascending values: 1..U for positive slots, -U..-1 for negative ones.
  auto sign = [](Count i) { return i % 2 == 0 ? Count(1) : Count(-1); };
  auto first_value = [&](Count i) { return sign(i) > 0 ? Count(1) : -bound; };
  auto last_value = [&](Count i) { return sign(i) > 0 ? bound : Count(-1); };

  if (bound < 1) return catalog;
  std::vector<Count> k(static_cast<std::size_t>(m));
  for (Count i = 0; i < m; ++i) k[std::size_t(i)] = first_value(i);
  while (true) {
    const Count k_last = 1 - std::accumulate(k.begin(), k.end(), Count(0));
    if (k_last * sign(m) > 0 && std::abs(k_last) <= bound) {
      CatalogEntry entry;
      entry.k = k;
      entry.k_last = k_last;
      catalog.entries.push_back(std::move(entry));
    }
    Count pos = m - 1;
    while (pos >= 0 && k[std::size_t(pos)] == last_value(pos)) {
      k[std::size_t(pos)] = first_value(pos);
      --pos;
    }
    if (pos < 0) break;
    ++k[std::size_t(pos)];
  }
  return catalog;
}

CandidateCatalog realize_catalog(CandidateCatalog catalog, const InverseOptions& options) {
  for (auto& entry : catalog.entries) {
    Eigen::VectorXd target(Index(entry.k.size()));
    for (std::size_t i = 0; i < entry.k.size(); ++i) target(Index(i)) = double(entry.k[i]);

    bool closed_form_rules_out = false;
    if (catalog.s == 3) {
      try {
        const auto cf = invert_s3_closed(target(0), target(1));
        entry.status = TupleStatus::realized;
        entry.t = cf.t;
        entry.residual = cf.residual;
        entry.method = "closed_form";
        continue;
      } catch (const Error& e) {
        closed_form_rules_out = e.kind() == ErrorKind::no_solution;
      }
    }
    const auto result = invert_K(target, options);
    entry.residual = result.residual;
    entry.method = "newton";
    if (result.converged) {
      entry.status = TupleStatus::realized;
      entry.t = result.t;
    } else {
      // Every factor of K_1 exceeds 1 on the domain, so K_1 > 1 there.
      const bool below_first_bound = entry.k.front() <= 1;
      entry.status = (closed_form_rules_out || below_first_bound) ? TupleStatus::unrealizable
                                                                  : TupleStatus::newton_failed;
    }
  }
  catalog.realized_stage = true;
  return catalog;
}

CatalogSummary catalog_report(const CandidateCatalog& catalog) {
  CatalogSummary summary;
  summary.total = Count(catalog.entries.size());
  summary.realized = catalog.count(TupleStatus::realized);
  summary.unrealizable = catalog.count(TupleStatus::unrealizable);
  summary.newton_failed = catalog.count(TupleStatus::newton_failed);
  summary.pending = catalog.count(TupleStatus::pending);
  if (summary.total == 0) {
    summary.statement = "no admissible ratio tuple exists for d=" + std::to_string(catalog.d) + ", s=" +
                        std::to_string(catalog.s) + ": no s-distance set with |X| >= " +
                        std::to_string(catalog.context.cardinality_threshold) + " exists";
  } else {
    summary.statement = "s-distance sets in R^" + std::to_string(catalog.d) + " with s=" + std::to_string(catalog.s) +
                        " and |X| >= " + std::to_string(catalog.context.cardinality_threshold) +
                        " use one of at most " + std::to_string(summary.total) +
                        " normalized distance systems (finitely many)";
  }
  return summary;
}

}  // namespace sdist
