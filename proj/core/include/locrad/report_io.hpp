#pragma once

#include "locrad/experiments.hpp"
#include "locrad/rademacher.hpp"

#include <string>
#include <utility>
#include <vector>

namespace locrad {

/// Resolved configuration echoed into every output, in insertion order.
using Provenance = std::vector<std::pair<std::string, std::string>>;

/// CSV layout: "# locrad <version>", one "# key=value" line per provenance
/// entry, the column header, then rows. Reals use format_real.
std::string table_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows, const Provenance& provenance);

/// {"version", "config", "columns", "rows"}.
std::string table_json(const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows, const Provenance& provenance);

/// Columns k, r_bar, local_norm.
std::string trace_csv(const BoundTrace& trace, const Provenance& provenance);
std::string trace_json(const BoundTrace& trace, const Provenance& provenance, double certificate);

/// Columns rep, n, eps, N, bound, risk, violated.
std::string coverage_csv(const ExperimentReport& report, const Provenance& provenance);
/// Columns n, bound_median, risk_median.
std::string rates_csv(const ExperimentReport& report, const Provenance& provenance);

/// Aggregates, config echo and per-replication seeds.
std::string report_json(const ExperimentReport& report, const Provenance& provenance);

}  // namespace locrad
