#pragma once

#include <optional>
#include <string>

#include "d2dmotif/config.hpp"
#include "d2dmotif/motifstats.hpp"
#include "d2dmotif/performance.hpp"
#include "d2dmotif/simulator.hpp"

namespace d2dmotif {

/// One output row. Analytic rows leave the standard-error columns empty
/// (except the correlated-outage one when computed); simulated rows leave the
/// truncation bounds empty.
struct ResultRow {
    std::string source;  // "analytic" or "simulated"
    NetworkConfig config;
    ThroughputReport report;
    MotifStatistics stats;
    std::optional<SimulationReport> simulated;
};

/// Column names, comma separated, no trailing newline.
std::string csv_header();
/// One CSV line without trailing newline; floats at 9 significant digits,
/// NaN as "nan".
std::string csv_row(const ResultRow& row);

/// Number formatting used by the CSV writer.
std::string format_number(double v);

}  // namespace d2dmotif
