#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "loadlm/series.hpp"

namespace loadlm {

inline constexpr std::string_view kLoadCsvHeader = "timestamp,building_id,consumption_kwh";

/// Reads `timestamp,building_id,consumption_kwh` rows and groups them per
/// building, sorted by time. Gaps are allowed; duplicates are not.
///
/// Errors: MalformedRow (column count, timestamp, number), DuplicateTimestamp,
/// NegativeConsumption. Messages carry the 1-based line number.
[[nodiscard]] std::map<std::string, LoadSeries> ingest_csv(std::istream& in);

/// Convenience wrapper around `ingest_csv`; throws Io if the file cannot be opened.
[[nodiscard]] std::map<std::string, LoadSeries> ingest_csv_file(const std::string& path);

/// Writes series in the ingest schema, buildings in the given order. Values use
/// the shortest decimal form that reads back to the same double.
void write_csv(std::ostream& out, std::span<const LoadSeries> series);

/// Shortest round-trip decimal text for a double.
[[nodiscard]] std::string format_shortest(double value);

}  // namespace loadlm
