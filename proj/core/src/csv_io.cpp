#include "loadlm/csv_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "loadlm/error.hpp"

namespace loadlm {

namespace {

std::string line_ref(std::size_t line_no) { return "line " + std::to_string(line_no); }

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::map<std::string, LoadSeries> ingest_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedRow, "missing header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (line != kLoadCsvHeader) {
    throw Error(ErrorCode::MalformedRow, "expected header '" + std::string(kLoadCsvHeader) + "', got '" + line + "'");
  }

  std::map<std::string, std::vector<std::pair<LoadRecord, std::size_t>>> grouped;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split_commas(line);
    if (fields.size() != 3) {
      throw Error(ErrorCode::MalformedRow, line_ref(line_no) + ": expected 3 columns, got " +
                                               std::to_string(fields.size()));
    }
    const auto ts = parse_timestamp(fields[0]);
    if (!ts) {
      throw Error(ErrorCode::MalformedRow,
                  line_ref(line_no) + ": bad timestamp '" + std::string(fields[0]) + "'");
    }
    if (fields[1].empty()) throw Error(ErrorCode::MalformedRow, line_ref(line_no) + ": empty building_id");

    double value = 0.0;
    const auto num = fields[2];
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (num.empty() || ec != std::errc{} || ptr != num.data() + num.size() || !std::isfinite(value)) {
      throw Error(ErrorCode::MalformedRow, line_ref(line_no) + ": bad number '" + std::string(num) + "'");
    }
    if (value < 0.0) {
      throw Error(ErrorCode::NegativeConsumption, line_ref(line_no) + ": " + std::string(num));
    }
    std::string building(fields[1]);
    grouped[building].push_back({LoadRecord{building, *ts, value}, line_no});
  }

  std::map<std::string, LoadSeries> out;
  for (auto& [building, rows] : grouped) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first.timestamp < b.first.timestamp; });
    std::vector<LoadRecord> records;
    records.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].first.timestamp == rows[i - 1].first.timestamp) {
        throw Error(ErrorCode::DuplicateTimestamp,
                    "building " + building + " at " + format_timestamp(rows[i].first.timestamp) + " (" +
                        line_ref(rows[i - 1].second) + " and " + line_ref(rows[i].second) + ")");
      }
      records.push_back(std::move(rows[i].first));
    }
    out.emplace(building, LoadSeries(building, std::move(records)));
  }
  return out;
}

std::map<std::string, LoadSeries> ingest_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return ingest_csv(in);
}

std::string format_shortest(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, std::span<const LoadSeries> series) {
  out << kLoadCsvHeader << '\n';
  for (const auto& s : series) {
    for (const auto& r : s.records()) {
      out << format_timestamp(r.timestamp) << ',' << r.building_id << ',' << format_shortest(r.consumption)
          << '\n';
    }
  }
}

}  // namespace loadlm
