#include "loadlm/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>
#include <tuple>

#include "loadlm/error.hpp"

namespace loadlm {

namespace {

std::string fixed3(double v) {
  std::array<char, 64> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.3f", v);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

std::vector<std::string> row_cells(const EvalRow& row) {
  const bool failed = row.error.has_value();
  return {row.model,
          row.source_building,
          row.target_building,
          std::to_string(row.horizon),
          failed ? std::string(kErrorMarker) : fixed3(row.rmse),
          failed ? std::string(kErrorMarker) : fixed3(row.mae),
          std::to_string(row.windows),
          std::to_string(row.faults)};
}

std::string render_csv(const std::vector<EvalRow>& rows) {
  std::ostringstream os;
  os << kReportCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto cells = row_cells(row);
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }
  return os.str();
}

std::string render_text(const EvalReport& report, std::vector<EvalRow> rows) {
  // Grouped by source building first, the layout of a cross-building table.
  std::stable_sort(rows.begin(), rows.end(), [](const EvalRow& a, const EvalRow& b) {
    return std::tie(a.source_building, a.model, a.target_building, a.horizon) <
           std::tie(b.source_building, b.model, b.target_building, b.horizon);
  });
  const std::vector<std::string> header = {"model", "source", "target", "horizon", "rmse", "mae", "windows", "faults"};
  std::vector<std::vector<std::string>> table;
  for (const auto& row : rows) table.push_back(row_cells(row));

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& cells : table) width[c] = std::max(width[c], cells[c].size());
  }
  const auto emit = [&](std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      // Text columns left-aligned, numeric columns right-aligned.
      const auto pad = std::string(width[c] - cells[c].size(), ' ');
      if (c > 0) os << "  ";
      os << (c < 3 ? cells[c] + pad : pad + cells[c]);
    }
    os << '\n';
  };

  std::ostringstream os;
  for (const auto& [key, value] : report.metadata) os << "# " << key << '=' << value << '\n';
  emit(os, header);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].source_building != rows[i - 1].source_building) os << '\n';
    emit(os, table[i]);
  }
  for (const auto& row : rows) {
    if (row.error) os << "# error " << row.model << ' ' << row.source_building << "->" << row.target_building << ": "
                      << *row.error << '\n';
  }
  return os.str();
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (auto comma = line.find(','); comma != std::string_view::npos; comma = line.find(',', start)) {
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  out.push_back(line.substr(start));
  return out;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedRow, "report line " + std::to_string(line_no) + ": bad number '" +
                                             std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string render_report(const EvalReport& report, ReportFormat format) {
  if (report.rows.empty()) throw Error(ErrorCode::EmptyReport, "report has no rows");
  EvalReport sorted = report;
  sorted.sort_rows();
  return format == ReportFormat::Csv ? render_csv(sorted.rows) : render_text(sorted, sorted.rows);
}

std::vector<EvalRow> read_report_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedRow, "empty report");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kReportCsvHeader) throw Error(ErrorCode::MalformedRow, "unexpected report header '" + line + "'");

  std::vector<EvalRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 8) {
      throw Error(ErrorCode::MalformedRow, "report line " + std::to_string(line_no) + ": expected 8 columns");
    }
    EvalRow row;
    row.model = cells[0];
    row.source_building = cells[1];
    row.target_building = cells[2];
    row.horizon = parse_number<int>(cells[3], line_no);
    if (cells[4] == kErrorMarker) {
      row.error = std::string(kErrorMarker);
    } else {
      row.rmse = parse_number<double>(cells[4], line_no);
      row.mae = parse_number<double>(cells[5], line_no);
    }
    row.windows = parse_number<std::size_t>(cells[6], line_no);
    row.faults = parse_number<std::size_t>(cells[7], line_no);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_plot_csv(std::span<const EvalRow> rows) {
  std::vector<EvalRow> sorted(rows.begin(), rows.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const EvalRow& a, const EvalRow& b) { return a.horizon < b.horizon; });
  std::ostringstream os;
  os << kPlotCsvHeader << '\n';
  for (const auto& row : sorted) {
    if (row.error) continue;
    os << row.horizon << ',' << fixed3(row.rmse) << ',' << fixed3(row.mae) << '\n';
  }
  return os.str();
}

}  // namespace loadlm
