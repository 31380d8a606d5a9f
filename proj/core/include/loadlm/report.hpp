#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "loadlm/evaluation.hpp"

namespace loadlm {

enum class ReportFormat { TextTable, Csv };

inline constexpr std::string_view kReportCsvHeader = "model,source_building,target_building,horizon,rmse,mae,windows,faults";
inline constexpr std::string_view kPlotCsvHeader = "horizon,rmse,mae";
/// Written in place of rmse/mae for cells that failed.
inline constexpr std::string_view kErrorMarker = "error";

/// Metrics to 3 decimals. CSV rows are in (model, source, target, horizon)
/// order. The text table starts with `# key=value` metadata lines and lists
/// one block per source building, separated by blank lines. Errors: EmptyReport.
[[nodiscard]] std::string render_report(const EvalReport& report, ReportFormat format);

/// Parses the CSV form back into rows (metadata is not part of the CSV).
[[nodiscard]] std::vector<EvalRow> read_report_csv(std::istream& in);

/// `horizon,rmse,mae` lines for plotting error against horizon.
[[nodiscard]] std::string render_plot_csv(std::span<const EvalRow> rows);

}  // namespace loadlm
