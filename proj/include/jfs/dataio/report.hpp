#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace jfs {

/// One row of the comparison table. Ratios are fractions in [0, 1]; percent
/// formatting only happens at display time.
struct ReportRow {
  std::string group;
  std::size_t n = 0;
  double miou_coarse = 0.0;
  double miou_refined = 0.0;
  double miou_jfs = 0.0;
  double success_rate = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct EvalReport {
  std::vector<ReportRow> rows;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

}  // namespace jfs

namespace jfs::dataio {

enum class ReportFormat { kCsv, kJson };

inline constexpr const char* kReportCsvHeader = "group,n,miou_coarse,miou_refined,miou_jfs,success_rate";

/// CSV with four decimals per ratio; JSON with full-precision ratios.
std::string format_report(const EvalReport& report, ReportFormat format);
EvalReport parse_report(const std::string& text, ReportFormat format);

void write_report(const EvalReport& report, const std::filesystem::path& path, ReportFormat format);
EvalReport read_report(const std::filesystem::path& path, ReportFormat format);

/// "%.4f" in the C locale.
std::string fixed4(double value);

}  // namespace jfs::dataio
