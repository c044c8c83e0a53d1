#include "jfs/dataio/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "jfs/dataio/png.hpp"
#include "jfs/error.hpp"

namespace jfs::dataio {
namespace {

double parse_double(const std::string& field) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw FormatError("bad number in report: '" + field + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string format_report(const EvalReport& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out = kReportCsvHeader;
    out += '\n';
    for (const auto& r : report.rows) {
      out += r.group + "," + std::to_string(r.n) + "," + fixed4(r.miou_coarse) + "," +
             fixed4(r.miou_refined) + "," + fixed4(r.miou_jfs) + "," + fixed4(r.success_rate) + "\n";
    }
    return out;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"group", r.group},
                    {"n", r.n},
                    {"miou_coarse", r.miou_coarse},
                    {"miou_refined", r.miou_refined},
                    {"miou_jfs", r.miou_jfs},
                    {"success_rate", r.success_rate}});
  }
  nlohmann::ordered_json doc = {{"rows", rows}};
  return doc.dump(2) + "\n";
}

EvalReport parse_report(const std::string& text, ReportFormat format) {
  EvalReport report;
  if (format == ReportFormat::kCsv) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kReportCsvHeader) throw FormatError("report CSV header mismatch");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_csv(line);
      if (f.size() != 6) throw FormatError("report CSV row has " + std::to_string(f.size()) + " fields");
      ReportRow r;
      r.group = f[0];
      r.n = static_cast<std::size_t>(parse_double(f[1]));
      r.miou_coarse = parse_double(f[2]);
      r.miou_refined = parse_double(f[3]);
      r.miou_jfs = parse_double(f[4]);
      r.success_rate = parse_double(f[5]);
      report.rows.push_back(std::move(r));
    }
    return report;
  }
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc.at("rows")) {
      ReportRow r;
      r.group = j.at("group").get<std::string>();
      r.n = j.at("n").get<std::size_t>();
      r.miou_coarse = j.at("miou_coarse").get<double>();
      r.miou_refined = j.at("miou_refined").get<double>();
      r.miou_jfs = j.at("miou_jfs").get<double>();
      r.success_rate = j.at("success_rate").get<double>();
      report.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report JSON: ") + e.what());
  }
  return report;
}

void write_report(const EvalReport& report, const std::filesystem::path& path, ReportFormat format) {
  const auto text = format_report(report, format);
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

EvalReport read_report(const std::filesystem::path& path, ReportFormat format) {
  const auto bytes = read_file(path);
  return parse_report(std::string(bytes.begin(), bytes.end()), format);
}

}  // namespace jfs::dataio
