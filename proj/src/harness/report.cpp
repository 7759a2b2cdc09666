#include "doef/harness/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace doef::harness {

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "table") return ReportFormat::table;
  if (s == "plotdata") return ReportFormat::plotdata;
  throw ParameterError("unknown report format '" + std::string(s) + "'");
}

std::string format_h(double h) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, h);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<SweepRow> sorted_rows(const SweepResult& result) {
  auto rows = result.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    const auto ka = cluster::to_string(a.clusterer), kb = cluster::to_string(b.clusterer);
    return ka != kb ? ka < kb : a.h < b.h;
  });
  return rows;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    const auto& m = r.metrics;
    out << format_h(r.h) << ',' << r.protocol << ',' << cluster::to_string(r.clusterer) << ',' << m.txn_read_io
        << ',' << m.clust_read_io << ',' << m.clust_write_io << ',' << m.total_io << ',' << m.buffer_hits << '\n';
  }
}

void write_table(std::ostream& out, const SweepResult& result) {
  out << std::left << std::setw(10) << "clusterer" << std::right << std::setw(14) << "H" << std::setw(12)
      << "txn_read" << std::setw(12) << "clust_read" << std::setw(12) << "clust_write" << std::setw(12)
      << "total_io" << std::setw(12) << "hits" << '\n';
  for (const auto& r : sorted_rows(result)) {
    const auto& m = r.metrics;
    out << std::left << std::setw(10) << cluster::to_string(r.clusterer) << std::right << std::setw(14)
        << format_h(r.h) << std::setw(12) << m.txn_read_io << std::setw(12) << m.clust_read_io << std::setw(12)
        << m.clust_write_io << std::setw(12) << m.total_io << std::setw(12) << m.buffer_hits << '\n';
  }
}

void write_plotdata(std::ostream& out, const SweepResult& result) {
  out << "# clusterer\tlog2_h\ttotal_io\n";
  for (const auto& r : sorted_rows(result)) {
    out << cluster::to_string(r.clusterer) << '\t' << format_h(std::log2(r.h)) << '\t' << r.metrics.total_io << '\n';
  }
}

template <typename T>
T parse_number(const std::string& field, std::size_t line_no) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw FormatError("metrics line " + std::to_string(line_no) + ": bad number '" + field + "'");
  }
  return value;
}

}  // namespace

void write_report(std::ostream& out, const SweepResult& result, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: write_csv(out, result); break;
    case ReportFormat::table: write_table(out, result); break;
    case ReportFormat::plotdata: write_plotdata(out, result); break;
  }
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw FormatError("metrics file lacks the expected header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw FormatError("metrics line " + std::to_string(line_no) + ": expected 8 fields");
    SweepRow r;
    r.h = parse_number<double>(f[0], line_no);
    r.protocol = f[1];
    r.clusterer = cluster::parse_clusterer_kind(f[2]);
    r.metrics.txn_read_io = parse_number<std::uint64_t>(f[3], line_no);
    r.metrics.clust_read_io = parse_number<std::uint64_t>(f[4], line_no);
    r.metrics.clust_write_io = parse_number<std::uint64_t>(f[5], line_no);
    r.metrics.total_io = parse_number<std::uint64_t>(f[6], line_no);
    r.metrics.buffer_hits = parse_number<std::uint64_t>(f[7], line_no);
    if (r.metrics.total_io != r.metrics.txn_read_io + r.metrics.clust_read_io + r.metrics.clust_write_io) {
      throw FormatError("metrics line " + std::to_string(line_no) + ": total_io does not add up");
    }
    result.rows.push_back(std::move(r));
  }
  return result;
}

}  // namespace doef::harness
