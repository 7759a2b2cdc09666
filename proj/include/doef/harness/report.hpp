#pragma once

#include <iosfwd>
#include <string_view>

#include "doef/harness/experiment.hpp"

namespace doef::harness {

enum class ReportFormat { csv, table, plotdata };

ReportFormat parse_report_format(std::string_view s);

inline constexpr std::string_view kCsvHeader =
    "H,protocol,clusterer,txn_read_io,clust_read_io,clust_write_io,total_io,buffer_hits";

void write_report(std::ostream& out, const SweepResult& result, ReportFormat format);
std::string format_h(double h);

/// Reads rows written by the csv format.
SweepResult read_csv(std::istream& in);

}  // namespace doef::harness
