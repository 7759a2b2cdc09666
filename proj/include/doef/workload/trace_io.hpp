#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "doef/workload/workload.hpp"

namespace doef::workload {

/// An access trace plus free-form `# key=value` metadata lines.
struct AccessTrace {
  std::map<std::string, std::string> metadata;
  std::vector<AccessRecord> records;
};

/// One record per line: `seq,root_oid,op_kind,oid:mode;oid:mode;...` with mode r or w.
std::string format_record(const AccessRecord& rec);
AccessRecord parse_record(std::string_view line);

void write_trace(std::ostream& out, const AccessTrace& trace);
AccessTrace read_trace(std::istream& in);

void save_trace(const std::filesystem::path& path, const AccessTrace& trace);
AccessTrace load_trace(const std::filesystem::path& path);

}  // namespace doef::workload
