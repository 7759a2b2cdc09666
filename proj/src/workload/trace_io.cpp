#include "doef/workload/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace doef::workload {
namespace {

template <typename Int>
Int parse_int(std::string_view s, std::string_view what) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw TraceError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_record(const AccessRecord& rec) {
  std::string out = std::to_string(rec.seq) + ',' + std::to_string(rec.root_oid) + ',' +
                    std::string(to_string(rec.op_kind)) + ',';
  for (std::size_t i = 0; i < rec.accessed.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(rec.accessed[i].oid);
    out += rec.accessed[i].mode == AccessMode::read ? ":r" : ":w";
  }
  return out;
}

AccessRecord parse_record(std::string_view line) {
  AccessRecord rec;
  std::string_view rest = line;
  auto field = [&](std::string_view what) {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw TraceError("missing field " + std::string(what));
    const auto f = rest.substr(0, comma);
    rest.remove_prefix(comma + 1);
    return f;
  };
  rec.seq = parse_int<std::uint64_t>(field("seq"), "seq");
  rec.root_oid = parse_int<Oid>(field("root_oid"), "root_oid");
  try {
    rec.op_kind = parse_op_kind(field("op_kind"));
  } catch (const ParameterError& e) {
    throw TraceError(e.what());
  }
  while (!rest.empty()) {
    const auto semi = rest.find(';');
    const auto item = rest.substr(0, semi);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos || colon + 2 != item.size()) {
      throw TraceError("bad access '" + std::string(item) + "'");
    }
    const char mode = item.back();
    if (mode != 'r' && mode != 'w') throw TraceError("bad access mode in '" + std::string(item) + "'");
    rec.accessed.push_back({parse_int<Oid>(item.substr(0, colon), "oid"),
                            mode == 'r' ? AccessMode::read : AccessMode::write});
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  return rec;
}

void write_trace(std::ostream& out, const AccessTrace& trace) {
  for (const auto& [k, v] : trace.metadata) out << "# " << k << '=' << v << '\n';
  for (const auto& rec : trace.records) out << format_record(rec) << '\n';
}

AccessTrace read_trace(std::istream& in) {
  AccessTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto start = line.find_first_not_of("# ");
      if (start == std::string::npos) continue;
      const auto body = line.substr(start);
      const auto eq = body.find('=');
      if (eq != std::string::npos) trace.metadata[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    trace.records.push_back(parse_record(line));
  }
  return trace;
}

void save_trace(const std::filesystem::path& path, const AccessTrace& trace) {
  std::ofstream out(path);
  if (!out) throw TraceError("cannot write " + path.string());
  write_trace(out, trace);
}

AccessTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open " + path.string());
  return read_trace(in);
}

}  // namespace doef::workload
