#include "doef/ocb/db_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace doef::ocb {
namespace {

constexpr int kFormatVersion = 1;

template <typename T, typename F>
void write_list(std::ostream& out, const std::vector<T>& items, F&& item) {
  if (items.empty()) {
    out << '-';
    return;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ';';
    item(items[i]);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s == "-") return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::pair<std::uint32_t, std::uint32_t> parse_pair(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw FormatError("expected target:type, got '" + s + "'");
  return {static_cast<std::uint32_t>(std::stoul(s.substr(0, colon))),
          static_cast<std::uint32_t>(std::stoul(s.substr(colon + 1)))};
}

// Unset locality windows are written as '-' so they read back unset.
void write_optional(std::ostream& out, const std::optional<std::uint32_t>& v) {
  if (v)
    out << *v;
  else
    out << '-';
}

std::optional<std::uint32_t> read_optional(const std::string& tok) {
  if (tok == "-") return std::nullopt;
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw FormatError("malformed locality field '" + tok + "'");
  return v;
}

}  // namespace

void write_database(std::ostream& out, const Database& db) {
  const auto& p = db.params;
  out << "OCBDB " << kFormatVersion << '\n';
  out << "PARAMS " << p.nc << ' ' << p.maxnref << ' ' << p.basesize << ' ' << p.no << ' ' << p.nreft
      << ' ' << p.attrange << ' ';
  write_optional(out, p.clocref);
  out << ' ';
  write_optional(out, p.olocref);
  out << ' ' << db.rng_seed << '\n';
  if (!p.basesize_table.empty()) {
    out << "BASESIZE-TABLE";
    for (auto b : p.basesize_table) out << ' ' << b;
    out << '\n';
  }
  for (const auto& c : db.classes) {
    out << "CLASS " << c.class_id << ' ' << c.maxnref << ' ' << c.basesize << ' ' << c.instance_size
        << ' ';
    write_list(out, c.crefs, [&](const ClassRef& r) { out << r.target << ':' << r.type; });
    out << '\n';
  }
  for (const auto& o : db.objects) {
    if (!o.alive) {
      out << "DELETED " << o.oid << '\n';
      continue;
    }
    out << "OBJECT " << o.oid << ' ' << o.class_id << ' ' << o.filler_size << ' ';
    write_list(out, o.attributes, [&](std::int32_t a) { out << a; });
    out << ' ';
    write_list(out, o.orefs, [&](const ObjectRef& r) { out << r.target << ':' << r.type; });
    out << '\n';
  }
}

Database read_database(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty database file");
  {
    std::istringstream hdr(line);
    std::string magic;
    int version = 0;
    hdr >> magic >> version;
    if (magic != "OCBDB") throw FormatError("not an OCB database file");
    if (version != kFormatVersion) throw FormatError("unsupported database version " + std::to_string(version));
  }

  Database db;
  bool have_params = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "PARAMS") {
      auto& p = db.params;
      std::string cl, ol;
      ls >> p.nc >> p.maxnref >> p.basesize >> p.no >> p.nreft >> p.attrange >> cl >> ol >> db.rng_seed;
      if (!ls) throw FormatError("malformed PARAMS line");
      p.clocref = read_optional(cl);
      p.olocref = read_optional(ol);
      db.classes.resize(p.nc);
      have_params = true;
    } else if (tag == "BASESIZE-TABLE") {
      std::uint32_t b = 0;
      while (ls >> b) db.params.basesize_table.push_back(b);
    } else if (tag == "CLASS") {
      if (!have_params) throw FormatError("CLASS before PARAMS");
      ClassSpec c;
      std::string refs;
      ls >> c.class_id >> c.maxnref >> c.basesize >> c.instance_size >> refs;
      if (!ls || c.class_id >= db.classes.size()) throw FormatError("malformed CLASS line");
      for (const auto& r : split(refs, ';')) {
        const auto [t, ty] = parse_pair(r);
        c.crefs.push_back({t, ty});
      }
      db.classes[c.class_id] = std::move(c);
    } else if (tag == "OBJECT" || tag == "DELETED") {
      if (!have_params) throw FormatError("object record before PARAMS");
      Oid oid = 0;
      ls >> oid;
      if (!ls) throw FormatError("malformed object record");
      if (oid != db.objects.size()) throw FormatError("object records must be in OID order");
      ObjectInstance o;
      o.oid = oid;
      if (tag == "DELETED") {
        o.alive = false;
      } else {
        std::string attrs, refs;
        ls >> o.class_id >> o.filler_size >> attrs >> refs;
        if (!ls || o.class_id >= db.classes.size()) throw FormatError("malformed OBJECT line");
        for (const auto& a : split(attrs, ';')) o.attributes.push_back(std::stoi(a));
        for (const auto& r : split(refs, ';')) {
          const auto [t, ty] = parse_pair(r);
          o.orefs.push_back({t, ty});
        }
      }
      db.objects.push_back(std::move(o));
    } else {
      throw FormatError("unknown record '" + tag + "'");
    }
  }
  if (!have_params) throw FormatError("missing PARAMS line");

  for (const auto& o : db.objects) {
    if (!o.alive) continue;
    db.classes[o.class_id].iterator.push_back(o.oid);
    for (const auto& r : o.orefs) {
      if (r.target >= db.objects.size()) throw FormatError("reference to unknown object");
      db.objects[r.target].backrefs.push_back({o.oid, r.type});
    }
  }
  return db;
}

void save_database(const std::filesystem::path& path, const Database& db) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  write_database(out, db);
}

Database load_database(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_database(in);
}

}  // namespace doef::ocb
