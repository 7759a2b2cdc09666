#include "doef/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "doef/types.hpp"

namespace doef {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

double to_double(std::string_view key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParameterError("config key " + std::string(key) + ": not a number: '" + v + "'");
  }
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(lineno) + ": expected KEY = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ParameterError("config line " + std::to_string(lineno) + ": empty key");
    cfg.set(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

bool Config::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::optional<std::string> Config::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Config::get_double(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return to_double(key, *v);
}

std::optional<std::uint64_t> Config::get_uint(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    throw ParameterError("config key " + std::string(key) + ": not a non-negative integer: '" + *v + "'");
  }
  return out;
}

std::optional<bool> Config::get_bool(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  if (*v == "1" || *v == "true" || *v == "on" || *v == "yes") return true;
  if (*v == "0" || *v == "false" || *v == "off" || *v == "no") return false;
  throw ParameterError("config key " + std::string(key) + ": not a boolean: '" + *v + "'");
}

std::optional<std::vector<double>> Config::get_doubles(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::vector<double> out;
  for (const auto& item : split_list(*v)) out.push_back(to_double(key, item));
  return out;
}

std::optional<std::vector<std::string>> Config::get_strings(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return split_list(*v);
}

std::vector<std::string> Config::unknown_keys(const std::set<std::string, std::less<>>& known) const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) {
    if (!known.contains(k)) out.push_back(k);
  }
  return out;
}

}  // namespace doef
