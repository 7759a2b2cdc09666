#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace doef {

/// Flat KEY = value configuration. Keys are case-sensitive because Table-2 style
/// names such as `n` and `N` denote different parameters.
///
///   # comment
///   NO = 100000
///   H-VALUES = 0.25, 0.5, 1
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  void set(std::string key, std::string value);
  bool contains(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;

  std::optional<double> get_double(std::string_view key) const;
  std::optional<std::uint64_t> get_uint(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;
  std::optional<std::vector<double>> get_doubles(std::string_view key) const;
  std::optional<std::vector<std::string>> get_strings(std::string_view key) const;

  /// Keys present here but not in `known`.
  std::vector<std::string> unknown_keys(const std::set<std::string, std::less<>>& known) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

}  // namespace doef
