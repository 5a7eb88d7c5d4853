#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspomcp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `key = value` lines, `#` comments. Used for instance configs, planner
// settings and experiment specs alike.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return entries_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Integers separated by spaces and/or commas.
  std::vector<int> get_ints(const std::string& key) const;

  void set(const std::string& key, std::string value);
  void set(const std::string& key, int value) { set(key, std::to_string(value)); }
  void set(const std::string& key, double value);
  void erase(const std::string& key) { entries_.erase(key); }

  // Keys of `overrides` replace ours.
  void merge(const KeyValueConfig& overrides);

  // Sorted by key, one entry per line.
  std::string to_text() const;
  // FNV-1a over to_text().
  std::uint64_t digest() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  friend bool operator==(const KeyValueConfig&, const KeyValueConfig&) = default;

 private:
  std::map<std::string, std::string> entries_;
};

// Shortest representation that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace aspomcp
