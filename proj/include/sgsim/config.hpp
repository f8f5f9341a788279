#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// INI-style configuration: "[section]" headers, "key = value" entries,
// '#' comments. Typed accessors throw ConfigError on missing keys or
// unparseable values.

namespace sgsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Config {
public:
  static Config parse_string(const std::string& text);
  static Config parse_file(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  // comma-separated list of doubles
  std::vector<double> get_doubles(const std::string& section, const std::string& key) const;
  std::vector<long> get_ints(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  std::vector<std::string> sections() const;
  const std::map<std::string, std::string>& section(const std::string& name) const;

  std::string dump() const;

private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

} // namespace sgsim
