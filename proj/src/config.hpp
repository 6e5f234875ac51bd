#pragma once

#include <map>
#include <string>
#include <vector>

namespace ffda {

/// Flat INI-style configuration: `[section]` headers, `key = value` lines,
/// full-line `#`/`;` comments. Lookups take "section.key" paths; overrides
/// use the same syntax ("section.key=value").
class Config {
public:
  Config() = default;

  static Config load(const std::string& path);
  static Config parse(const std::string& text, const std::string& context);

  void apply_override(const std::string& assignment);
  void set(const std::string& path, const std::string& value);

  bool has(const std::string& path) const;
  std::string get(const std::string& path, const std::string& fallback) const;
  std::string require(const std::string& path) const;

  double number(const std::string& path, double fallback) const;
  long integer(const std::string& path, long fallback) const;
  /// Space-separated list of reals.
  std::vector<double> numbers(const std::string& path) const;

  /// Canonical serialized form (sections and keys sorted); reloading it
  /// reproduces the same configuration.
  std::string echo() const;

private:
  double parse_value(const std::string& path, const std::string& raw) const;

  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace ffda
