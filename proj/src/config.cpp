#include "config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace ffda {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits "section.key" into its two halves.
std::pair<std::string, std::string> split_path(const std::string& path) {
  const std::size_t dot = path.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
    throw ConfigError("config key must have the form section.key: '" + path + "'");
  }
  return {path.substr(0, dot), path.substr(dot + 1)};
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

Config Config::parse(const std::string& text, const std::string& context) {
  Config config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw ConfigError(context + ":" + std::to_string(line_no) +
                          ": malformed section header");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) {
        throw ConfigError(context + ":" + std::to_string(line_no) + ": empty section name");
      }
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(context + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(context + ":" + std::to_string(line_no) + ": empty key");
    }
    if (section.empty()) {
      throw ConfigError(context + ":" + std::to_string(line_no) +
                        ": key outside any [section]");
    }
    config.sections_[section][key] = trim(t.substr(eq + 1));
  }
  return config;
}

void Config::apply_override(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override must have the form section.key=value: '" + assignment +
                      "'");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& path, const std::string& value) {
  const auto [section, key] = split_path(path);
  sections_[section][key] = value;
}

bool Config::has(const std::string& path) const {
  const auto [section, key] = split_path(path);
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) != 0;
}

std::string Config::get(const std::string& path, const std::string& fallback) const {
  const auto [section, key] = split_path(path);
  const auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

std::string Config::require(const std::string& path) const {
  if (!has(path)) throw ConfigError("missing required config key: " + path);
  return get(path, "");
}

double Config::parse_value(const std::string& path, const std::string& raw) const {
  try {
    std::size_t used = 0;
    const double value = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config value for " + path + " is not a number: '" + raw + "'");
  }
}

double Config::number(const std::string& path, double fallback) const {
  if (!has(path)) return fallback;
  return parse_value(path, get(path, ""));
}

long Config::integer(const std::string& path, long fallback) const {
  if (!has(path)) return fallback;
  const std::string raw = get(path, "");
  try {
    std::size_t used = 0;
    const long value = std::stol(raw, &used);
    if (used != raw.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config value for " + path + " is not an integer: '" + raw + "'");
  }
}

std::vector<double> Config::numbers(const std::string& path) const {
  const std::string raw = require(path);
  std::istringstream in(raw);
  std::vector<double> values;
  std::string token;
  while (in >> token) values.push_back(parse_value(path, token));
  if (values.empty()) throw ConfigError("config value for " + path + " is empty");
  return values;
}

std::string Config::echo() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [section, keys] : sections_) {
    if (!first) out << "\n";
    first = false;
    out << "[" << section << "]\n";
    for (const auto& [key, value] : keys) out << key << " = " << value << "\n";
  }
  return out.str();
}

}  // namespace ffda
