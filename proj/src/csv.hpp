#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace ffda {

/// Canonical numeric cell rendering (17 significant digits, shortest form).
std::string format_number(double value);

/// Comma-separated writer with a header row and LF line endings.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  ~CsvWriter();

  void row(const std::vector<std::string>& cells);
  /// Flushes and reports write failures; called by the destructor without
  /// throwing, so call it explicitly when errors matter.
  void close();

private:
  void write_line(const std::vector<std::string>& cells);

  std::ofstream out_;
  std::string path_;
  std::size_t columns_ = 0;
  bool closed_ = false;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws std::invalid_argument when missing.
  std::size_t column(const std::string& name, const std::string& path) const;
};

CsvTable read_csv(const std::string& path);

/// Strict full-token number parse with file context in the error message.
double parse_number(const std::string& cell, const std::string& context);

}  // namespace ffda
