#include "csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "errors.hpp"

namespace ffda {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), columns_(header.size()) {
  if (!out_) throw IoError("cannot open csv file for writing: " + path);
  if (header.empty()) throw std::invalid_argument("csv header must not be empty");
  write_line(header);
}

CsvWriter::~CsvWriter() {
  if (!closed_) out_.flush();
}

void CsvWriter::write_line(const std::vector<std::string>& cells) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c) out_ << ',';
    out_ << cells[c];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw std::invalid_argument("csv row width differs from header: " + path_);
  }
  write_line(cells);
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.flush();
  if (!out_) throw IoError("failed while writing csv file: " + path_);
  out_.close();
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::size_t CsvTable::column(const std::string& name, const std::string& path) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  throw std::invalid_argument(path + ": missing csv column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open csv file: " + path);
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": csv row width differs from header");
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) {
    throw std::invalid_argument(path + ": csv file has no header row");
  }
  return table;
}

double parse_number(const std::string& cell, const std::string& context) {
  try {
    std::size_t used = 0;
    const double value = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": not a number: '" + cell + "'");
  }
}

}  // namespace ffda
