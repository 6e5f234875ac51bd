#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "config.hpp"
#include "csv.hpp"
#include "errors.hpp"

using namespace ffda;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("config parses sections, comments, and typed lookups") {
  const std::string text =
      "# top comment\n"
      "[run]\n"
      "mode = analyze2d\n"
      "seed = 42\n"
      "; another comment\n"
      "[lattice]\n"
      "min = 0 0 -0.25\n"
      "degrees = 3 1 1\n"
      "scale = 2.5\n";
  const Config config = Config::parse(text, "inline");
  CHECK(config.require("run.mode") == "analyze2d");
  CHECK(config.integer("run.seed", 0) == 42);
  CHECK(config.number("lattice.scale", 0.0) == 2.5);
  CHECK(config.number("lattice.missing", 1.5) == 1.5);
  CHECK(config.has("lattice.min"));
  CHECK(!config.has("lattice.max"));
  const std::vector<double> min = config.numbers("lattice.min");
  REQUIRE(min.size() == 3);
  CHECK(min[2] == -0.25);
  CHECK_THROWS_AS((void)config.require("run.out"), ConfigError);
  CHECK_THROWS_AS((void)config.number("run.mode", 0.0), ConfigError);
  CHECK_THROWS_AS((void)config.integer("lattice.scale", 0), ConfigError);
}

TEST_CASE("config reports malformed lines with context") {
  try {
    (void)Config::parse("[run]\nmode analyze2d\n", "bad.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& error) {
    const std::string what = error.what();
    CHECK(what.find("bad.ini:2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)Config::parse("[unclosed\n", "bad.ini"), ConfigError);
  CHECK_THROWS_AS((void)Config::parse("orphan = 1\n", "bad.ini"), ConfigError);
}

TEST_CASE("config overrides replace and extend values") {
  Config config = Config::parse("[run]\nmode = deform\n", "inline");
  config.apply_override("run.mode=analyze2d");
  config.apply_override("run.out=results");
  CHECK(config.require("run.mode") == "analyze2d");
  CHECK(config.require("run.out") == "results");
  CHECK_THROWS_AS(config.apply_override("run.mode"), ConfigError);
  CHECK_THROWS_AS(config.apply_override("nosection=1"), ConfigError);
}

TEST_CASE("config echo round-trips canonically") {
  Config config = Config::parse(
      "[zeta]\nb = 2\na = 1\n[alpha]\nkey = value with spaces\n", "inline");
  const std::string echoed = config.echo();
  CHECK(echoed.find("[alpha]") < echoed.find("[zeta]"));
  const Config reloaded = Config::parse(echoed, "echo");
  CHECK(reloaded.echo() == echoed);
  CHECK(reloaded.require("alpha.key") == "value with spaces");
  CHECK(reloaded.require("zeta.a") == "1");
}

TEST_CASE("config load reads files and reports missing ones") {
  const std::string path = temp_path("ffda_config.ini");
  {
    std::ofstream out(path, std::ios::binary);
    out << "[run]\nmode = deform\n";
  }
  const Config config = Config::load(path);
  CHECK(config.require("run.mode") == "deform");
  fs::remove(path);
  CHECK_THROWS_AS((void)Config::load(path), ConfigError);
}

TEST_CASE("format_number keeps doubles exactly") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  const double awkward = 0.1 + 0.2;
  CHECK(std::stod(format_number(awkward)) == awkward);
  CHECK(std::stod(format_number(1e300)) == 1e300);
  CHECK(std::stod(format_number(-3.0000000000000004e-7)) == -3.0000000000000004e-7);
}

TEST_CASE("csv writer and reader round-trip exact values") {
  const std::string path = temp_path("ffda_table.csv");
  const double values[3] = {0.1 + 0.2, -1.0 / 3.0, 5200300.0};
  {
    CsvWriter writer(path, {"index", "value"});
    for (int i = 0; i < 3; ++i) {
      writer.row({format_number(i), format_number(values[i])});
    }
    writer.close();
  }
  const std::string raw = slurp(path);
  CHECK(raw.find("\r") == std::string::npos);
  CHECK(raw.rfind('\n') == raw.size() - 1);

  const CsvTable table = read_csv(path);
  REQUIRE(table.header.size() == 2);
  CHECK(table.column("value", path) == 1);
  REQUIRE(table.rows.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const std::string cell = table.rows[static_cast<std::size_t>(i)][1];
    CHECK(parse_number(cell, path) == values[i]);
  }
  CHECK_THROWS_AS((void)table.column("absent", path), std::invalid_argument);
  fs::remove(path);
  CHECK_THROWS_AS((void)read_csv(path), IoError);
}

TEST_CASE("csv writer rejects rows of the wrong width") {
  const std::string path = temp_path("ffda_badrow.csv");
  CsvWriter writer(path, {"a", "b"});
  CHECK_THROWS_AS(writer.row({"1"}), std::invalid_argument);
  writer.close();
  fs::remove(path);
}

TEST_CASE("csv reader validates structure and numbers strictly") {
  const std::string path = temp_path("ffda_ragged.csv");
  {
    std::ofstream out(path, std::ios::binary);
    out << "a,b\r\n1,2\r\n3\r\n";
  }
  try {
    (void)read_csv(path);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& error) {
    CHECK(std::string(error.what()).find(":3") != std::string::npos);
  }
  fs::remove(path);

  CHECK(parse_number("  2.5", "ctx") == 2.5);
  CHECK_THROWS_AS((void)parse_number("2.5 ", "ctx"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_number("2.5x", "ctx"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_number("", "ctx"), std::invalid_argument);
  try {
    (void)parse_number("nope", "somewhere.csv");
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& error) {
    CHECK(std::string(error.what()).find("somewhere.csv") != std::string::npos);
  }
}
