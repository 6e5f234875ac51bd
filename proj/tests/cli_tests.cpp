#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return {};
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

CliResult run_cli(const std::string& args) {
  const std::string out_file = (fs::temp_directory_path() / "ffda_cli_stdout").string();
  const std::string err_file = (fs::temp_directory_path() / "ffda_cli_stderr").string();
  const std::string command = std::string("\"") + FFD_ADAPT_BIN + "\" " + args + " > " +
                              out_file + " 2> " + err_file;
  const int raw = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("--version prints the library version and exits cleanly") {
  const CliResult result = run_cli("--version");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("--help exits cleanly and a missing mode does not") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("analyze2d --seed notanumber").exit_code == 1);
}

TEST_CASE("analyze2d runs end to end") {
  const std::string out = fresh_dir("ffda_cli_analyze");
  const CliResult result =
      run_cli("analyze2d --out " + out + " analyze2d.degree_max=6 analyze2d.rho_count=5");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("wrote") != std::string::npos);
  CHECK(fs::exists(fs::path(out) / "condition.csv"));
  CHECK(fs::exists(fs::path(out) / "config_echo.ini"));
  CHECK(result.err.empty());
}

TEST_CASE("bad invocations exit with code one and an error line") {
  const CliResult unknown = run_cli("warp --out " + fresh_dir("ffda_cli_warp"));
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("error:") != std::string::npos);

  const CliResult missing_config =
      run_cli("analyze2d --config /nonexistent/ffda.ini");
  CHECK(missing_config.exit_code == 1);
  CHECK(missing_config.err.find("error:") != std::string::npos);

  const CliResult bad_override =
      run_cli("analyze2d --out " + fresh_dir("ffda_cli_override") + " noequals");
  CHECK(bad_override.exit_code == 1);
}

TEST_CASE("numerical failure exits with code two") {
  const std::string out = fresh_dir("ffda_cli_numeric");
  const CliResult result = run_cli("analyze2d --out " + out + " analyze2d.degree_max=30");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("error:") != std::string::npos);
}

TEST_CASE("reconstruct2d accepts a config file") {
  const std::string ini = (fs::temp_directory_path() / "ffda_cli_recon.ini").string();
  {
    std::ofstream file(ini, std::ios::binary);
    file << "[reconstruct2d]\ndegree = 3\ncycles = 1\n[paths]\ntarget = builtin:line\n";
  }
  const std::string out = fresh_dir("ffda_cli_recon");
  const CliResult result = run_cli("reconstruct2d --config " + ini + " --out " + out);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "history.csv"));
  CHECK(fs::exists(fs::path(out) / "final_curve.csv"));
  fs::remove(ini);
}

TEST_CASE("optimize3d reruns byte-identically for a fixed seed") {
  const std::string out1 = fresh_dir("ffda_cli_opt1");
  const std::string out2 = fresh_dir("ffda_cli_opt2");
  const std::string args =
      " --seed 3 optimize3d.strategy=basic optimizer.max_evaluations=60"
      " schedule.period=10";
  CHECK(run_cli("optimize3d --out " + out1 + args).exit_code == 0);
  CHECK(run_cli("optimize3d --out " + out2 + args).exit_code == 0);
  for (const char* name : {"convergence_basic.csv", "deformed_basic.obj",
                           "summary.csv"}) {
    CAPTURE(name);
    const std::string a = slurp((fs::path(out1) / name).string());
    CHECK(!a.empty());
    CHECK(a == slurp((fs::path(out2) / name).string()));
  }
}

TEST_CASE("a zero-budget optimize3d reproduces the shipped demo wing") {
  const std::string out = fresh_dir("ffda_cli_passthrough");
  const CliResult result = run_cli(
      "optimize3d --out " + out +
      " optimize3d.strategy=basic optimizer.max_evaluations=0");
  CHECK(result.exit_code == 0);
  const std::string produced = slurp((fs::path(out) / "deformed_basic.obj").string());
  const std::string shipped = slurp(std::string(REPO_DATA_DIR) + "/wing.obj");
  CHECK(!produced.empty());
  CHECK(produced == shipped);
}

TEST_CASE("deform applies a displacement table from disk") {
  const std::string table = (fs::temp_directory_path() / "ffda_cli_disp.csv").string();
  {
    std::ofstream file(table, std::ios::binary);
    file << "i,j,k,dx,dy,dz\n1,0,0,0,0,0.1\n1,0,1,0,0,0.1\n1,1,0,0,0,0.1\n1,1,1,0,0,0.1\n";
  }
  const std::string out = fresh_dir("ffda_cli_deform");
  const CliResult result =
      run_cli("deform --out " + out + " paths.displacements=" + table);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "deformed.obj"));
  CHECK(result.out.find("displaced control points: 4") != std::string::npos);
  fs::remove(table);
}
