// Command-line front end for the ffdadapt shared library. Everything goes
// through the public C interface; exit code 0 on success, 1 on
// configuration/input problems, 2 on numerical failure.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffdadapt.h"

namespace {

int exit_code_for(ffda_status status) {
  if (status == FFDA_OK) return 0;
  if (status == FFDA_ERR_NUMERIC) return 2;
  return 1;
}

int report(ffda_status status) {
  std::fprintf(stderr, "error: %s\n", ffda_last_error());
  return exit_code_for(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape-optimization toolkit: adaptive free-form deformation, "
               "2D shape-inverse analysis, and simplex optimization"};
  app.set_version_flag("--version", ffda_version());

  std::string mode;
  app.add_option("mode", mode, "analyze2d | reconstruct2d | optimize3d | deform")
      ->required();
  std::string config_path;
  app.add_option("--config", config_path, "INI-style run configuration file");
  std::string out_dir;
  app.add_option("--out", out_dir, "output directory (default: out)");
  std::string seed;
  app.add_option("--seed", seed, "seed for randomized target generation")
      ->check(CLI::Number);
  std::vector<std::string> overrides;
  app.add_option("overrides", overrides, "config overrides as section.key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  ffda_run* run = nullptr;
  ffda_status status = config_path.empty()
                           ? ffda_run_create_from_text("", &run)
                           : ffda_run_create(config_path.c_str(), &run);
  if (status != FFDA_OK) return report(status);

  status = ffda_run_set(run, "run.mode", mode.c_str());
  if (status == FFDA_OK && !out_dir.empty()) {
    status = ffda_run_set(run, "run.out", out_dir.c_str());
  }
  if (status == FFDA_OK && !seed.empty()) {
    status = ffda_run_set(run, "run.seed", seed.c_str());
  }
  for (std::size_t i = 0; status == FFDA_OK && i < overrides.size(); ++i) {
    status = ffda_run_override(run, overrides[i].c_str());
  }
  if (status == FFDA_OK) status = ffda_run_execute(run);

  if (status != FFDA_OK) {
    const int code = report(status);
    ffda_run_free(run);
    return code;
  }

  size_t count = 0;
  ffda_run_note_count(run, &count);
  for (size_t i = 0; i < count; ++i) {
    const char* note = nullptr;
    if (ffda_run_note(run, i, &note) == FFDA_OK) std::printf("%s\n", note);
  }
  ffda_run_file_count(run, &count);
  for (size_t i = 0; i < count; ++i) {
    const char* file = nullptr;
    if (ffda_run_file(run, i, &file) == FFDA_OK) std::printf("wrote %s\n", file);
  }
  ffda_run_free(run);
  return 0;
}
