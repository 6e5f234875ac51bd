#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "ffdadapt.h"

namespace fs = std::filesystem;

namespace {

std::string temp_name(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("version and initial error state") {
  REQUIRE(ffda_version() != nullptr);
  CHECK(std::string(ffda_version()) == "0.1.0");
  REQUIRE(ffda_last_error() != nullptr);
}

TEST_CASE("binomial and bernstein evaluate and report misuse") {
  uint64_t value = 0;
  REQUIRE(ffda_binomial(60, 30, &value) == FFDA_OK);
  CHECK(value == 118264581564861424ULL);
  CHECK(ffda_binomial(-1, 0, &value) == FFDA_ERR_INVALID);
  CHECK(ffda_binomial(61, 2, &value) == FFDA_ERR_INVALID);
  CHECK(ffda_binomial(4, 2, nullptr) == FFDA_ERR_INVALID);
  CHECK(std::strlen(ffda_last_error()) > 0);

  double b = 0.0;
  REQUIRE(ffda_bernstein_value(2, 1, 0.5, &b) == FFDA_OK);
  CHECK(b == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ffda_bernstein_value(2, 1, 1.5, &b) == FFDA_ERR_INVALID);
  CHECK(ffda_bernstein_value(2, 5, 0.5, &b) == FFDA_ERR_INVALID);
}

TEST_CASE("uniform gram buffer and condition number") {
  double gram[4] = {0, 0, 0, 0};
  REQUIRE(ffda_uniform_gram(1, gram) == FFDA_OK);
  CHECK(gram[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(gram[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(gram[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(gram[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  double condition = 0.0;
  REQUIRE(ffda_uniform_gram_condition(1, &condition) == FFDA_OK);
  CHECK(condition == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ffda_uniform_gram_condition(0, &condition) == FFDA_ERR_INVALID);
}

TEST_CASE("penalized cost and its config errors") {
  double cost = -1.0;
  REQUIRE(ffda_penalized_cost(0.5, 0.02, 0.5, 0.02, &cost) == FFDA_OK);
  CHECK(cost == 1.0);
  REQUIRE(ffda_penalized_cost(0.45, 0.02, 0.5, 0.02, &cost) == FFDA_OK);
  CHECK(cost == doctest::Approx(991.0).epsilon(1e-9));
  CHECK(ffda_penalized_cost(0.5, 0.02, 0.0, 0.02, &cost) == FFDA_ERR_CONFIG);
  CHECK(std::strlen(ffda_last_error()) > 0);
}

TEST_CASE("mesh round trip through the C surface") {
  ffda_mesh* wing = nullptr;
  REQUIRE(ffda_mesh_make_wing(9, 5, &wing) == FFDA_OK);
  size_t vertices = 0, triangles = 0;
  REQUIRE(ffda_mesh_vertex_count(wing, &vertices) == FFDA_OK);
  REQUIRE(ffda_mesh_triangle_count(wing, &triangles) == FFDA_OK);
  CHECK(vertices == 45);
  CHECK(triangles == 64);

  double xyz[3] = {-1, -1, -1};
  REQUIRE(ffda_mesh_vertex(wing, 0, xyz) == FFDA_OK);
  CHECK(xyz[0] == 0.0);
  CHECK(xyz[1] == 0.0);
  CHECK(xyz[2] == 0.0);
  CHECK(ffda_mesh_vertex(wing, vertices, xyz) == FFDA_ERR_INVALID);

  const std::string path = temp_name("ffda_capi_wing.obj");
  REQUIRE(ffda_mesh_save_obj(wing, path.c_str()) == FFDA_OK);
  ffda_mesh* reloaded = nullptr;
  REQUIRE(ffda_mesh_load_obj(path.c_str(), &reloaded) == FFDA_OK);
  size_t reloaded_vertices = 0;
  REQUIRE(ffda_mesh_vertex_count(reloaded, &reloaded_vertices) == FFDA_OK);
  CHECK(reloaded_vertices == vertices);
  ffda_mesh_free(reloaded);
  ffda_mesh_free(wing);
  fs::remove(path);

  ffda_mesh* missing = nullptr;
  CHECK(ffda_mesh_load_obj(temp_name("ffda_absent.obj").c_str(), &missing) ==
        FFDA_ERR_IO);
  CHECK(ffda_mesh_make_wing(1, 1, &missing) == FFDA_ERR_CONFIG);
  CHECK(ffda_mesh_vertex_count(nullptr, &vertices) == FFDA_ERR_INVALID);
}

TEST_CASE("lattice deformation through the C surface") {
  const double lo[3] = {0.0, 0.0, 0.0};
  const double hi[3] = {1.0, 1.0, 1.0};
  ffda_lattice* lattice = nullptr;
  REQUIRE(ffda_lattice_create(lo, hi, 1, 1, 1, &lattice) == FFDA_OK);

  const double shift[3] = {0.0, 0.0, 0.5};
  for (int i = 0; i <= 1; ++i) {
    for (int j = 0; j <= 1; ++j) {
      for (int k = 0; k <= 1; ++k) {
        REQUIRE(ffda_lattice_set_displacement(lattice, i, j, k, shift) == FFDA_OK);
      }
    }
  }
  CHECK(ffda_lattice_set_displacement(lattice, 2, 0, 0, shift) == FFDA_ERR_INVALID);

  const std::string path = temp_name("ffda_capi_tri.obj");
  {
    std::ofstream out(path, std::ios::binary);
    out << "v 0.25 0.25 0.25\nv 0.75 0.25 0.25\nv 0.25 0.75 0.25\nf 1 2 3\n";
  }
  ffda_mesh* mesh = nullptr;
  REQUIRE(ffda_mesh_load_obj(path.c_str(), &mesh) == FFDA_OK);
  ffda_mesh* moved = nullptr;
  REQUIRE(ffda_lattice_apply(lattice, mesh, &moved) == FFDA_OK);
  double xyz[3];
  REQUIRE(ffda_mesh_vertex(moved, 0, xyz) == FFDA_OK);
  CHECK(xyz[2] == doctest::Approx(0.75).epsilon(1e-14));
  ffda_mesh_free(moved);
  ffda_mesh_free(mesh);
  ffda_lattice_free(lattice);
  fs::remove(path);

  ffda_lattice* bad = nullptr;
  const double flipped[3] = {2.0, 0.0, 0.0};
  CHECK(ffda_lattice_create(flipped, hi, 1, 1, 1, &bad) == FFDA_ERR_CONFIG);
  CHECK(ffda_lattice_create(lo, hi, 0, 1, 1, &bad) == FFDA_ERR_CONFIG);
}

TEST_CASE("default dof counts match the frozen-plane rule") {
  size_t dof = 0;
  REQUIRE(ffda_default_dof_count(3, 1, 1, &dof) == FFDA_OK);
  CHECK(dof == 8);
  REQUIRE(ffda_default_dof_count(6, 1, 1, &dof) == FFDA_OK);
  CHECK(dof == 20);
  REQUIRE(ffda_default_dof_count(9, 1, 1, &dof) == FFDA_OK);
  CHECK(dof == 32);
  CHECK(ffda_default_dof_count(0, 1, 1, &dof) == FFDA_ERR_CONFIG);
}

TEST_CASE("configured runs execute through the C surface") {
  const std::string out_dir = temp_name("ffda_capi_run");
  fs::remove_all(out_dir);

  ffda_run* run = nullptr;
  REQUIRE(ffda_run_create_from_text("[analyze2d]\ndegree_max = 4\nrho_count = 3\n",
                                    &run) == FFDA_OK);
  REQUIRE(ffda_run_set(run, "run.mode", "analyze2d") == FFDA_OK);
  REQUIRE(ffda_run_set(run, "run.out", out_dir.c_str()) == FFDA_OK);
  REQUIRE(ffda_run_override(run, "analyze2d.tikhonov_degree=4") == FFDA_OK);
  CHECK(ffda_run_override(run, "nonsense") == FFDA_ERR_CONFIG);

  REQUIRE(ffda_run_execute(run) == FFDA_OK);
  size_t files = 0;
  REQUIRE(ffda_run_file_count(run, &files) == FFDA_OK);
  CHECK(files == 4);
  for (size_t i = 0; i < files; ++i) {
    const char* path = nullptr;
    REQUIRE(ffda_run_file(run, i, &path) == FFDA_OK);
    CHECK(fs::exists(path));
  }
  const char* missing = nullptr;
  CHECK(ffda_run_file(run, files, &missing) == FFDA_ERR_INVALID);

  size_t notes = 0;
  REQUIRE(ffda_run_note_count(run, &notes) == FFDA_OK);
  for (size_t i = 0; i < notes; ++i) {
    const char* note = nullptr;
    REQUIRE(ffda_run_note(run, i, &note) == FFDA_OK);
    CHECK(std::strlen(note) > 0);
  }

  REQUIRE(ffda_run_set(run, "run.mode", "warp") == FFDA_OK);
  CHECK(ffda_run_execute(run) == FFDA_ERR_CONFIG);
  CHECK(std::string(ffda_last_error()).find("mode") != std::string::npos);
  ffda_run_free(run);

  ffda_run* from_file = nullptr;
  CHECK(ffda_run_create(temp_name("ffda_absent.ini").c_str(), &from_file) ==
        FFDA_ERR_CONFIG);
  CHECK(ffda_run_create_from_text("[run\n", &from_file) == FFDA_ERR_CONFIG);
  CHECK(ffda_run_execute(nullptr) == FFDA_ERR_INVALID);
}
