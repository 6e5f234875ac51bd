#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "errors.hpp"
#include "objectives.hpp"

using namespace ffda;

TEST_CASE("penalized_cost is one at the baseline") {
  const AeroCoefficients baseline{0.319192893, 0.026352608};
  CHECK(penalized_cost(baseline, baseline) == 1.0);
}

TEST_CASE("penalized_cost hand value for a 10 percent lift loss") {
  const AeroCoefficients baseline{0.5, 0.02};
  const AeroCoefficients current{0.45, 0.02};
  CHECK(penalized_cost(current, baseline) == doctest::Approx(991.0).epsilon(1e-9));
}

TEST_CASE("penalized_cost equals the drag ratio while lift stays above the floor") {
  const AeroCoefficients baseline{0.319192893, 0.026352608};
  const AeroCoefficients basic{0.318874966, 0.017450289};
  const AeroCoefficients adaptive{0.318999078, 0.016299483};
  // Both lift ratios sit just above 0.999, so the penalty term is inactive.
  CHECK(basic.lift / baseline.lift > 0.999);
  CHECK(adaptive.lift / baseline.lift > 0.999);
  CHECK(penalized_cost(basic, baseline) ==
        doctest::Approx(basic.drag / baseline.drag).epsilon(1e-15));
  CHECK(penalized_cost(adaptive, baseline) ==
        doctest::Approx(adaptive.drag / baseline.drag).epsilon(1e-15));
}

TEST_CASE("penalized_cost kinks exactly at the lift floor") {
  const AeroCoefficients baseline{1.0, 1.0};
  const PenaltyConfig config;
  CHECK(penalized_cost({0.999, 1.0}, baseline, config) == 1.0);
  const double below = penalized_cost({0.999 - 1e-6, 1.0}, baseline, config);
  CHECK(below == doctest::Approx(1.0 + 1e4 * 1e-6).epsilon(1e-9));
  CHECK(penalized_cost({0.9995, 1.0}, baseline, config) == 1.0);
}

TEST_CASE("penalized_cost is monotone in each coefficient") {
  const AeroCoefficients baseline{1.0, 1.0};
  double previous = penalized_cost({1.0, 0.5}, baseline);
  for (double drag : {0.75, 1.0, 1.5, 2.0}) {
    const double cost = penalized_cost({1.0, drag}, baseline);
    CHECK(cost >= previous);
    previous = cost;
  }
  previous = penalized_cost({0.90, 1.0}, baseline);
  for (double lift : {0.95, 0.97, 0.99, 0.999}) {
    const double cost = penalized_cost({lift, 1.0}, baseline);
    CHECK(cost <= previous);
    previous = cost;
  }
}

TEST_CASE("penalized_cost validates configuration and baselines") {
  const AeroCoefficients good{1.0, 1.0};
  CHECK_THROWS_AS((void)penalized_cost(good, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS((void)penalized_cost(good, {1.0, -1.0}), ConfigError);
  PenaltyConfig bad;
  bad.lift_floor = 1.5;
  CHECK_THROWS_AS((void)penalized_cost(good, good, bad), ConfigError);
  bad.lift_floor = 0.999;
  bad.weight = -1.0;
  CHECK_THROWS_AS((void)penalized_cost(good, good, bad), ConfigError);
}

TEST_CASE("surface_mismatch is zero against the mesh's own sampling") {
  const Mesh wing = make_wing_mesh(9, 5);
  const SurfaceTarget target = SurfaceTarget::from_mesh(wing);
  CHECK(surface_mismatch(wing, target) == 0.0);
}

TEST_CASE("surface_mismatch of a vertical offset is the squared offset") {
  const Mesh wing = make_wing_mesh(7, 4);
  const SurfaceTarget target = SurfaceTarget::from_mesh(wing);
  Mesh shifted = wing;
  for (auto& v : shifted.vertices) v.z += 0.125;
  CHECK(surface_mismatch(shifted, target) == doctest::Approx(0.015625).epsilon(1e-12));
}

TEST_CASE("surface_mismatch averages per-vertex squared distances") {
  Mesh mesh;
  mesh.vertices = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  mesh.tag_all_vertices();
  const SurfaceTarget target = SurfaceTarget::from_mesh(mesh);
  Mesh offset = mesh;
  offset.vertices[1].z += 0.5;
  CHECK(surface_mismatch(offset, target) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("surface_mismatch requires tagged vertices and target points") {
  Mesh mesh;
  mesh.vertices = {{0.0, 0.0, 0.0}};
  SurfaceTarget target;
  target.points = {{0.0, 0.0, 0.0}};
  CHECK_THROWS_AS((void)surface_mismatch(mesh, target), std::invalid_argument);
  mesh.tag_all_vertices();
  SurfaceTarget empty;
  CHECK_THROWS_AS((void)surface_mismatch(mesh, empty), std::invalid_argument);
}

TEST_CASE("surface_mismatch is invariant under horizontal rigid motions") {
  const Mesh wing = make_wing_mesh(6, 4);
  SurfaceTarget target = SurfaceTarget::from_mesh(wing);
  Mesh bent = wing;
  for (std::size_t v = 0; v < bent.vertices.size(); ++v) {
    bent.vertices[v].z += 0.01 * static_cast<double>(v % 5);
  }
  const double reference = surface_mismatch(bent, target);

  const double angle = 0.35;
  const double c = std::cos(angle), s = std::sin(angle);
  auto move = [&](Vec3 p) {
    return Vec3{c * p.x - s * p.y + 2.5, s * p.x + c * p.y - 1.25, p.z};
  };
  Mesh bent_moved = bent;
  for (auto& v : bent_moved.vertices) v = move(v);
  SurfaceTarget target_moved = target;
  for (auto& p : target_moved.points) p = move(p);
  CHECK(surface_mismatch(bent_moved, target_moved) ==
        doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("wing_fit_problem composes deformation and mismatch") {
  const Mesh wing = make_wing_mesh(9, 5);
  LatticeConfig lattice;
  lattice.bounds = {{0.0, 0.0, -0.25}, {1.0, 2.0, 0.25}};
  lattice.degrees = {3, 1, 1};
  lattice.freeze = FreezeSpec::defaults(lattice.degrees);

  const DofMap dof(lattice.degrees, lattice.freeze);
  std::vector<double> star(dof.count());
  for (std::size_t i = 0; i < star.size(); ++i) star[i] = 0.01 * (i % 3) - 0.005;
  const EmbeddedMesh embedded = embed_mesh(wing, lattice.bounds);
  const Mesh deformed = apply_deformation(embedded, dof.decode(star, lattice.bounds));
  const SurfaceTarget target = SurfaceTarget::from_mesh(deformed);

  const auto objective = wing_fit_problem(wing, lattice, target);
  CHECK(objective(star) == 0.0);
  CHECK(objective(std::vector<double>(dof.count(), 0.0)) ==
        doctest::Approx(surface_mismatch(wing, target)).epsilon(1e-14));
}

TEST_CASE("make_wing_mesh builds a tagged structured sheet") {
  const Mesh wing = make_wing_mesh(25, 9);
  CHECK(wing.vertices.size() == 225);
  CHECK(wing.triangles.size() == 2u * 24u * 8u);
  CHECK_NOTHROW(validate_mesh(wing));
  REQUIRE(wing.surface_tag.size() == wing.vertices.size());
  double zmin = 1e9, zmax = -1e9;
  for (const auto& v : wing.vertices) {
    zmin = std::min(zmin, v.z);
    zmax = std::max(zmax, v.z);
    CHECK(v.x >= 0.0);
    CHECK(v.x <= 1.0);
    CHECK(v.y >= 0.0);
    CHECK(v.y <= 2.0);
  }
  CHECK(wing.vertices[0].z == 0.0);  // leading edge row
  CHECK(zmin >= -1e-15);             // trailing edge closes to round-off
  CHECK(zmax > 0.05);                // maximum thickness bulge
  CHECK(zmax < 0.07);
  CHECK_THROWS_AS((void)make_wing_mesh(1, 5), ConfigError);
}

TEST_CASE("csv loaders read targets and coefficient tables") {
  namespace fs = std::filesystem;
  const std::string target_path = (fs::temp_directory_path() / "ffda_target.csv").string();
  {
    std::ofstream out(target_path, std::ios::binary);
    out << "x,y,z\n0,0,0.5\n1,0,0.25\n";
  }
  const SurfaceTarget target = load_surface_target(target_path);
  REQUIRE(target.points.size() == 2);
  CHECK(target.points[1] == Vec3{1.0, 0.0, 0.25});

  const std::string coeff_path = (fs::temp_directory_path() / "ffda_coeff.csv").string();
  {
    std::ofstream out(coeff_path, std::ios::binary);
    out << "label,lift,drag\nreference,0.319192893,0.026352608\nbasic,0.318874966,0.017450289\n";
  }
  const auto rows = load_coefficient_rows(coeff_path);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].label == "reference");
  CHECK(rows[1].coefficients.drag == 0.017450289);

  {
    std::ofstream out(coeff_path, std::ios::binary);
    out << "label,lift,drag\nbad,notanumber,1\n";
  }
  CHECK_THROWS_AS((void)load_coefficient_rows(coeff_path), std::invalid_argument);

  fs::remove(target_path);
  fs::remove(coeff_path);
}
