#include "runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "adaptive_run.hpp"
#include "bernstein.hpp"
#include "csv.hpp"
#include "errors.hpp"

namespace ffda {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

MoveAxis axis_from_name(const std::string& name) {
  if (name == "x") return MoveAxis::x;
  if (name == "y") return MoveAxis::y;
  if (name == "z") return MoveAxis::z;
  throw ConfigError("lattice.axis must be x, y or z, got '" + name + "'");
}

double axis_span(const LatticeBounds& bounds, MoveAxis axis) {
  switch (axis) {
    case MoveAxis::x: return bounds.max.x - bounds.min.x;
    case MoveAxis::y: return bounds.max.y - bounds.min.y;
    case MoveAxis::z: return bounds.max.z - bounds.min.z;
  }
  return bounds.max.z - bounds.min.z;
}

std::vector<FrozenPlane> frozen_from_tokens(const std::string& raw,
                                            const LatticeDegrees& degrees) {
  std::vector<FrozenPlane> planes;
  std::istringstream in(raw);
  std::string token;
  while (in >> token) {
    if (token == "none") continue;
    PlaneAxis axis;
    int limit;
    switch (token[0]) {
      case 'i': axis = PlaneAxis::i; limit = degrees.i; break;
      case 'j': axis = PlaneAxis::j; limit = degrees.j; break;
      case 'k': axis = PlaneAxis::k; limit = degrees.k; break;
      default:
        throw ConfigError("lattice.frozen token must look like i0 or jmax: '" + token +
                          "'");
    }
    const std::string rest = token.substr(1);
    int index;
    if (rest == "max") {
      index = limit;
    } else {
      try {
        std::size_t used = 0;
        index = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("lattice.frozen token must look like i0 or jmax: '" + token +
                          "'");
      }
    }
    planes.push_back({axis, index});
  }
  return planes;
}

int integer_in_range(const Config& config, const std::string& path, long fallback,
                     long lo, long hi) {
  const long value = config.integer(path, fallback);
  if (value < lo || value > hi) {
    throw ConfigError("config value for " + path + " must lie in [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(value);
}

Vec3 triple(const Config& config, const std::string& path) {
  const auto v = config.numbers(path);
  if (v.size() != 3) throw ConfigError("config value for " + path + " needs 3 numbers");
  return Vec3{v[0], v[1], v[2]};
}

}  // namespace

LatticeConfig lattice_from_config(const Config& config, bool builtin_mesh) {
  LatticeConfig lat;
  if (config.has("lattice.min") || config.has("lattice.max")) {
    lat.bounds.min = triple(config, "lattice.min");
    lat.bounds.max = triple(config, "lattice.max");
  } else if (builtin_mesh) {
    lat.bounds = LatticeBounds{{0.0, 0.0, -0.25}, {1.0, 2.0, 0.25}};
  } else {
    throw ConfigError("lattice.min and lattice.max are required for a mesh file");
  }
  validate_bounds(lat.bounds);

  if (config.has("lattice.degrees")) {
    const auto d = config.numbers("lattice.degrees");
    if (d.size() != 3) throw ConfigError("lattice.degrees needs 3 integers");
    for (double value : d) {
      if (value != std::floor(value) || value < 1 || value > kMaxBernsteinDegree) {
        throw ConfigError("lattice.degrees entries must be integers >= 1");
      }
    }
    lat.degrees = {static_cast<int>(d[0]), static_cast<int>(d[1]), static_cast<int>(d[2])};
  } else {
    lat.degrees = {3, 1, 1};
  }

  lat.freeze = FreezeSpec::defaults(lat.degrees);
  lat.freeze.axis = axis_from_name(config.get("lattice.axis", "z"));
  if (config.has("lattice.frozen")) {
    lat.freeze.frozen_planes =
        frozen_from_tokens(config.get("lattice.frozen", ""), lat.degrees);
  }
  return lat;
}

NmConfig optimizer_from_config(const Config& config, double default_initial_step) {
  NmConfig nm;
  nm.reflection = config.number("optimizer.reflection", nm.reflection);
  nm.expansion = config.number("optimizer.expansion", nm.expansion);
  nm.contraction = config.number("optimizer.contraction", nm.contraction);
  nm.shrink = config.number("optimizer.shrink", nm.shrink);
  nm.initial_step = config.number("optimizer.initial_step", default_initial_step);
  nm.max_evaluations = config.integer("optimizer.max_evaluations", nm.max_evaluations);
  nm.simplex_size_tol = config.number("optimizer.simplex_size_tol", nm.simplex_size_tol);
  nm.value_tol = config.number("optimizer.value_tol", nm.value_tol);
  if (nm.max_evaluations < 0) throw ConfigError("optimizer.max_evaluations must be >= 0");
  if (!(nm.initial_step != 0.0) || !std::isfinite(nm.initial_step)) {
    throw ConfigError("optimizer.initial_step must be finite and non-zero");
  }
  return nm;
}

TargetShape2D target2d_from_spec(const std::string& spec, double ramp_steepness) {
  if (spec == "builtin:ramp") {
    const int count = 2001;
    std::vector<double> xs(count), ys(count);
    for (int i = 0; i < count; ++i) {
      const double x = static_cast<double>(i) / (count - 1);
      xs[i] = x;
      ys[i] = 0.5 * (1.0 + std::tanh(ramp_steepness * (x - 0.5)));
    }
    return TargetShape2D::from_samples(std::move(xs), std::move(ys));
  }
  if (spec == "builtin:line") {
    return TargetShape2D::from_curve(BezierCurve2D{{0.0, 1.0}, {0.0, 1.0}});
  }
  if (spec == "builtin:constant") {
    return TargetShape2D::from_curve(BezierCurve2D{{0.0, 1.0}, {0.5, 0.5}});
  }
  if (starts_with(spec, "samples:")) {
    const std::string path = spec.substr(8);
    const CsvTable table = read_csv(path);
    const std::size_t cx = table.column("x", path);
    const std::size_t cy = table.column("y", path);
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const std::string context = path + ":row " + std::to_string(r + 1);
      xs.push_back(parse_number(table.rows[r][cx], context));
      ys.push_back(parse_number(table.rows[r][cy], context));
    }
    return TargetShape2D::from_samples(std::move(xs), std::move(ys));
  }
  if (starts_with(spec, "bezier:")) {
    const std::string path = spec.substr(7);
    const CsvTable table = read_csv(path);
    const std::size_t cx = table.column("x", path);
    const std::size_t cy = table.column("y", path);
    BezierCurve2D curve;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const std::string context = path + ":row " + std::to_string(r + 1);
      curve.support.push_back(parse_number(table.rows[r][cx], context));
      curve.design.push_back(parse_number(table.rows[r][cy], context));
    }
    return TargetShape2D::from_curve(std::move(curve));
  }
  throw ConfigError(
      "target spec must be builtin:ramp, builtin:line, builtin:constant, "
      "samples:<csv> or bezier:<csv>, got '" +
      spec + "'");
}

Mesh mesh_from_config(const Config& config) {
  const std::string spec = config.get("paths.mesh", "builtin:wing");
  Mesh mesh;
  if (spec == "builtin:wing") {
    mesh = make_wing_mesh(integer_in_range(config, "wing.chord_points", 25, 2, 10000),
                          integer_in_range(config, "wing.span_points", 9, 2, 10000));
  } else if (starts_with(spec, "builtin:")) {
    throw ConfigError("unknown builtin mesh '" + spec + "'");
  } else {
    mesh = load_obj(spec);
    if (mesh.surface_tag.empty()) mesh.tag_all_vertices();
  }
  return mesh;
}

SurfaceTarget make_seeded_target(const EmbeddedMesh& embedded, const DofMap& dof,
                                 double amplitude, long seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::vector<double> design(dof.count());
  Mesh shape = embedded.reference;
  for (int stage = 0; stage < 2; ++stage) {
    const EmbeddedMesh base = embed_mesh(shape, embedded.bounds);
    const double flip = unit_double(rng) < 0.5 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < design.size(); ++c) {
      const auto& control = dof.free_controls()[c];
      // Stage one twists the shape across the j direction; stage two applies
      // a k-graded twist to the re-embedded result. The product of the two
      // fields carries quadratic j content, which a degree-1 lattice cannot
      // express in one deformation, so the composed shape sits a measurable
      // distance from everything a single field can reach.
      double sign = control[1] % 2 == 0 ? -1.0 : 1.0;
      if (stage == 1 && control[2] % 2 == 0) sign = -sign;
      design[c] = amplitude * (flip * sign + 0.3 * (2.0 * unit_double(rng) - 1.0));
    }
    shape = apply_deformation(base, dof.decode(design, embedded.bounds));
  }
  return SurfaceTarget::from_mesh(shape, dof.axis());
}

namespace {

void write_history_csv(const std::string& path, const RunHistory& history,
                       RunOutput& output) {
  CsvWriter csv(path, {"evaluations", "iterations", "best_cost", "event"});
  for (const RunRecord& rec : history.records) {
    csv.row({std::to_string(rec.evaluations), std::to_string(rec.iterations),
             format_number(rec.best_value), run_event_name(rec.event)});
  }
  csv.close();
  output.files.push_back(path);
}

void run_analyze2d(const Config& config, const std::string& out_dir, long seed,
                   RunOutput& output) {
  const int degree_min = integer_in_range(config, "analyze2d.degree_min", 1, 1, 60);
  const int degree_max =
      integer_in_range(config, "analyze2d.degree_max", 12, degree_min, 60);
  const int spectrum_degree =
      integer_in_range(config, "analyze2d.spectrum_degree", 12, 1, 60);
  const int tikhonov_degree =
      integer_in_range(config, "analyze2d.tikhonov_degree", 10, 1, 60);
  const double rho_min = config.number("analyze2d.rho_min", 1e-12);
  const double rho_max = config.number("analyze2d.rho_max", 1e2);
  const int rho_count = integer_in_range(config, "analyze2d.rho_count", 15, 2, 100000);
  if (!(rho_min > 0.0) || !(rho_max >= rho_min)) {
    throw ConfigError("analyze2d rho grid must satisfy 0 < rho_min <= rho_max");
  }

  {
    const std::string path = join(out_dir, "condition.csv");
    CsvWriter csv(path, {"degree", "condition"});
    for (int n = degree_min; n <= degree_max; ++n) {
      csv.row({std::to_string(n), format_number(condition_number(uniform_gram(n)))});
    }
    csv.close();
    output.files.push_back(path);
  }

  {
    const std::string path = join(out_dir, "spectrum.csv");
    CsvWriter csv(path, {"index", "singular_value"});
    const auto sigma = singular_values(uniform_gram(spectrum_degree));
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      csv.row({std::to_string(i), format_number(sigma[i])});
    }
    csv.close();
    output.files.push_back(path);
  }

  {
    const std::string path = join(out_dir, "tikhonov.csv");
    CsvWriter csv(path, {"rho", "residual_norm", "solution_norm"});
    GramSystem system;
    system.degree = tikhonov_degree;
    system.support = uniform_support(tikhonov_degree);
    system.matrix = uniform_gram(tikhonov_degree);
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    system.load.resize(tikhonov_degree + 1);
    for (double& value : system.load) value = 2.0 * unit_double(rng) - 1.0;
    for (int i = 0; i < rho_count; ++i) {
      const double f = rho_count == 1 ? 0.0
                                      : static_cast<double>(i) / (rho_count - 1);
      const double rho = std::exp(std::log(rho_min) +
                                  f * (std::log(rho_max) - std::log(rho_min)));
      const auto y = tikhonov_solve(system, TikhonovConfig{rho});
      std::vector<double> residual = matvec(system.matrix, y);
      for (std::size_t r = 0; r < residual.size(); ++r) residual[r] -= system.load[r];
      csv.row({format_number(rho), format_number(norm2(residual)),
               format_number(norm2(y))});
    }
    csv.close();
    output.files.push_back(path);
  }
  output.notes.push_back("degrees " + std::to_string(degree_min) + ".." +
                         std::to_string(degree_max) + ", spectrum degree " +
                         std::to_string(spectrum_degree));
}

void run_reconstruct2d(const Config& config, const std::string& out_dir,
                       RunOutput& output) {
  const int degree = integer_in_range(config, "reconstruct2d.degree", 9, 1, 60);
  TwoPhaseConfig two_phase;
  two_phase.cycles = integer_in_range(config, "reconstruct2d.cycles", 3, 1, 1000);
  two_phase.rho = config.number("reconstruct2d.rho", 0.0);
  two_phase.adapt.fit_tolerance_factor =
      config.number("reconstruct2d.fit_tolerance_factor",
                    two_phase.adapt.fit_tolerance_factor);
  two_phase.adapt.min_gap = config.number("reconstruct2d.min_gap", two_phase.adapt.min_gap);
  two_phase.adapt.search_evaluations =
      config.integer("reconstruct2d.search_evaluations", 0);
  two_phase.adapt.search_step =
      config.number("reconstruct2d.search_step", two_phase.adapt.search_step);

  const TargetShape2D target =
      target2d_from_spec(config.get("paths.target", "builtin:ramp"),
                         config.number("reconstruct2d.ramp_steepness", 25.0));
  const auto records = two_phase_reconstruct(target, degree, two_phase);

  {
    const std::string path = join(out_dir, "history.csv");
    CsvWriter csv(path, {"cycle", "phase", "fit_error", "tv", "adapt_residual",
                         "adapt_tolerance"});
    for (const auto& rec : records) {
      csv.row({std::to_string(rec.cycle),
               rec.phase == ReconstructPhase::solve ? "solve" : "adapt",
               format_number(rec.fit_error), format_number(rec.tv),
               format_number(rec.adapt_residual), format_number(rec.adapt_tolerance)});
    }
    csv.close();
    output.files.push_back(path);
  }
  {
    const std::string path = join(out_dir, "final_curve.csv");
    CsvWriter csv(path, {"index", "x", "y"});
    const auto& last = records.back();
    for (std::size_t i = 0; i < last.support.size(); ++i) {
      csv.row({std::to_string(i), format_number(last.support[i]),
               format_number(last.design[i])});
    }
    csv.close();
    output.files.push_back(path);
  }
  output.notes.push_back("final fit error = " + format_number(records.back().fit_error));
  output.notes.push_back("final tv = " + format_number(records.back().tv));
}

void run_optimize3d(const Config& config, const std::string& out_dir, long seed,
                    RunOutput& output) {
  const std::string strategy = config.get("optimize3d.strategy", "both");
  if (strategy != "both" && strategy != "basic" && strategy != "adaptive") {
    throw ConfigError("optimize3d.strategy must be basic, adaptive or both");
  }
  const Mesh mesh = mesh_from_config(config);
  const bool builtin_mesh =
      starts_with(config.get("paths.mesh", "builtin:wing"), "builtin:");
  const LatticeConfig lat = lattice_from_config(config, builtin_mesh);
  const DofMap dof(lat.degrees, lat.freeze);
  const NmConfig optimizer =
      optimizer_from_config(config, 0.05 * axis_span(lat.bounds, lat.freeze.axis));
  const EmbeddedMesh embedded = embed_mesh(mesh, lat.bounds);

  SurfaceTarget target;
  const std::string target_spec = config.get("paths.target", "auto");
  if (target_spec == "auto") {
    target = make_seeded_target(embedded, dof,
                                config.number("optimize3d.amplitude", 0.12), seed);
  } else {
    target = load_surface_target(target_spec);
    target.vertical = dof.axis();
  }
  auto objective = [&target](const Mesh& m) { return surface_mismatch(m, target); };

  output.notes.push_back("dof = " + std::to_string(dof.count()));

  const std::string summary_path = join(out_dir, "summary.csv");
  CsvWriter summary(summary_path, {"strategy", "dof", "final_cost", "evaluations",
                                   "iterations", "adaptions"});

  auto run_strategy = [&](const std::string& name, const AdaptionSchedule& schedule) {
    const std::string conv_path = join(out_dir, "convergence_" + name + ".csv");
    const std::string obj_path = join(out_dir, "deformed_" + name + ".obj");
    if (optimizer.max_evaluations == 0) {
      // Nothing to optimize: the output shape is the input shape.
      const double cost = objective(mesh);
      RunHistory history;
      history.records.push_back({0, 0, cost, RunEvent::step});
      write_history_csv(conv_path, history, output);
      save_obj(mesh, obj_path);
      output.files.push_back(obj_path);
      summary.row({name, std::to_string(dof.count()), format_number(cost), "0", "0",
                   "0"});
      output.notes.push_back(name + " final cost = " + format_number(cost));
      return;
    }
    const AdaptiveResult result =
        run_with_adaption(FfdProblem{embedded, dof, objective}, schedule, optimizer);
    write_history_csv(conv_path, result.history, output);
    save_obj(result.final_mesh, obj_path);
    output.files.push_back(obj_path);
    summary.row({name, std::to_string(dof.count()), format_number(result.final_value),
                 std::to_string(result.evaluations), std::to_string(result.iterations),
                 std::to_string(result.adaptions.size())});
    output.notes.push_back(name + " final cost = " + format_number(result.final_value));
  };

  AdaptionSchedule adaptive_schedule;
  adaptive_schedule.period = config.integer("schedule.period", 100);
  adaptive_schedule.max_cycles =
      integer_in_range(config, "schedule.max_cycles", 6, 1, 10000);

  if (strategy == "basic" || strategy == "both") {
    run_strategy("basic", AdaptionSchedule{adaptive_schedule.period, 1});
  }
  if (strategy == "adaptive" || strategy == "both") {
    run_strategy("adaptive", adaptive_schedule);
  }
  summary.close();
  output.files.push_back(summary_path);
}

void run_deform(const Config& config, const std::string& out_dir, RunOutput& output) {
  const Mesh mesh = mesh_from_config(config);
  const bool builtin_mesh =
      starts_with(config.get("paths.mesh", "builtin:wing"), "builtin:");
  const LatticeConfig lat = lattice_from_config(config, builtin_mesh);

  const std::string table_path = config.require("paths.displacements");
  const CsvTable table = read_csv(table_path);
  const std::size_t ci = table.column("i", table_path);
  const std::size_t cj = table.column("j", table_path);
  const std::size_t ck = table.column("k", table_path);
  const std::size_t cdx = table.column("dx", table_path);
  const std::size_t cdy = table.column("dy", table_path);
  const std::size_t cdz = table.column("dz", table_path);

  FfdLattice lattice(lat.bounds, lat.degrees);
  std::vector<std::uint8_t> seen(lattice.displacements.size(), 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = table_path + ":row " + std::to_string(r + 1);
    auto index_of = [&](std::size_t col, int limit, const char* name) {
      const double value = parse_number(row[col], context);
      if (value != std::floor(value) || value < 0 || value > limit) {
        throw ConfigError(context + ": control index " + name +
                          " out of range for the configured degrees");
      }
      return static_cast<int>(value);
    };
    const int i = index_of(ci, lat.degrees.i, "i");
    const int j = index_of(cj, lat.degrees.j, "j");
    const int k = index_of(ck, lat.degrees.k, "k");
    const std::size_t flat = lattice.index(i, j, k);
    if (seen[flat]) {
      throw ConfigError(context + ": duplicate control point entry");
    }
    seen[flat] = 1;
    lattice.displacements[flat] =
        Vec3{parse_number(row[cdx], context), parse_number(row[cdy], context),
             parse_number(row[cdz], context)};
  }

  const Mesh deformed = apply_deformation(embed_mesh(mesh, lat.bounds), lattice);
  const std::string path = join(out_dir, "deformed.obj");
  save_obj(deformed, path);
  output.files.push_back(path);
  output.notes.push_back("displaced control points: " + std::to_string(table.rows.size()));
}

}  // namespace

RunOutput execute_run(const Config& config_in) {
  Config config = config_in;
  const std::string mode = config.require("run.mode");
  const long seed = config.integer("run.seed", 0);
  const std::string out_dir = config.get("run.out", "out");
  config.set("run.seed", std::to_string(seed));
  config.set("run.out", out_dir);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  RunOutput output;
  if (mode == "analyze2d") {
    run_analyze2d(config, out_dir, seed, output);
  } else if (mode == "reconstruct2d") {
    run_reconstruct2d(config, out_dir, output);
  } else if (mode == "optimize3d") {
    run_optimize3d(config, out_dir, seed, output);
  } else if (mode == "deform") {
    run_deform(config, out_dir, output);
  } else {
    throw ConfigError("run.mode must be analyze2d, reconstruct2d, optimize3d or deform");
  }

  const std::string echo_path = join(out_dir, "config_echo.ini");
  std::ofstream echo(echo_path, std::ios::binary);
  if (!echo) throw IoError("cannot open config echo for writing: " + echo_path);
  echo << config.echo();
  echo.flush();
  if (!echo) throw IoError("failed while writing config echo: " + echo_path);
  output.files.push_back(echo_path);
  return output;
}

}  // namespace ffda
