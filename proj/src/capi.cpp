#include "ffdadapt.h"

#include <exception>
#include <stdexcept>
#include <string>

#include "bernstein.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "ffd.hpp"
#include "inverse2d.hpp"
#include "mesh.hpp"
#include "objectives.hpp"
#include "runner.hpp"

namespace {

thread_local std::string g_last_error;

ffda_status fail(ffda_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs the body and converts exceptions into status codes.
template <typename Fn>
ffda_status guarded(Fn&& body) {
  try {
    return body();
  } catch (const ffda::ConfigError& e) {
    return fail(FFDA_ERR_CONFIG, e.what());
  } catch (const ffda::NumericError& e) {
    return fail(FFDA_ERR_NUMERIC, e.what());
  } catch (const ffda::IoError& e) {
    return fail(FFDA_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(FFDA_ERR_INVALID, e.what());
  } catch (...) {
    return fail(FFDA_ERR_INVALID, "unknown failure");
  }
}

ffda_status require(bool ok, const char* message) {
  return ok ? FFDA_OK : fail(FFDA_ERR_INVALID, message);
}

}  // namespace

struct ffda_mesh {
  ffda::Mesh value;
};

struct ffda_lattice {
  ffda::FfdLattice value;
};

struct ffda_run {
  ffda::Config config;
  ffda::RunOutput output;
};

extern "C" {

const char* ffda_version(void) {
#ifdef FFDA_VERSION
  return FFDA_VERSION;
#else
  return "0.0.0";
#endif
}

const char* ffda_last_error(void) { return g_last_error.c_str(); }

ffda_status ffda_binomial(int n, int k, uint64_t* out) {
  if (auto bad = require(out != nullptr, "ffda_binomial: out is null")) return bad;
  return guarded([&] {
    *out = ffda::binomial(n, k);
    return FFDA_OK;
  });
}

ffda_status ffda_bernstein_value(int n, int k, double t, double* out) {
  if (auto bad = require(out != nullptr, "ffda_bernstein_value: out is null")) return bad;
  return guarded([&] {
    *out = ffda::bernstein_value(n, k, t);
    return FFDA_OK;
  });
}

ffda_status ffda_uniform_gram(int degree, double* out) {
  if (auto bad = require(out != nullptr, "ffda_uniform_gram: out is null")) return bad;
  return guarded([&] {
    const ffda::Matrix gram = ffda::uniform_gram(degree);
    for (std::size_t i = 0; i < gram.rows(); ++i)
      for (std::size_t j = 0; j < gram.cols(); ++j) out[i * gram.cols() + j] = gram(i, j);
    return FFDA_OK;
  });
}

ffda_status ffda_uniform_gram_condition(int degree, double* out) {
  if (auto bad = require(out != nullptr, "ffda_uniform_gram_condition: out is null"))
    return bad;
  return guarded([&] {
    *out = ffda::condition_number(ffda::uniform_gram(degree));
    return FFDA_OK;
  });
}

ffda_status ffda_penalized_cost(double lift, double drag, double lift0, double drag0,
                                double* out) {
  if (auto bad = require(out != nullptr, "ffda_penalized_cost: out is null")) return bad;
  return guarded([&] {
    *out = ffda::penalized_cost({lift, drag}, {lift0, drag0});
    return FFDA_OK;
  });
}

ffda_status ffda_mesh_load_obj(const char* path, ffda_mesh** out) {
  if (auto bad = require(path && out, "ffda_mesh_load_obj: null argument")) return bad;
  return guarded([&] {
    *out = new ffda_mesh{ffda::load_obj(path)};
    return FFDA_OK;
  });
}

ffda_status ffda_mesh_save_obj(const ffda_mesh* mesh, const char* path) {
  if (auto bad = require(mesh && path, "ffda_mesh_save_obj: null argument")) return bad;
  return guarded([&] {
    ffda::save_obj(mesh->value, path);
    return FFDA_OK;
  });
}

ffda_status ffda_mesh_make_wing(int chord_points, int span_points, ffda_mesh** out) {
  if (auto bad = require(out != nullptr, "ffda_mesh_make_wing: out is null")) return bad;
  return guarded([&] {
    *out = new ffda_mesh{ffda::make_wing_mesh(chord_points, span_points)};
    return FFDA_OK;
  });
}

ffda_status ffda_mesh_vertex_count(const ffda_mesh* mesh, size_t* out) {
  if (auto bad = require(mesh && out, "ffda_mesh_vertex_count: null argument")) return bad;
  *out = mesh->value.vertices.size();
  return FFDA_OK;
}

ffda_status ffda_mesh_triangle_count(const ffda_mesh* mesh, size_t* out) {
  if (auto bad = require(mesh && out, "ffda_mesh_triangle_count: null argument"))
    return bad;
  *out = mesh->value.triangles.size();
  return FFDA_OK;
}

ffda_status ffda_mesh_vertex(const ffda_mesh* mesh, size_t index, double out_xyz[3]) {
  if (auto bad = require(mesh && out_xyz, "ffda_mesh_vertex: null argument")) return bad;
  if (auto bad = require(index < mesh->value.vertices.size(),
                         "ffda_mesh_vertex: index out of range"))
    return bad;
  const ffda::Vec3& v = mesh->value.vertices[index];
  out_xyz[0] = v.x;
  out_xyz[1] = v.y;
  out_xyz[2] = v.z;
  return FFDA_OK;
}

void ffda_mesh_free(ffda_mesh* mesh) { delete mesh; }

ffda_status ffda_lattice_create(const double min_xyz[3], const double max_xyz[3],
                                int degree_i, int degree_j, int degree_k,
                                ffda_lattice** out) {
  if (auto bad = require(min_xyz && max_xyz && out, "ffda_lattice_create: null argument"))
    return bad;
  return guarded([&] {
    const ffda::LatticeBounds bounds{{min_xyz[0], min_xyz[1], min_xyz[2]},
                                     {max_xyz[0], max_xyz[1], max_xyz[2]}};
    *out = new ffda_lattice{
        ffda::FfdLattice(bounds, ffda::LatticeDegrees{degree_i, degree_j, degree_k})};
    return FFDA_OK;
  });
}

ffda_status ffda_lattice_set_displacement(ffda_lattice* lattice, int i, int j, int k,
                                          const double dxyz[3]) {
  if (auto bad =
          require(lattice && dxyz, "ffda_lattice_set_displacement: null argument"))
    return bad;
  return guarded([&] {
    lattice->value.at(i, j, k) = ffda::Vec3{dxyz[0], dxyz[1], dxyz[2]};
    return FFDA_OK;
  });
}

ffda_status ffda_lattice_apply(const ffda_lattice* lattice, const ffda_mesh* mesh,
                               ffda_mesh** out) {
  if (auto bad = require(lattice && mesh && out, "ffda_lattice_apply: null argument"))
    return bad;
  return guarded([&] {
    const ffda::EmbeddedMesh embedded =
        ffda::embed_mesh(mesh->value, lattice->value.bounds);
    *out = new ffda_mesh{ffda::apply_deformation(embedded, lattice->value)};
    return FFDA_OK;
  });
}

void ffda_lattice_free(ffda_lattice* lattice) { delete lattice; }

ffda_status ffda_default_dof_count(int degree_i, int degree_j, int degree_k,
                                   size_t* out) {
  if (auto bad = require(out != nullptr, "ffda_default_dof_count: out is null"))
    return bad;
  return guarded([&] {
    const ffda::LatticeDegrees degrees{degree_i, degree_j, degree_k};
    const ffda::DofMap dof(degrees, ffda::FreezeSpec::defaults(degrees));
    *out = dof.count();
    return FFDA_OK;
  });
}

ffda_status ffda_run_create(const char* config_path, ffda_run** out) {
  if (auto bad = require(config_path && out, "ffda_run_create: null argument")) return bad;
  return guarded([&] {
    *out = new ffda_run{ffda::Config::load(config_path), {}};
    return FFDA_OK;
  });
}

ffda_status ffda_run_create_from_text(const char* config_text, ffda_run** out) {
  if (auto bad = require(config_text && out, "ffda_run_create_from_text: null argument"))
    return bad;
  return guarded([&] {
    *out = new ffda_run{ffda::Config::parse(config_text, "<config text>"), {}};
    return FFDA_OK;
  });
}

ffda_status ffda_run_override(ffda_run* run, const char* assignment) {
  if (auto bad = require(run && assignment, "ffda_run_override: null argument"))
    return bad;
  return guarded([&] {
    run->config.apply_override(assignment);
    return FFDA_OK;
  });
}

ffda_status ffda_run_set(ffda_run* run, const char* key, const char* value) {
  if (auto bad = require(run && key && value, "ffda_run_set: null argument")) return bad;
  return guarded([&] {
    run->config.set(key, value);
    return FFDA_OK;
  });
}

ffda_status ffda_run_execute(ffda_run* run) {
  if (auto bad = require(run != nullptr, "ffda_run_execute: run is null")) return bad;
  return guarded([&] {
    run->output = ffda::execute_run(run->config);
    return FFDA_OK;
  });
}

ffda_status ffda_run_file_count(const ffda_run* run, size_t* out) {
  if (auto bad = require(run && out, "ffda_run_file_count: null argument")) return bad;
  *out = run->output.files.size();
  return FFDA_OK;
}

ffda_status ffda_run_file(const ffda_run* run, size_t index, const char** out) {
  if (auto bad = require(run && out, "ffda_run_file: null argument")) return bad;
  if (auto bad = require(index < run->output.files.size(),
                         "ffda_run_file: index out of range"))
    return bad;
  *out = run->output.files[index].c_str();
  return FFDA_OK;
}

ffda_status ffda_run_note_count(const ffda_run* run, size_t* out) {
  if (auto bad = require(run && out, "ffda_run_note_count: null argument")) return bad;
  *out = run->output.notes.size();
  return FFDA_OK;
}

ffda_status ffda_run_note(const ffda_run* run, size_t index, const char** out) {
  if (auto bad = require(run && out, "ffda_run_note: null argument")) return bad;
  if (auto bad = require(index < run->output.notes.size(),
                         "ffda_run_note: index out of range"))
    return bad;
  *out = run->output.notes[index].c_str();
  return FFDA_OK;
}

void ffda_run_free(ffda_run* run) { delete run; }

}  // extern "C"
