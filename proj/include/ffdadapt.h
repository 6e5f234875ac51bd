/* Public C interface of the ffdadapt shared library.
 *
 * Every function returns an ffda_status; outputs go through pointers that
 * are written only on FFDA_OK. A failing call leaves a human-readable
 * message in ffda_last_error() (thread-local). Objects returned through
 * handle pointers are owned by the caller and released with the matching
 * *_free function; *_free tolerates NULL.
 */
#ifndef FFDADAPT_H
#define FFDADAPT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ffda_status {
  FFDA_OK = 0,
  FFDA_ERR_CONFIG = 1,  /* bad configuration or parameters */
  FFDA_ERR_NUMERIC = 2, /* numerical failure (singular system, divergence) */
  FFDA_ERR_INVALID = 3, /* malformed data or misuse of the API */
  FFDA_ERR_IO = 4       /* file system failure */
} ffda_status;

/* Library version as "major.minor.patch". */
const char* ffda_version(void);

/* Message describing this thread's most recent failure; empty string when
 * no call has failed yet. The pointer stays valid until the next failing
 * call on the same thread. */
const char* ffda_last_error(void);

/* ---- exact basis functions ---- */

/* Binomial coefficient C(n, k); exact in 64 bits for n <= 60. */
ffda_status ffda_binomial(int n, int k, uint64_t* out);

/* Bernstein basis value B_n^k(t) for t in [0, 1]. */
ffda_status ffda_bernstein_value(int n, int k, double t, double* out);

/* ---- 2D shape-inverse analysis ---- */

/* Gram matrix of the uniform-support inverse problem, row-major
 * (degree+1) x (degree+1); out must hold (degree+1)^2 doubles. */
ffda_status ffda_uniform_gram(int degree, double* out);

/* Spectral condition number of the uniform-support Gram matrix. */
ffda_status ffda_uniform_gram_condition(int degree, double* out);

/* Penalized drag-ratio cost: drag/drag0 + weight*max(0, floor - lift/lift0)
 * with the default weight 1e4 and floor 0.999. */
ffda_status ffda_penalized_cost(double lift, double drag, double lift0, double drag0,
                                double* out);

/* ---- triangle meshes ---- */

typedef struct ffda_mesh ffda_mesh;

ffda_status ffda_mesh_load_obj(const char* path, ffda_mesh** out);
ffda_status ffda_mesh_save_obj(const ffda_mesh* mesh, const char* path);

/* Built-in single-sheet demo wing (symmetric profile, unit chord, span 2). */
ffda_status ffda_mesh_make_wing(int chord_points, int span_points, ffda_mesh** out);

ffda_status ffda_mesh_vertex_count(const ffda_mesh* mesh, size_t* out);
ffda_status ffda_mesh_triangle_count(const ffda_mesh* mesh, size_t* out);
ffda_status ffda_mesh_vertex(const ffda_mesh* mesh, size_t index, double out_xyz[3]);

void ffda_mesh_free(ffda_mesh* mesh);

/* ---- free-form deformation ---- */

typedef struct ffda_lattice ffda_lattice;

/* Axis-aligned lattice over [min, max] with Bernstein degrees >= 1 per
 * axis; all control displacements start at zero (identity deformation). */
ffda_status ffda_lattice_create(const double min_xyz[3], const double max_xyz[3],
                                int degree_i, int degree_j, int degree_k,
                                ffda_lattice** out);

ffda_status ffda_lattice_set_displacement(ffda_lattice* lattice, int i, int j, int k,
                                          const double dxyz[3]);

/* Applies the lattice displacement field to every mesh vertex inside the
 * bounds; vertices outside are copied unchanged. */
ffda_status ffda_lattice_apply(const ffda_lattice* lattice, const ffda_mesh* mesh,
                               ffda_mesh** out);

void ffda_lattice_free(ffda_lattice* lattice);

/* Number of design variables of a lattice with the default freeze (first
 * and last i-planes fixed, one movement axis). */
ffda_status ffda_default_dof_count(int degree_i, int degree_j, int degree_k,
                                   size_t* out);

/* ---- configured runs (the CLI surface) ---- */

typedef struct ffda_run ffda_run;

ffda_status ffda_run_create(const char* config_path, ffda_run** out);
ffda_status ffda_run_create_from_text(const char* config_text, ffda_run** out);

/* "section.key=value", identical to a config file line with its section. */
ffda_status ffda_run_override(ffda_run* run, const char* assignment);
ffda_status ffda_run_set(ffda_run* run, const char* key, const char* value);

ffda_status ffda_run_execute(ffda_run* run);

/* Artifacts of the last execute, in write order. Returned strings stay
 * valid until the run handle is freed or executed again. */
ffda_status ffda_run_file_count(const ffda_run* run, size_t* out);
ffda_status ffda_run_file(const ffda_run* run, size_t index, const char** out);

/* Human-readable result lines of the last execute. */
ffda_status ffda_run_note_count(const ffda_run* run, size_t* out);
ffda_status ffda_run_note(const ffda_run* run, size_t index, const char** out);

void ffda_run_free(ffda_run* run);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FFDADAPT_H */
