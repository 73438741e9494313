/*
 * C interface to the poincare pattern-encoding library.
 *
 * Objects are opaque handles created by the create, load and generate calls
 * and released with the matching free call. Every fallible call returns a pc_status;
 * on failure pc_last_error() holds a message for the calling thread.
 */
#ifndef POINCARE_POINCARE_H
#define POINCARE_POINCARE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef POINCARE_BUILDING_LIBRARY
#    define PC_API __declspec(dllexport)
#  else
#    define PC_API __declspec(dllimport)
#  endif
#else
#  define PC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_INVALID_ARGUMENT = 1,
  PC_ERR_IO = 2,
  PC_ERR_PARSE = 3,
  PC_ERR_NUMERIC = 4,
  PC_ERR_INTERNAL = 5
} pc_status;

typedef struct pc_image pc_image;
typedef struct pc_code pc_code;
typedef struct pc_dictionary pc_dictionary;
typedef struct pc_constellation pc_constellation;

PC_API const char* pc_last_error(void);
PC_API const char* pc_version(void);

/* ---- images ---------------------------------------------------------- */

PC_API pc_status pc_image_load(const char* path, pc_image** out);
/* Copies rows*cols row-major intensities. */
PC_API pc_status pc_image_create(size_t rows, size_t cols, const double* values, pc_image** out);
/* comments: optional array of n_comments strings written as PGM comments. */
PC_API pc_status pc_image_save_pgm(const pc_image* image, const char* path, const char* const* comments,
                                   size_t n_comments);
PC_API size_t pc_image_rows(const pc_image* image);
PC_API size_t pc_image_cols(const pc_image* image);
PC_API const double* pc_image_data(const pc_image* image);
PC_API pc_status pc_image_psnr(const pc_image* a, const pc_image* b, double peak, double* out_db);
PC_API void pc_image_free(pc_image* image);

/* ---- encoding -------------------------------------------------------- */

typedef enum pc_estimator { PC_ESTIMATOR_ENTROPY = 0, PC_ESTIMATOR_LDC = 1 } pc_estimator;
typedef enum pc_window_layout { PC_WINDOW_AUTO = 0, PC_WINDOW_SLIDING = 1, PC_WINDOW_TILED = 2 } pc_window_layout;

typedef struct pc_regularity_config {
  pc_estimator estimator;
  size_t ldc_window;
  pc_window_layout ldc_layout;
  size_t ldc_bins;
  double ldc_threshold_fraction;
  double entropy_keep_fraction;
} pc_regularity_config;

PC_API void pc_regularity_config_default(pc_regularity_config* cfg);

typedef struct pc_point {
  double rho;
  double psi;       /* orientation, [0, pi) */
  double azimuth;   /* 2*psi */
  double elevation; /* theta = 2*chi, [-pi/2, pi/2] */
  double s1, s2, s3;
  int confident;
} pc_point;

PC_API pc_status pc_encode_patch(const double* values, size_t rows, size_t cols, const pc_regularity_config* cfg,
                                 pc_point* out);
PC_API pc_status pc_to_stokes(double rho, double psi, double chi, double out_s[3]);
/* out = {rho, theta, phi}. */
PC_API pc_status pc_from_stokes(const double s[3], double out[3]);

PC_API pc_status pc_constellation_create(pc_constellation** out);
PC_API void pc_constellation_free(pc_constellation* c);
PC_API size_t pc_constellation_size(const pc_constellation* c);
PC_API pc_status pc_constellation_point(const pc_constellation* c, size_t index, pc_point* out);
PC_API const char* pc_constellation_label(const pc_constellation* c, size_t index);
PC_API pc_status pc_constellation_set_provenance(pc_constellation* c, const char* key, const char* value);

/* Encodes every size x size patch at the given stride (row-major) and appends
 * the points with `label`. */
PC_API pc_status pc_encode_image(pc_constellation* c, const pc_image* image, size_t size, size_t stride,
                                 const pc_regularity_config* cfg, const char* label);
/* Draws `samples` patches uniformly from the region (top, left, height, width)
 * with a seeded generator and appends them with `label`. */
PC_API pc_status pc_encode_region(pc_constellation* c, const pc_image* image, size_t top, size_t left, size_t height,
                                  size_t width, size_t size, size_t samples, uint64_t seed,
                                  const pc_regularity_config* cfg, const char* label);
/* Encodes each atom after min-max rescaling to [0, 255]. */
PC_API pc_status pc_encode_dictionary(pc_constellation* c, const pc_dictionary* d, const pc_regularity_config* cfg,
                                      const char* label);
/* Built-in synthetic sets: "eight" (eight 24 x 24 labeled patches) or
 * "rotation" (clean and degraded rotated line patches of the given size, with
 * `seed` driving the noise). */
PC_API pc_status pc_encode_fixture(pc_constellation* c, const char* name, size_t size, uint64_t seed,
                                   const pc_regularity_config* cfg);
PC_API pc_status pc_constellation_write_csv(const pc_constellation* c, const char* path);
PC_API pc_status pc_constellation_write_json(const pc_constellation* c, const char* path);

/* ---- spherical codes ------------------------------------------------- */

PC_API pc_status pc_code_generate(size_t n, uint64_t seed, size_t max_sweeps, double tol, pc_code** out);
PC_API pc_status pc_code_load(const char* path, pc_code** out);
PC_API pc_status pc_code_save(const pc_code* code, const char* path, const char* const* comments, size_t n_comments);
PC_API size_t pc_code_size(const pc_code* code);
PC_API double pc_code_min_distance(const pc_code* code);
PC_API size_t pc_code_sweeps(const pc_code* code);
PC_API pc_status pc_code_point(const pc_code* code, size_t index, double out_xyz[3]);
PC_API void pc_code_free(pc_code* code);

/* ---- dictionaries ---------------------------------------------------- */

/* Reads any constellation inside the unit ball (one "x y z" per line). */
PC_API pc_status pc_dictionary_generate(const char* constellation_path, size_t atom_size, uint64_t seed,
                                        pc_dictionary** out);
PC_API pc_status pc_dictionary_from_code(const pc_code* code, size_t atom_size, uint64_t seed, pc_dictionary** out);
PC_API pc_status pc_dictionary_load(const char* path, pc_dictionary** out);
PC_API pc_status pc_dictionary_union(const pc_dictionary* a, const pc_dictionary* b, pc_dictionary** out);
PC_API pc_status pc_dictionary_set_metadata(pc_dictionary* d, const char* key, const char* value);
PC_API pc_status pc_dictionary_set_source(pc_dictionary* d, const char* source);
PC_API pc_status pc_dictionary_save_json(const pc_dictionary* d, const char* path);
PC_API pc_status pc_dictionary_save_matrix(const pc_dictionary* d, const char* path);
PC_API pc_status pc_dictionary_atom_sheet(const pc_dictionary* d, pc_image** out);
PC_API size_t pc_dictionary_size(const pc_dictionary* d);
PC_API size_t pc_dictionary_atom_size(const pc_dictionary* d);
PC_API uint64_t pc_dictionary_seed(const pc_dictionary* d);
PC_API const double* pc_dictionary_atom(const pc_dictionary* d, size_t index);
PC_API void pc_dictionary_free(pc_dictionary* d);

/* ---- sparse reconstruction ------------------------------------------- */

typedef struct pc_reconstruction_report {
  double psnr_db; /* +inf for exact reconstruction */
  size_t sparsity;
  size_t stride;
  size_t patches;
  double seconds;
} pc_reconstruction_report;

/* out_support/out_coefficients must hold k entries; *out_count receives the
 * number actually selected. */
PC_API pc_status pc_omp(const pc_dictionary* d, const double* signal, size_t length, size_t k, size_t* out_support,
                        double* out_coefficients, size_t* out_count, double* out_residual_energy);
PC_API pc_status pc_reconstruct(const pc_image* image, const pc_dictionary* d, size_t k, size_t stride,
                                unsigned threads, pc_image** out_image, pc_reconstruction_report* report);

#ifdef __cplusplus
}
#endif

#endif /* POINCARE_POINCARE_H */
