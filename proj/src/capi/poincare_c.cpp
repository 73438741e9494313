#include "poincare/poincare.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "poincare/dictionary.hpp"
#include "poincare/encoder.hpp"
#include "poincare/error.hpp"
#include "poincare/fixtures.hpp"
#include "poincare/image_io.hpp"
#include "poincare/omp.hpp"
#include "poincare/random.hpp"
#include "poincare/spherical_code.hpp"

struct pc_image {
  poincare::Image image;
};
struct pc_code {
  poincare::SphericalCode code;
};
struct pc_dictionary {
  poincare::Dictionary dict;
};
struct pc_constellation {
  poincare::Constellation c;
};

namespace {

using poincare::ErrorKind;

thread_local std::string g_last_error;

pc_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return PC_ERR_INVALID_ARGUMENT;
    case ErrorKind::Io: return PC_ERR_IO;
    case ErrorKind::Parse: return PC_ERR_PARSE;
    case ErrorKind::Numeric: return PC_ERR_NUMERIC;
  }
  return PC_ERR_INTERNAL;
}

template <class F>
pc_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PC_OK;
  } catch (const poincare::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return PC_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) poincare::fail(ErrorKind::InvalidArgument, std::string(what) + " is null");
}

poincare::RegularityConfig to_cpp(const pc_regularity_config* cfg) {
  poincare::RegularityConfig out;
  if (!cfg) return out;
  switch (cfg->estimator) {
    case PC_ESTIMATOR_ENTROPY: out.estimator = poincare::Estimator::Entropy; break;
    case PC_ESTIMATOR_LDC: out.estimator = poincare::Estimator::Ldc; break;
    default: poincare::fail(ErrorKind::InvalidArgument, "unknown regularity estimator");
  }
  switch (cfg->ldc_layout) {
    case PC_WINDOW_AUTO: out.ldc_layout = poincare::WindowLayout::Auto; break;
    case PC_WINDOW_SLIDING: out.ldc_layout = poincare::WindowLayout::Sliding; break;
    case PC_WINDOW_TILED: out.ldc_layout = poincare::WindowLayout::Tiled; break;
    default: poincare::fail(ErrorKind::InvalidArgument, "unknown window layout");
  }
  out.ldc_window = cfg->ldc_window;
  out.ldc_bins = cfg->ldc_bins;
  out.ldc_threshold_fraction = cfg->ldc_threshold_fraction;
  out.entropy_keep_fraction = cfg->entropy_keep_fraction;
  out.validate();
  return out;
}

pc_point to_c(const poincare::EncodedPoint& p) {
  return {p.rho, p.psi, p.azimuth, p.elevation, p.stokes.s1, p.stokes.s2, p.stokes.s3, p.orientation_confident ? 1 : 0};
}

std::vector<std::string> comment_list(const char* const* comments, size_t n) {
  std::vector<std::string> out;
  if (n) need(comments, "comments");
  for (size_t k = 0; k < n; ++k) out.emplace_back(comments[k] ? comments[k] : "");
  return out;
}

std::ofstream open_out(const char* path) {
  need(path, "path");
  std::ofstream out(path);
  if (!out) poincare::fail(ErrorKind::Io, std::string("cannot write '") + path + "'");
  return out;
}

void finish(std::ofstream& out, const char* path) {
  out.flush();
  if (!out) poincare::fail(ErrorKind::Io, std::string("failed writing '") + path + "'");
}

void append(pc_constellation* c, poincare::EncodedPoint p, const char* label) {
  p.label = label ? label : "";
  c->c.points.push_back(std::move(p));
}

}  // namespace

extern "C" {

const char* pc_last_error(void) { return g_last_error.c_str(); }

const char* pc_version(void) { return "0.1.0"; }

// ---- images

pc_status pc_image_load(const char* path, pc_image** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new pc_image{poincare::load_image(path)};
  });
}

pc_status pc_image_create(size_t rows, size_t cols, const double* values, pc_image** out) {
  return guard([&] {
    need(values, "values");
    need(out, "out");
    poincare::require(rows > 0 && cols > 0, "image dimensions must be positive");
    *out = new pc_image{poincare::Image(rows, cols, std::vector<double>(values, values + rows * cols))};
  });
}

pc_status pc_image_save_pgm(const pc_image* image, const char* path, const char* const* comments, size_t n_comments) {
  return guard([&] {
    need(image, "image");
    need(path, "path");
    poincare::write_pgm(path, image->image, comment_list(comments, n_comments));
  });
}

size_t pc_image_rows(const pc_image* image) { return image ? image->image.rows() : 0; }
size_t pc_image_cols(const pc_image* image) { return image ? image->image.cols() : 0; }
const double* pc_image_data(const pc_image* image) { return image ? image->image.values().data() : nullptr; }

pc_status pc_image_psnr(const pc_image* a, const pc_image* b, double peak, double* out_db) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out_db, "out_db");
    *out_db = poincare::psnr(a->image, b->image, peak);
  });
}

void pc_image_free(pc_image* image) { delete image; }

// ---- encoding

void pc_regularity_config_default(pc_regularity_config* cfg) {
  if (!cfg) return;
  const poincare::RegularityConfig d;
  cfg->estimator = d.estimator == poincare::Estimator::Ldc ? PC_ESTIMATOR_LDC : PC_ESTIMATOR_ENTROPY;
  cfg->ldc_window = d.ldc_window;
  cfg->ldc_layout = PC_WINDOW_AUTO;
  cfg->ldc_bins = d.ldc_bins;
  cfg->ldc_threshold_fraction = d.ldc_threshold_fraction;
  cfg->entropy_keep_fraction = d.entropy_keep_fraction;
}

pc_status pc_encode_patch(const double* values, size_t rows, size_t cols, const pc_regularity_config* cfg,
                          pc_point* out) {
  return guard([&] {
    need(values, "values");
    need(out, "out");
    poincare::require(rows > 0 && cols > 0, "patch dimensions must be positive");
    const poincare::Patch p(rows, cols, std::vector<double>(values, values + rows * cols));
    *out = to_c(poincare::encode_patch(p, to_cpp(cfg)));
  });
}

pc_status pc_to_stokes(double rho, double psi, double chi, double out_s[3]) {
  return guard([&] {
    need(out_s, "out_s");
    const auto s = poincare::to_stokes(rho, psi, chi);
    out_s[0] = s.s1;
    out_s[1] = s.s2;
    out_s[2] = s.s3;
  });
}

pc_status pc_from_stokes(const double s[3], double out[3]) {
  return guard([&] {
    need(s, "s");
    need(out, "out");
    const auto sc = poincare::from_stokes({s[0], s[1], s[2]});
    out[0] = sc.rho;
    out[1] = sc.theta;
    out[2] = sc.phi;
  });
}

pc_status pc_constellation_create(pc_constellation** out) {
  return guard([&] {
    need(out, "out");
    *out = new pc_constellation{};
  });
}

void pc_constellation_free(pc_constellation* c) { delete c; }

size_t pc_constellation_size(const pc_constellation* c) { return c ? c->c.points.size() : 0; }

pc_status pc_constellation_point(const pc_constellation* c, size_t index, pc_point* out) {
  return guard([&] {
    need(c, "constellation");
    need(out, "out");
    poincare::require(index < c->c.points.size(), "point index out of range");
    *out = to_c(c->c.points[index]);
  });
}

const char* pc_constellation_label(const pc_constellation* c, size_t index) {
  if (!c || index >= c->c.points.size()) return nullptr;
  return c->c.points[index].label.c_str();
}

pc_status pc_constellation_set_provenance(pc_constellation* c, const char* key, const char* value) {
  return guard([&] {
    need(c, "constellation");
    need(key, "key");
    need(value, "value");
    c->c.provenance[key] = value;
  });
}

pc_status pc_encode_image(pc_constellation* c, const pc_image* image, size_t size, size_t stride,
                          const pc_regularity_config* cfg, const char* label) {
  return guard([&] {
    need(c, "constellation");
    need(image, "image");
    const auto config = to_cpp(cfg);
    poincare::require(size >= 2 && size <= image->image.rows() && size <= image->image.cols(),
                      "patch size does not fit the image");
    poincare::require(stride >= 1, "stride must be at least 1");
    for (const auto& p : poincare::extract_patches(image->image, size, stride)) {
      append(c, poincare::encode_patch(p, config), label);
    }
  });
}

pc_status pc_encode_region(pc_constellation* c, const pc_image* image, size_t top, size_t left, size_t height,
                           size_t width, size_t size, size_t samples, uint64_t seed, const pc_regularity_config* cfg,
                           const char* label) {
  return guard([&] {
    need(c, "constellation");
    need(image, "image");
    const auto config = to_cpp(cfg);
    const auto& img = image->image;
    poincare::require(top + height <= img.rows() && left + width <= img.cols(), "region exceeds the image");
    poincare::require(size >= 2 && size <= height && size <= width, "patch size does not fit the region");
    poincare::Rng rng(seed);
    for (size_t s = 0; s < samples; ++s) {
      const size_t i = top + rng.below(height - size + 1);
      const size_t j = left + rng.below(width - size + 1);
      append(c, poincare::encode_patch(img.crop(i, j, size, size), config), label);
    }
  });
}

pc_status pc_encode_dictionary(pc_constellation* c, const pc_dictionary* d, const pc_regularity_config* cfg,
                               const char* label) {
  return guard([&] {
    need(c, "constellation");
    need(d, "dictionary");
    const auto config = to_cpp(cfg);
    for (const auto& a : d->dict.atoms) {
      append(c, poincare::encode_patch(poincare::atom_to_intensity(a.values, d->dict.atom_size), config), label);
    }
  });
}

pc_status pc_encode_fixture(pc_constellation* c, const char* name, size_t size, uint64_t seed,
                            const pc_regularity_config* cfg) {
  return guard([&] {
    need(c, "constellation");
    need(name, "fixture name");
    const auto config = to_cpp(cfg);
    std::vector<poincare::LabeledPatch> patches;
    if (std::strcmp(name, "eight") == 0) {
      patches = poincare::eight_patch_fixture();
    } else if (std::strcmp(name, "rotation") == 0) {
      poincare::require(size >= 3, "rotation fixture needs a patch size of at least 3");
      patches = poincare::rotation_fixture(size, seed);
    } else {
      poincare::fail(ErrorKind::InvalidArgument, std::string("unknown fixture '") + name + "'");
    }
    for (const auto& lp : patches) append(c, poincare::encode_patch(lp.patch, config), lp.label.c_str());
  });
}

pc_status pc_constellation_write_csv(const pc_constellation* c, const char* path) {
  return guard([&] {
    need(c, "constellation");
    auto out = open_out(path);
    poincare::write_constellation_csv(out, c->c);
    finish(out, path);
  });
}

pc_status pc_constellation_write_json(const pc_constellation* c, const char* path) {
  return guard([&] {
    need(c, "constellation");
    auto out = open_out(path);
    poincare::write_constellation_json(out, c->c);
    finish(out, path);
  });
}

// ---- spherical codes

pc_status pc_code_generate(size_t n, uint64_t seed, size_t max_sweeps, double tol, pc_code** out) {
  return guard([&] {
    need(out, "out");
    *out = new pc_code{poincare::generate_spherical_code(n, {seed, max_sweeps, tol})};
  });
}

pc_status pc_code_load(const char* path, pc_code** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new pc_code{poincare::load_spherical_code(path)};
  });
}

pc_status pc_code_save(const pc_code* code, const char* path, const char* const* comments, size_t n_comments) {
  return guard([&] {
    need(code, "code");
    auto out = open_out(path);
    poincare::write_spherical_code(out, code->code.points, comment_list(comments, n_comments));
    finish(out, path);
  });
}

size_t pc_code_size(const pc_code* code) { return code ? code->code.size() : 0; }
double pc_code_min_distance(const pc_code* code) { return code ? code->code.min_chordal_distance : 0.0; }
size_t pc_code_sweeps(const pc_code* code) { return code ? code->code.sweeps : 0; }

pc_status pc_code_point(const pc_code* code, size_t index, double out_xyz[3]) {
  return guard([&] {
    need(code, "code");
    need(out_xyz, "out_xyz");
    poincare::require(index < code->code.size(), "point index out of range");
    const auto& p = code->code.points[index];
    out_xyz[0] = p.x;
    out_xyz[1] = p.y;
    out_xyz[2] = p.z;
  });
}

void pc_code_free(pc_code* code) { delete code; }

// ---- dictionaries

pc_status pc_dictionary_generate(const char* constellation_path, size_t atom_size, uint64_t seed,
                                 pc_dictionary** out) {
  return guard([&] {
    need(constellation_path, "constellation_path");
    need(out, "out");
    const auto points = poincare::load_constellation(constellation_path);
    auto d = poincare::generate_dictionary(points, atom_size, seed);
    d.source = constellation_path;
    *out = new pc_dictionary{std::move(d)};
  });
}

pc_status pc_dictionary_from_code(const pc_code* code, size_t atom_size, uint64_t seed, pc_dictionary** out) {
  return guard([&] {
    need(code, "code");
    need(out, "out");
    auto d = poincare::generate_dictionary(code->code.points, atom_size, seed);
    d.source = code->code.generated ? "generated-" + std::to_string(code->code.size()) : code->code.path;
    *out = new pc_dictionary{std::move(d)};
  });
}

pc_status pc_dictionary_load(const char* path, pc_dictionary** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new pc_dictionary{poincare::load_dictionary(path)};
  });
}

pc_status pc_dictionary_union(const pc_dictionary* a, const pc_dictionary* b, pc_dictionary** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new pc_dictionary{poincare::dictionary_union(a->dict, b->dict)};
  });
}

pc_status pc_dictionary_set_metadata(pc_dictionary* d, const char* key, const char* value) {
  return guard([&] {
    need(d, "dictionary");
    need(key, "key");
    need(value, "value");
    d->dict.metadata[key] = value;
  });
}

pc_status pc_dictionary_set_source(pc_dictionary* d, const char* source) {
  return guard([&] {
    need(d, "dictionary");
    need(source, "source");
    d->dict.source = source;
  });
}

pc_status pc_dictionary_save_json(const pc_dictionary* d, const char* path) {
  return guard([&] {
    need(d, "dictionary");
    auto out = open_out(path);
    poincare::write_dictionary_json(out, d->dict);
    finish(out, path);
  });
}

pc_status pc_dictionary_save_matrix(const pc_dictionary* d, const char* path) {
  return guard([&] {
    need(d, "dictionary");
    auto out = open_out(path);
    poincare::write_dictionary_matrix(out, d->dict);
    finish(out, path);
  });
}

pc_status pc_dictionary_atom_sheet(const pc_dictionary* d, pc_image** out) {
  return guard([&] {
    need(d, "dictionary");
    need(out, "out");
    *out = new pc_image{poincare::atom_sheet(d->dict)};
  });
}

size_t pc_dictionary_size(const pc_dictionary* d) { return d ? d->dict.size() : 0; }
size_t pc_dictionary_atom_size(const pc_dictionary* d) { return d ? d->dict.atom_size : 0; }
uint64_t pc_dictionary_seed(const pc_dictionary* d) { return d ? d->dict.seed : 0; }

const double* pc_dictionary_atom(const pc_dictionary* d, size_t index) {
  if (!d || index >= d->dict.size()) return nullptr;
  return d->dict.atoms[index].values.data();
}

void pc_dictionary_free(pc_dictionary* d) { delete d; }

// ---- sparse reconstruction

pc_status pc_omp(const pc_dictionary* d, const double* signal, size_t length, size_t k, size_t* out_support,
                 double* out_coefficients, size_t* out_count, double* out_residual_energy) {
  return guard([&] {
    need(d, "dictionary");
    need(signal, "signal");
    need(out_support, "out_support");
    need(out_coefficients, "out_coefficients");
    need(out_count, "out_count");
    const auto code = poincare::omp(d->dict, {signal, length}, k);
    for (size_t t = 0; t < code.support.size(); ++t) {
      out_support[t] = code.support[t];
      out_coefficients[t] = code.coefficients[t];
    }
    *out_count = code.support.size();
    if (out_residual_energy) *out_residual_energy = code.residual_energy;
  });
}

pc_status pc_reconstruct(const pc_image* image, const pc_dictionary* d, size_t k, size_t stride, unsigned threads,
                         pc_image** out_image, pc_reconstruction_report* report) {
  return guard([&] {
    need(image, "image");
    need(d, "dictionary");
    auto rec = poincare::reconstruct(image->image, d->dict, k, stride, threads);
    if (report) *report = {rec.report.psnr_db, rec.report.sparsity, rec.report.stride, rec.report.patches,
                           rec.report.seconds};
    if (out_image) *out_image = new pc_image{std::move(rec.image)};
  });
}

}  // extern "C"
