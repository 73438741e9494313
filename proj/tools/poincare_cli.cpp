// Command-line front end. Uses only the C interface of libpoincare.
#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "poincare/poincare.h"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

constexpr const char* kOutputs = "Outputs";

struct Failure {
  int code;
  std::string message;
};

int exit_code(pc_status s) {
  switch (s) {
    case PC_OK: return kOk;
    case PC_ERR_INVALID_ARGUMENT: return kUsage;
    case PC_ERR_NUMERIC: return kNumeric;
    default: return kIo;
  }
}

void check(pc_status s) {
  if (s != PC_OK) throw Failure{exit_code(s), pc_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{kUsage, message}; }

struct ImageFree {
  void operator()(pc_image* p) const { pc_image_free(p); }
};
struct CodeFree {
  void operator()(pc_code* p) const { pc_code_free(p); }
};
struct DictFree {
  void operator()(pc_dictionary* p) const { pc_dictionary_free(p); }
};
struct ConstellationFree {
  void operator()(pc_constellation* p) const { pc_constellation_free(p); }
};
using ImagePtr = std::unique_ptr<pc_image, ImageFree>;
using CodePtr = std::unique_ptr<pc_code, CodeFree>;
using DictPtr = std::unique_ptr<pc_dictionary, DictFree>;
using ConstellationPtr = std::unique_ptr<pc_constellation, ConstellationFree>;

ImagePtr load_image(const std::string& path) {
  pc_image* raw = nullptr;
  check(pc_image_load(path.c_str(), &raw));
  return ImagePtr(raw);
}

DictPtr load_dictionary(const std::string& path) {
  pc_dictionary* raw = nullptr;
  check(pc_dictionary_load(path.c_str(), &raw));
  return DictPtr(raw);
}

ConstellationPtr new_constellation() {
  pc_constellation* raw = nullptr;
  check(pc_constellation_create(&raw));
  return ConstellationPtr(raw);
}

// Dictionary files joined with '+' are loaded and united in order.
DictPtr load_union(const std::vector<std::string>& paths) {
  DictPtr acc = load_dictionary(paths.front());
  for (std::size_t k = 1; k < paths.size(); ++k) {
    DictPtr next = load_dictionary(paths[k]);
    pc_dictionary* raw = nullptr;
    check(pc_dictionary_union(acc.get(), next.get(), &raw));
    acc.reset(raw);
  }
  return acc;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Digest over the subcommand name and every resolved non-output option, so
// the same settings give the same digest whether they came from flags or the
// config file, and wherever the outputs go.
std::string config_digest(const CLI::App& sub) {
  std::string canon = sub.get_name() + "\n";
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt == sub.get_help_ptr() || opt->get_group() == kOutputs) continue;
    canon += opt->get_name() + "=";
    const auto results = opt->results();
    if (results.empty()) {
      canon += opt->get_default_str();
    } else {
      for (std::size_t k = 0; k < results.size(); ++k) canon += (k ? "\x1f" : "") + results[k];
    }
    canon += "\n";
  }
  return hex64(fnv1a(canon));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void require_readable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kIo, "cannot open '" + path + "'"};
}

void require_writable_dir(const std::string& path) {
  if (path.empty()) return;
  const auto dir = std::filesystem::path(path).parent_path();
  if (!dir.empty() && !std::filesystem::is_directory(dir)) {
    throw Failure{kIo, "output directory '" + dir.string() + "' does not exist"};
  }
}

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kIo, "cannot open '" + path + "' for writing"};
  out << text;
  out.flush();
  if (!out) throw Failure{kIo, "error writing '" + path + "'"};
}

// ---- estimator options shared by encode and cluster ----------------------

struct EstimatorOptions {
  std::string estimator;
  std::size_t window = 0;
  std::string layout = "auto";
  std::size_t bins = 0;
  double threshold = 0.0;
  double keep = 0.0;

  EstimatorOptions() {
    pc_regularity_config d;
    pc_regularity_config_default(&d);
    estimator = d.estimator == PC_ESTIMATOR_LDC ? "ldc" : "entropy";
    window = d.ldc_window;
    bins = d.ldc_bins;
    threshold = d.ldc_threshold_fraction;
    keep = d.entropy_keep_fraction;
  }

  void add_to(CLI::App* app) {
    app->add_option("--estimator", estimator, "Regularity estimator")->check(CLI::IsMember({"entropy", "ldc"}));
    app->add_option("--ldc-window", window, "LDC block size");
    app->add_option("--ldc-layout", layout, "LDC block layout")->check(CLI::IsMember({"auto", "sliding", "tiled"}));
    app->add_option("--ldc-bins", bins, "LDC orientation bins B");
    app->add_option("--ldc-threshold", threshold, "LDC bin population threshold (fraction of blocks)");
    app->add_option("--entropy-keep", keep, "Entropy histogram threshold (fraction of the largest bin)");
  }

  pc_regularity_config config() const {
    pc_regularity_config c;
    pc_regularity_config_default(&c);
    c.estimator = estimator == "ldc" ? PC_ESTIMATOR_LDC : PC_ESTIMATOR_ENTROPY;
    c.ldc_window = window;
    c.ldc_layout = layout == "sliding" ? PC_WINDOW_SLIDING : layout == "tiled" ? PC_WINDOW_TILED : PC_WINDOW_AUTO;
    c.ldc_bins = bins;
    c.ldc_threshold_fraction = threshold;
    c.entropy_keep_fraction = keep;
    return c;
  }
};

void write_constellation(pc_constellation* c, const std::string& path) {
  if (ends_with(path, ".json")) {
    check(pc_constellation_write_json(c, path.c_str()));
  } else {
    check(pc_constellation_write_csv(c, path.c_str()));
  }
}

void set_provenance(pc_constellation* c, const std::string& key, const std::string& value) {
  check(pc_constellation_set_provenance(c, key.c_str(), value.c_str()));
}

// ---- encode ----------------------------------------------------------------

struct EncodeCmd {
  std::string image, fixture, label = "patch", out;
  std::size_t patch_size = 8, stride = 0;
  std::uint64_t seed = 1;
  EstimatorOptions est;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("encode", "Encode image patches or a built-in fixture as sphere points");
    auto* img = sub->add_option("--image", image, "Input image (PGM or PNG)");
    auto* fix = sub->add_option("--fixture", fixture, "Built-in fixture instead of an image")
                    ->check(CLI::IsMember({"eight", "rotation"}));
    img->excludes(fix);
    sub->add_option("--patch-size", patch_size, "Patch size (also the rotation fixture size)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
    sub->add_option("--stride", stride, "Patch stride (0: patch size)");
    sub->add_option("--seed", seed, "Master seed (rotation fixture noise)");
    sub->add_option("--label", label, "Label for image patches");
    est.add_to(sub);
    sub->add_option("--out", out, "Output constellation (.csv or .json)")->required()->group(kOutputs);
    sub->callback([this, sub] { run(*sub); });
  }

  void run(const CLI::App& sub) {
    if (image.empty() == fixture.empty()) usage("encode needs exactly one of --image or --fixture");
    if (!image.empty()) require_readable(image);
    require_writable_dir(out);
    const auto cfg = est.config();
    auto c = new_constellation();
    if (!image.empty()) {
      auto img = load_image(image);
      check(pc_encode_image(c.get(), img.get(), patch_size, stride ? stride : patch_size, &cfg, label.c_str()));
      if (pc_constellation_size(c.get()) == 0) usage("no patches fit in '" + image + "'");
      set_provenance(c.get(), "source", image);
    } else {
      check(pc_encode_fixture(c.get(), fixture.c_str(), patch_size, seed, &cfg));
      set_provenance(c.get(), "source", "fixture:" + fixture);
    }
    set_provenance(c.get(), "config_digest", config_digest(sub));
    set_provenance(c.get(), "seed", std::to_string(seed));
    set_provenance(c.get(), "estimator", est.estimator);
    write_constellation(c.get(), out);
    std::cout << "encoded " << pc_constellation_size(c.get()) << " patches -> " << out << "\n";
  }
};

// ---- cluster ---------------------------------------------------------------

struct Region {
  std::string label;
  std::size_t top = 0, left = 0, height = 0, width = 0;
};

Region parse_region(const std::string& spec) {
  std::istringstream in(spec);
  Region r;
  long long vals[4];
  if (!(in >> r.label >> vals[0] >> vals[1] >> vals[2] >> vals[3])) {
    usage("region '" + spec + "' is not 'label top left height width'");
  }
  std::string extra;
  if (in >> extra) usage("region '" + spec + "' has trailing fields");
  for (long long v : vals) {
    if (v < 0) usage("region '" + spec + "' has a negative coordinate");
  }
  r.top = static_cast<std::size_t>(vals[0]);
  r.left = static_cast<std::size_t>(vals[1]);
  r.height = static_cast<std::size_t>(vals[2]);
  r.width = static_cast<std::size_t>(vals[3]);
  return r;
}

struct ClusterCmd {
  std::string image, out;
  std::vector<std::string> regions;
  std::size_t patch_size = 8, samples = 200;
  std::uint64_t seed = 1;
  EstimatorOptions est;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("cluster", "Encode random patches from labeled image regions");
    sub->add_option("--image", image, "Input image (PGM or PNG)")->required();
    sub->add_option("--region", regions, "Region 'label top left height width' (repeatable)")->required();
    sub->add_option("--patch-size", patch_size, "Patch size")->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
    sub->add_option("--samples", samples, "Patches drawn per region")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Master seed; region r draws with seed + r");
    est.add_to(sub);
    sub->add_option("--out", out, "Output constellation (.csv or .json)")->required()->group(kOutputs);
    sub->callback([this, sub] { run(*sub); });
  }

  void run(const CLI::App& sub) {
    require_readable(image);
    require_writable_dir(out);
    std::vector<Region> parsed;
    for (const auto& spec : regions) parsed.push_back(parse_region(spec));
    auto img = load_image(image);
    const std::size_t rows = pc_image_rows(img.get()), cols = pc_image_cols(img.get());
    for (const auto& r : parsed) {
      if (r.top + r.height > rows || r.left + r.width > cols) {
        usage("region '" + r.label + "' exceeds the " + std::to_string(rows) + "x" + std::to_string(cols) + " image");
      }
      if (r.height < patch_size || r.width < patch_size) {
        usage("region '" + r.label + "' is smaller than the patch size");
      }
    }
    const auto cfg = est.config();
    auto c = new_constellation();
    for (std::size_t k = 0; k < parsed.size(); ++k) {
      const auto& r = parsed[k];
      check(pc_encode_region(c.get(), img.get(), r.top, r.left, r.height, r.width, patch_size, samples, seed + k, &cfg,
                             r.label.c_str()));
    }
    set_provenance(c.get(), "source", image);
    set_provenance(c.get(), "config_digest", config_digest(sub));
    set_provenance(c.get(), "seed", std::to_string(seed));
    set_provenance(c.get(), "estimator", est.estimator);
    write_constellation(c.get(), out);
    std::cout << "encoded " << pc_constellation_size(c.get()) << " patches from " << parsed.size() << " regions -> "
              << out << "\n";
  }
};

// ---- gen-code --------------------------------------------------------------

struct GenCodeCmd {
  std::size_t n = 0, max_sweeps = 20000;
  std::string load, out;
  std::uint64_t seed = 1;
  double tol = 1e-12;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("gen-code", "Generate a spherical code or load and normalize one");
    auto* n_opt = sub->add_option("--n", n, "Number of points")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    auto* load_opt = sub->add_option("--load", load, "Existing code file to normalize");
    n_opt->excludes(load_opt);
    sub->add_option("--seed", seed, "Seed of the random start");
    sub->add_option("--max-sweeps", max_sweeps, "Repulsion sweep limit");
    sub->add_option("--tol", tol, "Stop once the step cannot move the minimum distance by more than this")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "Output code file")->required()->group(kOutputs);
    sub->callback([this, sub] { run(*sub); });
  }

  void run(const CLI::App& sub) {
    if ((n == 0) == load.empty()) usage("gen-code needs exactly one of --n or --load");
    if (!load.empty()) require_readable(load);
    require_writable_dir(out);
    pc_code* raw = nullptr;
    if (load.empty()) {
      check(pc_code_generate(n, seed, max_sweeps, tol, &raw));
    } else {
      check(pc_code_load(load.c_str(), &raw));
    }
    CodePtr code(raw);
    const std::size_t size = pc_code_size(code.get());
    const double dmin = pc_code_min_distance(code.get());
    std::vector<std::string> comments{
        "n: " + std::to_string(size),
        "min_distance: " + fixed(dmin, 12),
        "source: " + (load.empty() ? "generated" : load),
        "sweeps: " + std::to_string(pc_code_sweeps(code.get())),
        "seed: " + std::to_string(seed),
        "config_digest: " + config_digest(sub),
    };
    std::vector<const char*> ptrs;
    for (const auto& s : comments) ptrs.push_back(s.c_str());
    check(pc_code_save(code.get(), out.c_str(), ptrs.data(), ptrs.size()));
    std::cout << (load.empty() ? "generated " : "loaded and normalized ") << size
              << " points, min distance " << fixed(dmin, 6) << " -> " << out << "\n";
  }
};

// ---- gen-dict --------------------------------------------------------------

struct GenDictCmd {
  std::string code, out, sheet;
  std::size_t atom_size = 8;
  std::uint64_t seed = 1;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("gen-dict", "Generate a random-bar dictionary from a point constellation");
    sub->add_option("--code", code, "Constellation file, points inside the unit ball")->required();
    sub->add_option("--atom-size", atom_size, "Atom size N")->check(CLI::Range(std::size_t{2}, std::size_t{256}));
    sub->add_option("--seed", seed, "Master seed; atom i uses a stream derived from (seed, i)");
    sub->add_option("--out", out, "Output dictionary (.json, or matrix text otherwise)")->required()->group(kOutputs);
    sub->add_option("--sheet", sheet, "Atom sheet PGM")->group(kOutputs);
    sub->callback([this, sub] { run(*sub); });
  }

  void run(const CLI::App& sub) {
    require_readable(code);
    require_writable_dir(out);
    require_writable_dir(sheet);
    pc_dictionary* raw = nullptr;
    check(pc_dictionary_generate(code.c_str(), atom_size, seed, &raw));
    DictPtr d(raw);
    const std::string digest = config_digest(sub);
    check(pc_dictionary_set_metadata(d.get(), "config_digest", digest.c_str()));
    if (ends_with(out, ".json")) {
      check(pc_dictionary_save_json(d.get(), out.c_str()));
    } else {
      check(pc_dictionary_save_matrix(d.get(), out.c_str()));
    }
    if (!sheet.empty()) {
      pc_image* img = nullptr;
      check(pc_dictionary_atom_sheet(d.get(), &img));
      ImagePtr holder(img);
      const std::string c1 = "config_digest: " + digest, c2 = "seed: " + std::to_string(seed);
      const char* comments[] = {c1.c_str(), c2.c_str()};
      check(pc_image_save_pgm(img, sheet.c_str(), comments, 2));
    }
    std::cout << "generated " << pc_dictionary_size(d.get()) << " atoms of " << atom_size << "x" << atom_size << " -> "
              << out << "\n";
  }
};

// ---- reconstruct -------------------------------------------------------------

nlohmann::ordered_json psnr_json(double db) {
  if (std::isinf(db)) return "inf";
  return std::stod(fixed(db, 6));
}

struct ReconstructCmd {
  std::string image, out, report;
  std::vector<std::string> dicts;
  std::size_t k = 5, stride = 1;
  unsigned threads = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("reconstruct", "Sparse-code every patch with OMP and average the overlaps");
    sub->add_option("--image", image, "Input image (PGM or PNG)")->required();
    sub->add_option("--dict", dicts, "Dictionary file (repeatable; several are united in order)")->required();
    sub->add_option("--k", k, "Sparsity")->check(CLI::PositiveNumber);
    sub->add_option("--stride", stride, "Patch stride")->check(CLI::PositiveNumber);
    sub->add_option("--threads", threads, "Worker threads (0: all cores); results do not depend on it");
    sub->add_option("--out", out, "Reconstructed PGM")->group(kOutputs);
    sub->add_option("--report", report, "JSON report (stdout when omitted)")->group(kOutputs);
    sub->callback([this, sub] { run(*sub); });
  }

  void run(const CLI::App& sub) {
    require_readable(image);
    for (const auto& d : dicts) require_readable(d);
    require_writable_dir(out);
    require_writable_dir(report);
    auto img = load_image(image);
    auto d = load_union(dicts);
    pc_image* rec_raw = nullptr;
    pc_reconstruction_report rep{};
    check(pc_reconstruct(img.get(), d.get(), k, stride, threads, &rec_raw, &rep));
    ImagePtr rec(rec_raw);
    const std::string digest = config_digest(sub);

    nlohmann::ordered_json j;
    j["image"] = image;
    j["dict"] = dicts;
    j["atoms"] = pc_dictionary_size(d.get());
    j["k"] = k;
    j["stride"] = stride;
    j["patches"] = rep.patches;
    j["psnr_db"] = psnr_json(rep.psnr_db);
    j["seconds"] = std::stod(fixed(rep.seconds, 3));
    j["config_digest"] = digest;
    nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
    for (const auto& path : dicts) seeds.push_back(pc_dictionary_seed(load_dictionary(path).get()));
    j["dict_seeds"] = std::move(seeds);

    if (!out.empty()) {
      const std::string c1 = "config_digest: " + digest, c2 = "psnr_db: " + fixed(rep.psnr_db, 4);
      const char* comments[] = {c1.c_str(), c2.c_str()};
      check(pc_image_save_pgm(rec.get(), out.c_str(), comments, 2));
    }
    if (report.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      write_text(report, j.dump(2) + "\n");
      std::cout << image << ": " << fixed(rep.psnr_db, 2) << " dB with " << pc_dictionary_size(d.get())
                << " atoms, k = " << k << "\n";
    }
  }
};

// ---- eval-table1 -------------------------------------------------------------

struct Named {
  std::string name;
  std::vector<std::string> paths;
};

Named parse_named(const std::string& spec, const char* what) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    usage(std::string(what) + " '" + spec + "' is not 'name=path'");
  }
  return {spec.substr(0, eq), split(spec.substr(eq + 1), '+')};
}

bool readable(const std::string& path) { return std::ifstream(path).good(); }

struct EvalTableCmd {
  std::vector<std::string> images, dicts;
  std::string out, improvement = "PD_i1082-PD_2x256";
  std::size_t k = 5, stride = 1;
  unsigned threads = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("eval-table1", "PSNR table of OMP reconstructions, images by dictionaries");
    sub->add_option("--image", images, "Image 'name=path' (repeatable)")->required();
    sub->add_option("--dict", dicts, "Dictionary 'name=path[+path...]'; '+' unites files (repeatable)")->required();
    sub->add_option("--improvement", improvement, "Difference column 'A-B' between two dictionary names");
    sub->add_option("--k", k, "Sparsity")->check(CLI::PositiveNumber);
    sub->add_option("--stride", stride, "Patch stride")->check(CLI::PositiveNumber);
    sub->add_option("--threads", threads, "Worker threads (0: all cores)");
    sub->add_option("--out", out, "Output CSV")->required()->group(kOutputs);
    sub->callback([this, sub] { run(*sub); });
  }

  void run(const CLI::App& sub) {
    std::vector<Named> imgs, dcts;
    for (const auto& s : images) imgs.push_back(parse_named(s, "image"));
    for (const auto& s : dicts) dcts.push_back(parse_named(s, "dictionary"));
    require_writable_dir(out);

    std::size_t minuend = dcts.size(), subtrahend = dcts.size();
    if (!improvement.empty()) {
      const auto dash = improvement.find('-');
      if (dash == std::string::npos) usage("improvement '" + improvement + "' is not 'A-B'");
      for (std::size_t c = 0; c < dcts.size(); ++c) {
        if (dcts[c].name == improvement.substr(0, dash)) minuend = c;
        if (dcts[c].name == improvement.substr(dash + 1)) subtrahend = c;
      }
    }

    // Missing inputs mark their cells as skipped; the run continues.
    std::vector<DictPtr> loaded;
    for (const auto& d : dcts) {
      bool ok = true;
      for (const auto& p : d.paths) ok = ok && readable(p);
      if (ok) {
        loaded.push_back(load_union(d.paths));
      } else {
        std::cerr << "warning: dictionary '" << d.name << "' has a missing file; column skipped\n";
        loaded.emplace_back();
      }
    }

    std::ostringstream csv;
    csv << "# config_digest: " << config_digest(sub) << "\n";
    csv << "# k: " << k << "\n# stride: " << stride << "\n";
    for (std::size_t c = 0; c < dcts.size(); ++c) {
      csv << "# " << dcts[c].name << ": ";
      for (std::size_t p = 0; p < dcts[c].paths.size(); ++p) csv << (p ? " + " : "") << dcts[c].paths[p];
      if (loaded[c]) csv << " (seed " << pc_dictionary_seed(loaded[c].get()) << ")";
      csv << "\n";
    }
    csv << "image";
    for (const auto& d : dcts) csv << "," << d.name;
    const bool diff_column = minuend < dcts.size() && subtrahend < dcts.size();
    if (diff_column) csv << "," << improvement;
    csv << "\n";

    for (const auto& im : imgs) {
      csv << im.name;
      const bool have_image = im.paths.size() == 1 && readable(im.paths.front());
      if (!have_image) std::cerr << "warning: image '" << im.name << "' not found; row skipped\n";
      ImagePtr img = have_image ? load_image(im.paths.front()) : nullptr;
      std::vector<double> row(dcts.size(), NAN);
      for (std::size_t c = 0; c < dcts.size(); ++c) {
        if (!img || !loaded[c]) {
          csv << ",skipped";
          continue;
        }
        pc_image* rec = nullptr;
        pc_reconstruction_report rep{};
        check(pc_reconstruct(img.get(), loaded[c].get(), k, stride, threads, &rec, &rep));
        pc_image_free(rec);
        row[c] = rep.psnr_db;
        csv << "," << fixed(rep.psnr_db, 2);
        std::cerr << im.name << " / " << dcts[c].name << ": " << fixed(rep.psnr_db, 2) << " dB ("
                  << fixed(rep.seconds, 1) << " s)\n";
      }
      if (diff_column) {
        const double a = row[minuend], b = row[subtrahend];
        csv << "," << (std::isnan(a) || std::isnan(b) ? "skipped" : fixed(a - b, 2));
      }
      csv << "\n";
    }
    write_text(out, csv.str());
    std::cout << "wrote " << out << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encode visual patterns on the Poincare sphere and build random-bar dictionaries"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Key-value config file; [subcommand] sections, flags override")
      ->check(CLI::ExistingFile);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", std::string(pc_version()));
  app.require_subcommand(1, 1);

  EncodeCmd encode;
  ClusterCmd cluster;
  GenCodeCmd gen_code;
  GenDictCmd gen_dict;
  ReconstructCmd reconstruct;
  EvalTableCmd eval_table;
  encode.add(app);
  cluster.add(app);
  gen_code.add(app);
  gen_dict.add(app);
  reconstruct.add(app);
  eval_table.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
