#include "poincare/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "poincare/error.hpp"

namespace poincare {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in, const std::string& path) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) fail(ErrorKind::Parse, path + ": truncated PGM header");
  return tok;
}

std::size_t pnm_number(std::istream& in, const std::string& path) {
  const std::string tok = pnm_token(in, path);
  if (!std::all_of(tok.begin(), tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    fail(ErrorKind::Parse, path + ": bad PGM header field '" + tok + "'");
  }
  return std::stoul(tok);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

}  // namespace

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  if (pnm_token(in, path) != "P5") fail(ErrorKind::Parse, path + ": not a binary PGM (P5)");
  const std::size_t cols = pnm_number(in, path);
  const std::size_t rows = pnm_number(in, path);
  const std::size_t maxval = pnm_number(in, path);
  if (cols == 0 || rows == 0) fail(ErrorKind::Parse, path + ": empty image");
  if (maxval == 0 || maxval > 255) fail(ErrorKind::Parse, path + ": only 8-bit PGM is supported");

  std::vector<unsigned char> raw(rows * cols);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) fail(ErrorKind::Parse, path + ": truncated pixel data");
  return Image(rows, cols, std::vector<double>(raw.begin(), raw.end()));
}

void write_pgm(const std::string& path, const Image& image, const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  out << "P5\n";
  for (const auto& c : comments) out << "# " << c << "\n";
  out << image.cols() << " " << image.rows() << "\n255\n";
  std::vector<unsigned char> raw(image.size());
  std::transform(image.values().begin(), image.values().end(), raw.begin(),
                 [](double v) { return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L)); });
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

Image read_png(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
  if (!fp) fail(ErrorKind::Io, "cannot open '" + path + "'");

  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_stdio(&img, fp.get())) {
    fail(ErrorKind::Parse, path + ": " + img.message);
  }
  // Decode to 8-bit RGB without gamma conversion, then apply the luminance
  // weights ourselves so gray PNGs round-trip exactly.
  img.format = PNG_FORMAT_RGB;
  std::vector<png_byte> rgb(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, rgb.data(), 0, nullptr)) {
    png_image_free(&img);
    fail(ErrorKind::Parse, path + ": " + img.message);
  }
  const std::size_t rows = img.height;
  const std::size_t cols = img.width;
  std::vector<double> gray(rows * cols);
  for (std::size_t k = 0; k < gray.size(); ++k) {
    const double r = rgb[3 * k], g = rgb[3 * k + 1], b = rgb[3 * k + 2];
    gray[k] = (r == g && g == b) ? r : 0.299 * r + 0.587 * g + 0.114 * b;
  }
  return Image(rows, cols, std::move(gray));
}

Image load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  std::array<char, 8> sig{};
  in.read(sig.data(), sig.size());
  if (in.gcount() >= 2 && sig[0] == 'P' && sig[1] == '5') return read_pgm(path);
  static constexpr std::array<unsigned char, 8> kPng = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (in.gcount() == 8 && std::equal(kPng.begin(), kPng.end(), sig.begin(),
                                     [](unsigned char a, char b) { return a == static_cast<unsigned char>(b); })) {
    return read_png(path);
  }
  fail(ErrorKind::Parse, path + ": unrecognized image format (expected binary PGM or PNG)");
}

}  // namespace poincare
