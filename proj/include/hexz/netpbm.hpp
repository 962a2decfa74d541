#pragma once

// Binary 8-bit PGM (P5) / PPM (P6) I/O.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "hexz/grid.hpp"
#include "hexz/resample.hpp"

namespace hexz {

struct NetpbmImage {
  bool color = false;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;  // 1 or 3 per pixel, row-major
};

namespace detail {

inline int read_header_int(std::istream& in) {
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (!std::isspace(ch)) {
      break;
    }
    ch = in.get();
  }
  if (ch == EOF || !std::isdigit(ch)) throw FormatError("netpbm: malformed header");
  long v = 0;
  while (ch != EOF && std::isdigit(ch)) {
    v = v * 10 + (ch - '0');
    if (v > 1'000'000) throw FormatError("netpbm: header value too large");
    ch = in.get();
  }
  // exactly one whitespace byte follows the last header field
  if (ch == EOF || !std::isspace(ch)) throw FormatError("netpbm: malformed header");
  return static_cast<int>(v);
}

}  // namespace detail

inline NetpbmImage read_netpbm(std::istream& in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
    throw FormatError("netpbm: only binary P5/P6 is supported");
  NetpbmImage img;
  img.color = magic[1] == '6';
  img.width = detail::read_header_int(in);
  img.height = detail::read_header_int(in);
  const int maxval = detail::read_header_int(in);
  if (img.width < 1 || img.height < 1) throw FormatError("netpbm: empty image");
  if (maxval < 1 || maxval > 255) throw FormatError("netpbm: only 8-bit samples are supported");
  img.samples.resize(static_cast<std::size_t>(img.width) * img.height * (img.color ? 3 : 1));
  if (!in.read(reinterpret_cast<char*>(img.samples.data()), static_cast<std::streamsize>(img.samples.size())))
    throw FormatError("netpbm: truncated pixel data");
  if (maxval != 255)
    for (auto& s : img.samples) s = static_cast<std::uint8_t>(std::lround(s * 255.0 / maxval));
  return img;
}

inline NetpbmImage load_netpbm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return read_netpbm(in);
}

// Grayscale samples as-is; colour images reduce to studio-range luma.
inline CartImage to_luma(const NetpbmImage& img) {
  if (!img.color) {
    CartImage out(img.height, img.width);
    for (std::size_t i = 0; i < img.samples.size(); ++i) out.values()[i] = img.samples[i];
    return out;
  }
  RgbImage rgb(img.height, img.width);
  for (std::size_t i = 0; i < rgb.pixels.size(); ++i)
    rgb.pixels[i] = {img.samples[3 * i], img.samples[3 * i + 1], img.samples[3 * i + 2]};
  return rgb_to_y(rgb);
}

inline void write_pgm(std::ostream& out, const CartImage& img) {
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  for (double v : img.values()) {
    const auto b = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    out.put(static_cast<char>(b));
  }
  if (!out) throw FormatError("pgm: write failed");
}

inline void save_pgm(const std::string& path, const CartImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  write_pgm(out, img);
}

}  // namespace hexz
