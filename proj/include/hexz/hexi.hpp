#pragma once

// .hexi container for hexagonal images. Big-endian:
//   "HEXI" | version u8 (=1) | width u16 | rows u16 | h f64 | format u8 (=0)
//   | width*rows f64 samples, row by row, valid cells only.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "hexz/codestream.hpp"
#include "hexz/grid.hpp"
#include "hexz/lattice.hpp"

namespace hexz {

inline constexpr std::uint8_t kHexiVersion = 1;
inline constexpr std::uint8_t kHexiFloat64 = 0;

struct HexImage {
  IndexMap map;
  double h = 1.0;
  friend bool operator==(const HexImage&, const HexImage&) = default;
};

namespace detail {

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

inline std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
  return v;
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize_hexi(const HexImage& img) {
  const IndexMap& m = img.map;
  if (m.width() < 1 || m.width() > 0xFFFF || m.rows() < 1 || m.rows() > 0xFFFF)
    throw DomainError("hexi: dimensions do not fit the header");
  std::vector<std::uint8_t> out{'H', 'E', 'X', 'I', kHexiVersion};
  out.push_back(static_cast<std::uint8_t>(m.width() >> 8));
  out.push_back(static_cast<std::uint8_t>(m.width()));
  out.push_back(static_cast<std::uint8_t>(m.rows() >> 8));
  out.push_back(static_cast<std::uint8_t>(m.rows()));
  detail::put_u64(out, std::bit_cast<std::uint64_t>(img.h));
  out.push_back(kHexiFloat64);
  out.reserve(out.size() + 8 * m.sample_count());
  m.for_each_valid([&](int r, int c) { detail::put_u64(out, std::bit_cast<std::uint64_t>(m(r, c))); });
  return out;
}

inline HexImage parse_hexi(const std::vector<std::uint8_t>& bytes) {
  constexpr std::size_t kHeader = 4 + 1 + 2 + 2 + 8 + 1;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "HEXI", 4) != 0) throw FormatError("hexi: bad magic");
  if (bytes.size() < kHeader) throw FormatError("hexi: truncated header");
  if (bytes[4] != kHexiVersion) throw FormatError("hexi: unsupported version");
  const int width = (bytes[5] << 8) | bytes[6];
  const int rows = (bytes[7] << 8) | bytes[8];
  const double h = std::bit_cast<double>(detail::get_u64(&bytes[9]));
  if (bytes[17] != kHexiFloat64) throw FormatError("hexi: unsupported sample format");
  if (width < 1 || rows < 1) throw FormatError("hexi: empty image");
  if (!(h > 0.0) || !std::isfinite(h)) throw FormatError("hexi: bad sampling interval");
  HexImage img{IndexMap(width, rows), h};
  if (bytes.size() != kHeader + 8 * img.map.sample_count()) throw FormatError("hexi: sample count mismatch");
  std::size_t pos = kHeader;
  img.map.for_each_valid([&](int r, int c) {
    img.map(r, c) = std::bit_cast<double>(detail::get_u64(&bytes[pos]));
    pos += 8;
  });
  return img;
}

inline HexImage load_hexi(const std::string& path) { return parse_hexi(read_file_bytes(path)); }
inline void save_hexi(const std::string& path, const HexImage& img) { write_file_bytes(path, serialize_hexi(img)); }

}  // namespace hexz
