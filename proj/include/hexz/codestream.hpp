#pragma once

// .hxc container. Big-endian header:
//   "HXC1" | version u8 (=1) | scheme u8 | treeRows u16 | treeCols u16 |
//   origWidth u16 | origRows u16 | levels u8 |
//   SBHex/EZW: thresholdExponent i8
//   BBHex:     bandCount u8, bandCount x thresholdExponent i8 |
//   payloadBitCount u32 | payload, MSB-first, zero-padded to a byte.
// A threshold exponent of -128 marks a tree with no coding passes.

#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "hexz/grid.hpp"

namespace hexz {

enum class Scheme : std::uint8_t { SBHex = 0, BBHex = 1, EzwCartesian = 2 };

inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::int8_t kNoPasses = -128;

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::SBHex: return "sbhex";
    case Scheme::BBHex: return "bbhex";
    case Scheme::EzwCartesian: return "ezw";
  }
  return "?";
}

inline Scheme parse_scheme(const std::string& name) {
  if (name == "sbhex") return Scheme::SBHex;
  if (name == "bbhex") return Scheme::BBHex;
  if (name == "ezw") return Scheme::EzwCartesian;
  throw DomainError("unknown scheme '" + name + "'");
}

inline bool is_hex_scheme(Scheme s) { return s != Scheme::EzwCartesian; }

struct StreamHeader {
  Scheme scheme = Scheme::SBHex;
  std::uint16_t tree_rows = 0;
  std::uint16_t tree_cols = 0;
  std::uint16_t orig_width = 0;
  std::uint16_t orig_rows = 0;
  std::uint8_t levels = 0;
  std::vector<std::int8_t> exponents;  // one entry, or one per band for BBHex
  std::uint32_t payload_bits = 0;

  // Samples in the source grid; the BPP denominator.
  std::size_t coefficient_count() const { return static_cast<std::size_t>(orig_width) * orig_rows; }

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

struct CodeStream {
  StreamHeader header;
  std::vector<std::uint8_t> payload;
  friend bool operator==(const CodeStream&, const CodeStream&) = default;
};

// Keeps the first `bits` payload bits (no-op when bits >= current length).
inline CodeStream truncate_stream(CodeStream s, std::size_t bits) {
  if (bits >= s.header.payload_bits) return s;
  s.header.payload_bits = static_cast<std::uint32_t>(bits);
  s.payload.resize((bits + 7) / 8);
  if (bits % 8) s.payload.back() &= static_cast<std::uint8_t>(0xFFu << (8 - bits % 8));
  return s;
}

inline std::vector<std::uint8_t> serialize(const CodeStream& s) {
  std::vector<std::uint8_t> out{'H', 'X', 'C', '1', kStreamVersion, static_cast<std::uint8_t>(s.header.scheme)};
  auto u16 = [&](std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
  };
  u16(s.header.tree_rows);
  u16(s.header.tree_cols);
  u16(s.header.orig_width);
  u16(s.header.orig_rows);
  out.push_back(s.header.levels);
  if (s.header.scheme == Scheme::BBHex) {
    if (s.header.exponents.size() > 255) throw DomainError("serialize: too many bands");
    out.push_back(static_cast<std::uint8_t>(s.header.exponents.size()));
  } else if (s.header.exponents.size() != 1) {
    throw DomainError("serialize: single-tree schemes carry exactly one exponent");
  }
  for (std::int8_t e : s.header.exponents) out.push_back(static_cast<std::uint8_t>(e));
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(s.header.payload_bits >> shift));
  if (s.payload.size() != (s.header.payload_bits + 7) / 8u) throw DomainError("serialize: payload size mismatch");
  out.insert(out.end(), s.payload.begin(), s.payload.end());
  return out;
}

inline CodeStream parse_stream(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  auto need = [&](std::size_t n) {
    if (pos + n > bytes.size()) throw FormatError("hxc: truncated header");
  };
  auto u8 = [&] {
    need(1);
    return bytes[pos++];
  };
  auto u16 = [&] {
    need(2);
    const auto v = static_cast<std::uint16_t>((bytes[pos] << 8) | bytes[pos + 1]);
    pos += 2;
    return v;
  };
  need(4);
  if (!(bytes[0] == 'H' && bytes[1] == 'X' && bytes[2] == 'C' && bytes[3] == '1')) throw FormatError("hxc: bad magic");
  pos = 4;
  if (u8() != kStreamVersion) throw FormatError("hxc: unsupported version");
  const std::uint8_t scheme = u8();
  if (scheme > 2) throw FormatError("hxc: unknown scheme");
  CodeStream s;
  s.header.scheme = static_cast<Scheme>(scheme);
  s.header.tree_rows = u16();
  s.header.tree_cols = u16();
  s.header.orig_width = u16();
  s.header.orig_rows = u16();
  s.header.levels = u8();
  const std::size_t n_exp = s.header.scheme == Scheme::BBHex ? u8() : 1u;
  for (std::size_t i = 0; i < n_exp; ++i) s.header.exponents.push_back(static_cast<std::int8_t>(u8()));
  need(4);
  s.header.payload_bits = (std::uint32_t{bytes[pos]} << 24) | (std::uint32_t{bytes[pos + 1]} << 16) |
                          (std::uint32_t{bytes[pos + 2]} << 8) | std::uint32_t{bytes[pos + 3]};
  pos += 4;
  const std::size_t n_bytes = (static_cast<std::size_t>(s.header.payload_bits) + 7) / 8;
  if (bytes.size() - pos < n_bytes) throw FormatError("hxc: payload shorter than payloadBitCount");
  s.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                   bytes.begin() + static_cast<std::ptrdiff_t>(pos + n_bytes));
  return s;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline CodeStream load_stream(const std::string& path) { return parse_stream(read_file_bytes(path)); }
inline void save_stream(const std::string& path, const CodeStream& s) { write_file_bytes(path, serialize(s)); }

}  // namespace hexz
