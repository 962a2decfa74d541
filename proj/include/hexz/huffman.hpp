#pragma once

// Fixed prefix code for dominant-pass symbols:
//   T (zero-tree) 0, Z (isolated zero) 10, N (significant negative) 110,
//   P (significant positive) 1110, SEP (pass separator) 1111.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexz/bitstream.hpp"

namespace hexz {

enum class Symbol : std::uint8_t { P, N, Z, T, Sep };

struct Code {
  std::uint32_t bits;
  int length;
};

inline constexpr Code huffman_code(Symbol s) {
  switch (s) {
    case Symbol::T: return {0b0, 1};
    case Symbol::Z: return {0b10, 2};
    case Symbol::N: return {0b110, 3};
    case Symbol::P: return {0b1110, 4};
    case Symbol::Sep: return {0b1111, 4};
  }
  return {0, 0};
}

inline char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::P: return 'p';
    case Symbol::N: return 'n';
    case Symbol::Z: return 'z';
    case Symbol::T: return 't';
    case Symbol::Sep: return '|';
  }
  return '?';
}

inline void huffman_put(BitWriter& out, Symbol s) {
  const Code c = huffman_code(s);
  out.put_bits(c.bits, c.length);
}

inline BitWriter huffman_encode(const std::vector<Symbol>& symbols) {
  BitWriter w;
  for (Symbol s : symbols) huffman_put(w, s);
  return w;
}

// Reads one symbol; nullopt when the data ends inside (or before) a code word.
inline std::optional<Symbol> huffman_get(BitReader& in) {
  int ones = 0;
  while (ones < 4) {
    auto b = in.get();
    if (!b) return std::nullopt;
    if (!*b) break;
    ++ones;
  }
  switch (ones) {
    case 0: return Symbol::T;
    case 1: return Symbol::Z;
    case 2: return Symbol::N;
    case 3: return Symbol::P;
    default: return Symbol::Sep;
  }
}

// Decodes until the data runs out; a malformed tail is dropped.
inline std::vector<Symbol> huffman_decode(BitReader in) {
  std::vector<Symbol> out;
  while (auto s = huffman_get(in)) out.push_back(*s);
  return out;
}

inline std::string to_bit_string(const BitWriter& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s.push_back(w.bit(i) ? '1' : '0');
  return s;
}

}  // namespace hexz
