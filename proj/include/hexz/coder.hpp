#pragma once

// Embedded zero-tree coding of wavelet coefficient trees.
//
// One engine drives all three schemes; they differ only in how the
// coefficients are arranged into trees and in the order trees are visited:
//   SBHex  one spiral tree over the whole pyramid, hexagonal spiral scan;
//   BBHex  one tree per sub-band. Each threshold pass visits the bands
//          breadth-first (coarse, then coarsest to finest details); a band
//          joins the ladder once the threshold reaches its own top exponent;
//   EZW    the Cartesian Mallat pyramid with the classic parent rule and a
//          sub-band-ordered Morton scan.
//
// Each pass at threshold T = 2^e writes the Huffman-coded dominant symbols
// (trailing zero-trees stripped), a separator, then one refinement bit per
// subordinate-list entry. Passes run from the top exponent down to
// kMinExponent. Any prefix of the payload decodes: symbols past the end are
// zero-trees and missing refinement bits leave an interval unrefined.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hexz/bitstream.hpp"
#include "hexz/codestream.hpp"
#include "hexz/grid.hpp"
#include "hexz/huffman.hpp"
#include "hexz/lattice.hpp"
#include "hexz/sot.hpp"
#include "hexz/wavelet.hpp"

namespace hexz {

// Last threshold is 2^-1: undiscovered coefficients are then below 0.5 in
// magnitude and discovered ones are known to within 0.125.
inline constexpr int kMinExponent = -1;

class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Parent/children relation plus visiting order over a rows x cols array.
struct CodingTree {
  int rows = 0;
  int cols = 0;
  std::vector<int> parent;  // -1 for roots
  std::vector<int> child_offset;
  std::vector<int> child_list;
  std::vector<int> scan;       // dominant-pass visiting order
  std::vector<int> bottom_up;  // every cell after all of its descendants

  std::size_t size() const { return parent.size(); }
  int index(Cell p) const { return p.row * cols + p.col; }
  Cell cell(int i) const { return {i / cols, i % cols}; }
  std::span<const int> children(int i) const {
    return std::span<const int>(child_list)
        .subspan(static_cast<std::size_t>(child_offset[static_cast<std::size_t>(i)]),
                 static_cast<std::size_t>(child_offset[static_cast<std::size_t>(i) + 1] -
                                          child_offset[static_cast<std::size_t>(i)]));
  }

  // All descendants of cell i (excluding i).
  std::vector<int> descendants(int i) const {
    std::vector<int> out;
    std::vector<int> stack(children(i).begin(), children(i).end());
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      out.push_back(c);
      for (int g : children(c)) stack.push_back(g);
    }
    return out;
  }
};

inline CodingTree build_coding_tree(int rows, int cols, const std::function<std::optional<Cell>(Cell)>& parent_of,
                                    const std::vector<Cell>& scan) {
  CodingTree t;
  t.rows = rows;
  t.cols = cols;
  const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  t.parent.assign(n, -1);
  std::vector<int> counts(n + 1, 0);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (auto p = parent_of(t.cell(i))) {
      if (p->row < 0 || p->row >= rows || p->col < 0 || p->col >= cols || *p == t.cell(i))
        throw InvariantError("coding tree: bad parent");
      t.parent[static_cast<std::size_t>(i)] = t.index(*p);
      ++counts[static_cast<std::size_t>(t.index(*p)) + 1];
    }
  }
  t.child_offset.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) t.child_offset[i + 1] = t.child_offset[i] + counts[i + 1];
  t.child_list.assign(static_cast<std::size_t>(t.child_offset[n]), 0);
  std::vector<int> fill(t.child_offset.begin(), t.child_offset.end() - 1);
  for (int i = 0; i < static_cast<int>(n); ++i)
    if (int p = t.parent[static_cast<std::size_t>(i)]; p >= 0) t.child_list[static_cast<std::size_t>(fill[static_cast<std::size_t>(p)]++)] = i;

  // Breadth-first from the roots; reversed, it lists children before parents.
  std::vector<int> bfs;
  bfs.reserve(n);
  for (int i = 0; i < static_cast<int>(n); ++i)
    if (t.parent[static_cast<std::size_t>(i)] < 0) bfs.push_back(i);
  for (std::size_t k = 0; k < bfs.size(); ++k)
    for (int c : t.children(bfs[k])) bfs.push_back(c);
  if (bfs.size() != n) throw InvariantError("coding tree: cycle or unreachable cells");
  t.bottom_up.assign(bfs.rbegin(), bfs.rend());

  if (scan.size() != n) throw InvariantError("coding tree: scan is not a permutation");
  std::vector<char> seen(n, 0);
  t.scan.reserve(n);
  for (Cell p : scan) {
    const int i = t.index(p);
    if (p.row < 0 || p.row >= rows || p.col < 0 || p.col >= cols || seen[static_cast<std::size_t>(i)])
      throw InvariantError("coding tree: scan is not a permutation");
    seen[static_cast<std::size_t>(i)] = 1;
    t.scan.push_back(i);
  }
  return t;
}

// Spiral-tree relation (also used for every BBHex sub-band) with the
// hexagonal scan.
inline CodingTree make_hex_tree(int rows, int cols) {
  if (rows < 2 || cols < 2 || rows % 2 || cols % 2) throw DomainError("hex tree: dimensions must be even");
  return build_coding_tree(
      rows, cols, [&](Cell p) { return sot_parent(p, rows, cols); }, hex_scan_order(rows, cols));
}

// Classic EZW tree over a Mallat pyramid: coarse cells parent the co-located
// cells of the three coarsest detail bands; elsewhere (r, c) parents
// (2r, 2c) .. (2r+1, 2c+1). Scan: coarse band, then HL, LH, HH per level from
// coarsest to finest, Morton order inside each band.
inline CodingTree make_ezw_tree(int rows, int cols, int levels) {
  const int hr = rows >> levels;
  const int hc = cols >> levels;
  if (levels < 1 || hr < 1 || hc < 1 || (hr << levels) != rows || (hc << levels) != cols)
    throw DomainError("ezw tree: dimensions must be divisible by 2^levels");
  auto parent = [=](Cell p) -> std::optional<Cell> {
    if (p.row < hr && p.col < hc) return std::nullopt;
    if (p.row < 2 * hr && p.col < 2 * hc) return Cell{p.row % hr, p.col % hc};
    return Cell{p.row / 2, p.col / 2};
  };
  std::vector<Cell> scan;
  auto add_band = [&](int r0, int c0, int nr, int nc) {
    for (Cell q : morton_order(nr, nc)) scan.push_back({r0 + q.row, c0 + q.col});
  };
  add_band(0, 0, hr, hc);
  for (int l = levels; l >= 1; --l) {
    const int br = rows >> l;
    const int bc = cols >> l;
    add_band(0, bc, br, bc);
    add_band(br, 0, br, bc);
    add_band(br, bc, br, bc);
  }
  return build_coding_tree(rows, cols, parent, scan);
}

// floor(log2(max |c|)), or nullopt when every coefficient is below
// 2^kMinExponent (no coding passes).
inline std::optional<int> initial_exponent(std::span<const double> coeffs) {
  double m = 0.0;
  for (double v : coeffs) m = std::max(m, std::abs(v));
  if (!(m > 0.0)) return std::nullopt;
  int e = 0;
  std::frexp(m, &e);
  const int top = e - 1;
  if (top < kMinExponent) return std::nullopt;
  if (top > 126) throw DomainError("coefficient magnitude too large to code");
  return top;
}

inline std::optional<double> initial_threshold(std::span<const double> coeffs) {
  if (auto e = initial_exponent(coeffs)) return std::ldexp(1.0, *e);
  return std::nullopt;
}

// Per-pass statistics. counts are indexed by Symbol (P, N, Z, T) and hold
// explicitly coded symbols only; zerotree_cells counts every insignificant
// cell covered by a zero-tree, including trailing ones that were stripped.
struct PassStats {
  int band = 0;
  int pass = 0;  // passes since the stream's top exponent
  int exponent = 0;
  std::array<int, 4> counts{};
  int zerotree_cells = 0;
  int refinement_bits = 0;
  bool complete = true;

  int symbol_total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

namespace detail {

enum : std::uint8_t { kZtFlag = 1, kCovered = 2 };

class PassWalker {
 public:
  explicit PassWalker(const CodingTree& tree) : tree_(tree), flags_(tree.size(), 0) {}

  void reset() { std::fill(flags_.begin(), flags_.end(), 0); }
  bool skipped(int i) const { return flags_[static_cast<std::size_t>(i)] & kZtFlag; }

  // Marks cell i as a zero-tree root and flags its subtree. Returns the
  // number of newly covered insignificant cells.
  int mark_zerotree(int i, const std::vector<char>& significant) {
    int covered = cover(i, significant);
    stack_.assign(tree_.children(i).begin(), tree_.children(i).end());
    while (!stack_.empty()) {
      const int c = stack_.back();
      stack_.pop_back();
      auto& f = flags_[static_cast<std::size_t>(c)];
      if (f & kZtFlag) continue;  // whole subtree already flagged
      f |= kZtFlag;
      covered += cover(c, significant);
      for (int g : tree_.children(c)) stack_.push_back(g);
    }
    return covered;
  }

 private:
  int cover(int i, const std::vector<char>& significant) {
    auto& f = flags_[static_cast<std::size_t>(i)];
    if ((f & kCovered) || significant[static_cast<std::size_t>(i)]) return 0;
    f |= kCovered;
    return 1;
  }

  const CodingTree& tree_;
  std::vector<std::uint8_t> flags_;
  std::vector<int> stack_;
};

struct Interval {
  int cell;
  double low;
  double width;
};

}  // namespace detail

// Encoder state for one tree. pass(e) appends the coding pass at threshold
// 2^e; passes must be issued with strictly decreasing exponents.
class TreeEncoder {
 public:
  TreeEncoder(std::span<const double> values, const CodingTree& tree)
      : values_(values), tree_(tree), significant_(tree.size(), 0), desc_max_(tree.size(), 0.0), walker_(tree) {
    if (values.size() != tree.size()) throw DomainError("encode_tree: size mismatch");
  }

  void pass(int e, BitWriter& out, PassStats& stats) {
    const double T = std::ldexp(1.0, e);
    for (int i : tree_.bottom_up) {
      double m = 0.0;
      for (int c : tree_.children(i)) {
        const double own = significant_[static_cast<std::size_t>(c)] ? 0.0 : std::abs(values_[static_cast<std::size_t>(c)]);
        m = std::max({m, own, desc_max_[static_cast<std::size_t>(c)]});
      }
      desc_max_[static_cast<std::size_t>(i)] = m;
    }
    walker_.reset();
    symbols_.clear();
    for (int i : tree_.scan) {
      if (walker_.skipped(i) || significant_[static_cast<std::size_t>(i)]) continue;
      const double v = values_[static_cast<std::size_t>(i)];
      if (std::abs(v) >= T) {
        symbols_.push_back(v < 0 ? Symbol::N : Symbol::P);
        significant_[static_cast<std::size_t>(i)] = 1;
        subordinate_.push_back({i, T, T});
      } else if (desc_max_[static_cast<std::size_t>(i)] < T) {
        symbols_.push_back(Symbol::T);
        stats.zerotree_cells += walker_.mark_zerotree(i, significant_);
      } else {
        symbols_.push_back(Symbol::Z);
      }
    }
    while (!symbols_.empty() && symbols_.back() == Symbol::T) symbols_.pop_back();
    for (Symbol s : symbols_) {
      huffman_put(out, s);
      ++stats.counts[static_cast<std::size_t>(s)];
    }
    huffman_put(out, Symbol::Sep);
    for (auto& entry : subordinate_) {
      const bool bit = std::abs(values_[static_cast<std::size_t>(entry.cell)]) - entry.low >= T / 2;
      out.put(bit);
      if (bit) entry.low += T / 2;
      entry.width = T / 2;
    }
    stats.refinement_bits = static_cast<int>(subordinate_.size());
  }

 private:
  std::span<const double> values_;
  const CodingTree& tree_;
  std::vector<char> significant_;
  std::vector<double> desc_max_;
  detail::PassWalker walker_;
  std::vector<detail::Interval> subordinate_;
  std::vector<Symbol> symbols_;
};

// Decoder state for one tree; mirrors TreeEncoder.
class TreeDecoder {
 public:
  explicit TreeDecoder(const CodingTree& tree)
      : tree_(tree), significant_(tree.size(), 0), negative_(tree.size(), 0), walker_(tree) {}

  // Returns false when the payload ran out inside this pass.
  bool pass(int e, BitReader& in, PassStats& stats) {
    const double T = std::ldexp(1.0, e);
    walker_.reset();
    bool separator = false;
    bool exhausted = false;
    for (int i : tree_.scan) {
      if (walker_.skipped(i) || significant_[static_cast<std::size_t>(i)]) continue;
      Symbol s = Symbol::T;
      if (!separator && !exhausted) {
        if (auto got = huffman_get(in)) {
          if (*got == Symbol::Sep) {
            separator = true;
          } else {
            s = *got;
            ++stats.counts[static_cast<std::size_t>(s)];
          }
        } else {
          exhausted = true;
        }
      }
      if (s == Symbol::P || s == Symbol::N) {
        significant_[static_cast<std::size_t>(i)] = 1;
        negative_[static_cast<std::size_t>(i)] = s == Symbol::N;
        subordinate_.push_back({i, T, T});
      } else if (s == Symbol::T) {
        stats.zerotree_cells += walker_.mark_zerotree(i, significant_);
      }
    }
    if (!separator && !exhausted) {
      // Every cell was coded explicitly; the separator must follow.
      auto got = huffman_get(in);
      if (!got) {
        exhausted = true;
      } else if (*got != Symbol::Sep) {
        throw FormatError("decode: expected pass separator");
      }
    }
    if (!exhausted) {
      for (auto& entry : subordinate_) {
        auto bit = in.get();
        if (!bit) {
          exhausted = true;
          break;
        }
        if (*bit) entry.low += T / 2;
        entry.width = T / 2;
        ++stats.refinement_bits;
      }
    }
    stats.complete = !exhausted;
    return !exhausted;
  }

  void publish(std::span<double> out) const {
    if (out.size() != tree_.size()) throw DomainError("decode_tree: size mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& s : subordinate_)
      out[static_cast<std::size_t>(s.cell)] = (negative_[static_cast<std::size_t>(s.cell)] ? -1.0 : 1.0) * (s.low + s.width / 2);
  }

 private:
  const CodingTree& tree_;
  std::vector<char> significant_;
  std::vector<char> negative_;
  detail::PassWalker walker_;
  std::vector<detail::Interval> subordinate_;
};

// Encodes one tree over `values` (indexed like the tree's cells) with the
// full ladder from its own top exponent. Returns that exponent (kNoPasses if
// none).
inline std::int8_t encode_tree(std::span<const double> values, const CodingTree& tree, BitWriter& out,
                               std::vector<PassStats>* trace = nullptr, int band = 0) {
  TreeEncoder enc(values, tree);
  const auto top = initial_exponent(values);
  if (!top) return kNoPasses;
  for (int e = *top; e >= kMinExponent; --e) {
    PassStats stats{band, *top - e, e};
    enc.pass(e, out, stats);
    if (trace) trace->push_back(stats);
  }
  return static_cast<std::int8_t>(*top);
}

inline void check_exponent(std::int8_t top) {
  if (top != kNoPasses && top < kMinExponent) throw FormatError("hxc: threshold exponent below the minimum");
}

// Decodes one tree into `out`. Returns false when the payload ran out before
// the last pass finished.
inline bool decode_tree(BitReader& in, const CodingTree& tree, std::int8_t top, std::span<double> out,
                        std::vector<PassStats>* trace = nullptr, int band = 0) {
  check_exponent(top);
  TreeDecoder dec(tree);
  bool more = true;
  if (top != kNoPasses) {
    for (int e = top; e >= kMinExponent && more; --e) {
      PassStats stats{band, top - e, e};
      more = dec.pass(e, in, stats);
      if (trace) trace->push_back(stats);
    }
  }
  dec.publish(out);
  return more;
}

// ---------------------------------------------------------------------------
// Scheme-level codecs.

struct EncodeReport {
  CodeStream stream;
  std::vector<PassStats> passes;  // statistics of the untruncated encoding
};

inline std::uint16_t checked_u16(int v, const char* what) {
  if (v < 0 || v > 0xFFFF) throw DomainError(std::string(what) + " does not fit the stream header");
  return static_cast<std::uint16_t>(v);
}

inline CodeStream finish_stream(StreamHeader header, const BitWriter& bits, std::size_t budget_bits) {
  if (bits.size() > 0xFFFFFFFFu) throw DomainError("payload exceeds 2^32 bits");
  header.payload_bits = static_cast<std::uint32_t>(bits.size());
  CodeStream s{std::move(header), bits.bytes()};
  return budget_bits ? truncate_stream(std::move(s), budget_bits) : s;
}

// Band order for BBHex: coarse, then D1, D2, D3 from the coarsest level to
// the finest.
struct BandRef {
  int level;  // 0 = coarse
  int band;
};

inline std::vector<BandRef> bbhex_band_order(int levels) {
  std::vector<BandRef> order{{0, 0}};
  for (int l = levels; l >= 1; --l)
    for (int b = 1; b <= 3; ++b) order.push_back({l, b});
  return order;
}

inline RealGrid& band_of(WaveletPyramid& pyr, BandRef b) { return b.level == 0 ? pyr.coarse : pyr.detail(b.level, b.band); }
inline const RealGrid& band_of(const WaveletPyramid& pyr, BandRef b) {
  return b.level == 0 ? pyr.coarse : pyr.detail(b.level, b.band);
}

inline EncodeReport encode_hex_pyramid(const WaveletPyramid& pyr, Scheme scheme, std::size_t budget_bits = 0) {
  if (!is_hex_scheme(scheme)) throw DomainError("encode_hex_pyramid: not a hexagonal scheme");
  EncodeReport rep;
  StreamHeader h;
  h.scheme = scheme;
  h.tree_rows = checked_u16(pyr.padded_rows(), "tree rows");
  h.tree_cols = checked_u16(pyr.padded_cols(), "tree cols");
  h.orig_width = checked_u16(pyr.hex_width, "width");
  h.orig_rows = checked_u16(pyr.orig_rows, "rows");
  h.levels = static_cast<std::uint8_t>(pyr.levels);
  BitWriter bits;
  if (scheme == Scheme::SBHex) {
    const SpiralTree tree = spiral_map(pyr);
    const CodingTree ct = make_hex_tree(tree.rows(), tree.cols());
    h.exponents.push_back(encode_tree(tree.data.values(), ct, bits, &rep.passes));
  } else {
    const auto order = bbhex_band_order(pyr.levels);
    std::vector<CodingTree> trees;
    std::vector<TreeEncoder> encoders;
    trees.reserve(order.size());
    encoders.reserve(order.size());
    int top = kNoPasses;
    for (const BandRef& b : order) {
      const RealGrid& band = band_of(pyr, b);
      trees.push_back(make_hex_tree(band.rows(), band.cols()));
      encoders.emplace_back(band.values(), trees.back());
      const auto e = initial_exponent(band.values());
      h.exponents.push_back(e ? static_cast<std::int8_t>(*e) : kNoPasses);
      if (e) top = std::max(top, *e);
    }
    for (int e = top; top != kNoPasses && e >= kMinExponent; --e)
      for (std::size_t k = 0; k < order.size(); ++k) {
        PassStats stats{static_cast<int>(k), top - e, e};
        if (h.exponents[k] == kNoPasses || h.exponents[k] < e)
          stats.zerotree_cells = static_cast<int>(trees[k].size());  // implied: nothing coded yet
        else
          encoders[k].pass(e, bits, stats);
        rep.passes.push_back(stats);
      }
  }
  rep.stream = finish_stream(std::move(h), bits, budget_bits);
  return rep;
}

inline EncodeReport encode_hex_report(const IndexMap& map, Scheme scheme, int levels, std::size_t budget_bits = 0,
                                      const FilterBank& bank = default_filter_bank()) {
  return encode_hex_pyramid(dhwt_forward(map, levels, bank), scheme, budget_bits);
}

inline CodeStream encode_sbhex(const IndexMap& map, int levels, std::size_t budget_bits = 0,
                               const FilterBank& bank = default_filter_bank()) {
  return encode_hex_report(map, Scheme::SBHex, levels, budget_bits, bank).stream;
}

inline CodeStream encode_bbhex(const IndexMap& map, int levels, std::size_t budget_bits = 0,
                               const FilterBank& bank = default_filter_bank()) {
  return encode_hex_report(map, Scheme::BBHex, levels, budget_bits, bank).stream;
}

namespace detail {
inline void check_hex_header(const StreamHeader& h) {
  const int L = h.levels;
  if (L < 1 || L > kMaxLevels) throw FormatError("hxc: bad level count");
  const int m = 1 << (L + 1);
  if (h.tree_rows == 0 || h.tree_cols == 0 || h.tree_rows % m || h.tree_cols % m)
    throw FormatError("hxc: tree dimensions incompatible with level count");
  if (h.orig_width < 1 || h.orig_rows < 1 || h.orig_rows > h.tree_rows ||
      index_map_cols(h.orig_width, h.orig_rows) > h.tree_cols)
    throw FormatError("hxc: image dimensions exceed the tree");
  const std::size_t expected = h.scheme == Scheme::BBHex ? 1u + 3u * static_cast<unsigned>(L) : 1u;
  if (h.exponents.size() != expected) throw FormatError("hxc: wrong number of threshold exponents");
}
}  // namespace detail

inline std::size_t effective_bits(const CodeStream& s, std::size_t budget_bits) {
  return budget_bits ? std::min<std::size_t>(budget_bits, s.header.payload_bits) : s.header.payload_bits;
}

// Reconstructed wavelet pyramid of a hexagonal stream, using at most
// `budget_bits` payload bits (0 = all).
inline WaveletPyramid decode_hex_pyramid(const CodeStream& s, std::size_t budget_bits = 0,
                                         std::vector<PassStats>* trace = nullptr) {
  const StreamHeader& h = s.header;
  if (!is_hex_scheme(h.scheme)) throw FormatError("hxc: not a hexagonal stream");
  detail::check_hex_header(h);
  WaveletPyramid pyr;
  pyr.levels = h.levels;
  pyr.hex_width = h.orig_width;
  pyr.orig_rows = h.orig_rows;
  pyr.orig_cols = index_map_cols(h.orig_width, h.orig_rows);
  pyr.coarse = RealGrid(h.tree_rows >> h.levels, h.tree_cols >> h.levels);
  for (int l = 1; l <= h.levels; ++l) {
    const RealGrid band(h.tree_rows >> l, h.tree_cols >> l);
    pyr.details.push_back({band, band, band});
  }
  BitReader in(s.payload, effective_bits(s, budget_bits));
  if (h.scheme == Scheme::SBHex) {
    SpiralTree tree{pyr.levels, pyr.orig_rows, pyr.orig_cols, pyr.hex_width, RealGrid(h.tree_rows, h.tree_cols)};
    const CodingTree ct = make_hex_tree(tree.rows(), tree.cols());
    decode_tree(in, ct, h.exponents[0], tree.data.values(), trace);
    return spiral_unmap(tree);
  }
  const auto order = bbhex_band_order(pyr.levels);
  std::vector<CodingTree> trees;
  std::vector<TreeDecoder> decoders;
  trees.reserve(order.size());
  decoders.reserve(order.size());
  int top = kNoPasses;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const RealGrid& band = band_of(pyr, order[k]);
    trees.push_back(make_hex_tree(band.rows(), band.cols()));
    decoders.emplace_back(trees.back());
    check_exponent(h.exponents[k]);
    if (h.exponents[k] != kNoPasses) top = std::max<int>(top, h.exponents[k]);
  }
  bool more = true;
  for (int e = top; top != kNoPasses && e >= kMinExponent && more; --e)
    for (std::size_t k = 0; k < order.size() && more; ++k) {
      PassStats stats{static_cast<int>(k), top - e, e};
      if (h.exponents[k] == kNoPasses || h.exponents[k] < e)
        stats.zerotree_cells = static_cast<int>(trees[k].size());
      else
        more = decoders[k].pass(e, in, stats);
      if (trace) trace->push_back(stats);
    }
  for (std::size_t k = 0; k < order.size(); ++k) decoders[k].publish(band_of(pyr, order[k]).values());
  return pyr;
}

inline IndexMap decode_hex(const CodeStream& s, std::size_t budget_bits = 0,
                           const FilterBank& bank = default_filter_bank()) {
  return dhwt_inverse(decode_hex_pyramid(s, budget_bits), bank);
}

inline IndexMap decode_sbhex(const CodeStream& s, std::size_t budget_bits = 0,
                             const FilterBank& bank = default_filter_bank()) {
  if (s.header.scheme != Scheme::SBHex) throw FormatError("hxc: not an SBHex stream");
  return decode_hex(s, budget_bits, bank);
}

inline IndexMap decode_bbhex(const CodeStream& s, std::size_t budget_bits = 0,
                             const FilterBank& bank = default_filter_bank()) {
  if (s.header.scheme != Scheme::BBHex) throw FormatError("hxc: not a BBHex stream");
  return decode_hex(s, budget_bits, bank);
}

inline EncodeReport encode_ezw_pyramid(const CartPyramid& pyr, std::size_t budget_bits = 0) {
  EncodeReport rep;
  StreamHeader h;
  h.scheme = Scheme::EzwCartesian;
  h.tree_rows = checked_u16(pyr.data.rows(), "tree rows");
  h.tree_cols = checked_u16(pyr.data.cols(), "tree cols");
  h.orig_width = checked_u16(pyr.orig_cols, "width");
  h.orig_rows = checked_u16(pyr.orig_rows, "rows");
  h.levels = static_cast<std::uint8_t>(pyr.levels);
  BitWriter bits;
  const CodingTree ct = make_ezw_tree(pyr.data.rows(), pyr.data.cols(), pyr.levels);
  h.exponents.push_back(encode_tree(pyr.data.values(), ct, bits, &rep.passes));
  rep.stream = finish_stream(std::move(h), bits, budget_bits);
  return rep;
}

inline EncodeReport encode_ezw_report(const RealGrid& img, int levels, std::size_t budget_bits = 0) {
  return encode_ezw_pyramid(dwt2_forward(img, levels), budget_bits);
}

inline CodeStream encode_ezw_cart(const RealGrid& img, int levels, std::size_t budget_bits = 0) {
  return encode_ezw_report(img, levels, budget_bits).stream;
}

inline CartPyramid decode_ezw_pyramid(const CodeStream& s, std::size_t budget_bits = 0,
                                      std::vector<PassStats>* trace = nullptr) {
  const StreamHeader& h = s.header;
  if (h.scheme != Scheme::EzwCartesian) throw FormatError("hxc: not an EZW stream");
  const int L = h.levels;
  if (L < 1 || L > kMaxLevels || h.tree_rows == 0 || h.tree_cols == 0 || h.tree_rows % (1 << L) ||
      h.tree_cols % (1 << L))
    throw FormatError("hxc: tree dimensions incompatible with level count");
  if (h.orig_width < 1 || h.orig_rows < 1 || h.orig_width > h.tree_cols || h.orig_rows > h.tree_rows)
    throw FormatError("hxc: image dimensions exceed the tree");
  if (h.exponents.size() != 1) throw FormatError("hxc: wrong number of threshold exponents");
  CartPyramid pyr{L, h.orig_rows, h.orig_width, RealGrid(h.tree_rows, h.tree_cols)};
  BitReader in(s.payload, effective_bits(s, budget_bits));
  const CodingTree ct = make_ezw_tree(h.tree_rows, h.tree_cols, L);
  decode_tree(in, ct, h.exponents[0], pyr.data.values(), trace);
  return pyr;
}

inline RealGrid decode_ezw_cart(const CodeStream& s, std::size_t budget_bits = 0) {
  return dwt2_inverse(decode_ezw_pyramid(s, budget_bits));
}

// Dominant-pass statistics recovered by walking the decoder over a stream.
inline std::vector<PassStats> stream_pass_stats(const CodeStream& s) {
  std::vector<PassStats> trace;
  if (is_hex_scheme(s.header.scheme))
    decode_hex_pyramid(s, 0, &trace);
  else
    decode_ezw_pyramid(s, 0, &trace);
  return trace;
}

}  // namespace hexz
