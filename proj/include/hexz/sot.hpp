#pragma once

// Spatial-orientation trees for hexagonal sub-band coding.
//
// All coordinates are 0-based (row, col). For an R x C tree (R, C even) the
// four quadrant roots form the central 2x2 core and the parent of a cell is
// found by halving its offset from the centre, so every quadrant is a
// quadtree growing outwards from the core.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexz/grid.hpp"
#include "hexz/wavelet.hpp"

namespace hexz {

enum class Quadrant : std::uint8_t { TopLeft = 0, TopRight = 1, BottomLeft = 2, BottomRight = 3 };

inline constexpr std::array<Quadrant, 4> kQuadrants{Quadrant::TopLeft, Quadrant::TopRight, Quadrant::BottomLeft,
                                                    Quadrant::BottomRight};

inline int quadrant_row(Quadrant q) { return static_cast<int>(q) / 2; }
inline int quadrant_col(Quadrant q) { return static_cast<int>(q) % 2; }

inline const char* quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::TopLeft: return "tl";
    case Quadrant::TopRight: return "tr";
    case Quadrant::BottomLeft: return "bl";
    case Quadrant::BottomRight: return "br";
  }
  return "?";
}

// A rectangular region of the spiral tree. level == 0 marks the coarse band.
struct Slot {
  int level = 0;
  int band = 0;  // 1..3 for details, 0 for coarse
  Quadrant quadrant = Quadrant::TopLeft;
  int ring_row = 0;  // position in the 4x4 ring grid of the slot's level
  int ring_col = 0;
  int row0 = 0;
  int col0 = 0;
  int rows = 0;
  int cols = 0;

  bool contains(int r, int c) const { return r >= row0 && r < row0 + rows && c >= col0 && c < col0 + cols; }
};

struct RingSlot {
  int ring_row;
  int ring_col;
  int band;
  Quadrant quadrant;
};

// Corner slots carry D2, slots on the top/bottom edge D1, slots on the
// left/right edge D3. The layout is self-similar under the central x2
// dilation, so children land in the same band and quadrant one level finer.
inline constexpr std::array<RingSlot, 12> kRingSlots{{
    {0, 0, 2, Quadrant::TopLeft},     {0, 1, 1, Quadrant::TopLeft},     {1, 0, 3, Quadrant::TopLeft},
    {0, 3, 2, Quadrant::TopRight},    {0, 2, 1, Quadrant::TopRight},    {1, 3, 3, Quadrant::TopRight},
    {3, 0, 2, Quadrant::BottomLeft},  {3, 1, 1, Quadrant::BottomLeft},  {2, 0, 3, Quadrant::BottomLeft},
    {3, 3, 2, Quadrant::BottomRight}, {3, 2, 1, Quadrant::BottomRight}, {2, 3, 3, Quadrant::BottomRight},
}};

namespace detail {
inline void check_tree_dims(int rows, int cols, int levels) {
  if (levels < 1 || rows < 2 || cols < 2) throw DomainError("spiral tree: bad dimensions");
  const int m = 1 << (levels + 1);
  if (rows % m || cols % m) throw DomainError("spiral tree: dimensions must be divisible by 2^(levels+1)");
}
}  // namespace detail

// Every slot of an R x C spiral tree with `levels` detail levels: four coarse
// quadrants followed by 12 detail slots per level (finest level first).
inline std::vector<Slot> spiral_layout(int rows, int cols, int levels) {
  detail::check_tree_dims(rows, cols, levels);
  std::vector<Slot> slots;
  const int sr = rows >> (levels + 1);
  const int sc = cols >> (levels + 1);
  for (Quadrant q : kQuadrants) {
    const int i = 1 + quadrant_row(q);
    const int j = 1 + quadrant_col(q);
    slots.push_back({0, 0, q, i, j, rows / 2 + (i - 2) * sr, cols / 2 + (j - 2) * sc, sr, sc});
  }
  for (int l = 1; l <= levels; ++l) {
    const int br = rows >> (l + 1);
    const int bc = cols >> (l + 1);
    for (const auto& rs : kRingSlots)
      slots.push_back({l, rs.band, rs.quadrant, rs.ring_row, rs.ring_col, rows / 2 + (rs.ring_row - 2) * br,
                       cols / 2 + (rs.ring_col - 2) * bc, br, bc});
  }
  return slots;
}

inline std::optional<Slot> slot_of(int r, int c, const std::vector<Slot>& layout) {
  for (const auto& s : layout)
    if (s.contains(r, c)) return s;
  return std::nullopt;
}

struct SpiralTree {
  int levels = 0;
  int orig_rows = 0;
  int orig_cols = 0;
  int hex_width = 0;
  RealGrid data;

  int rows() const { return data.rows(); }
  int cols() const { return data.cols(); }
  friend bool operator==(const SpiralTree&, const SpiralTree&) = default;
};

inline SpiralTree spiral_map(const WaveletPyramid& pyr) {
  const int R = pyr.padded_rows();
  const int C = pyr.padded_cols();
  detail::check_tree_dims(R, C, pyr.levels);
  SpiralTree tree{pyr.levels, pyr.orig_rows, pyr.orig_cols, pyr.hex_width, RealGrid(R, C, 0.0)};
  for (const auto& s : spiral_layout(R, C, pyr.levels)) {
    const RealGrid& band = s.level == 0 ? pyr.coarse : pyr.detail(s.level, s.band);
    if (band.rows() != 2 * s.rows || band.cols() != 2 * s.cols) throw DomainError("spiral_map: band size mismatch");
    tree.data.paste(band.block(quadrant_row(s.quadrant) * s.rows, quadrant_col(s.quadrant) * s.cols, s.rows, s.cols),
                    s.row0, s.col0);
  }
  return tree;
}

inline WaveletPyramid spiral_unmap(const SpiralTree& tree) {
  detail::check_tree_dims(tree.rows(), tree.cols(), tree.levels);
  WaveletPyramid pyr;
  pyr.levels = tree.levels;
  pyr.orig_rows = tree.orig_rows;
  pyr.orig_cols = tree.orig_cols;
  pyr.hex_width = tree.hex_width;
  pyr.coarse = RealGrid(tree.rows() >> tree.levels, tree.cols() >> tree.levels);
  for (int l = 1; l <= tree.levels; ++l) {
    const RealGrid band(tree.rows() >> l, tree.cols() >> l);
    pyr.details.push_back({band, band, band});
  }
  for (const auto& s : spiral_layout(tree.rows(), tree.cols(), tree.levels)) {
    RealGrid& band = s.level == 0 ? pyr.coarse : pyr.detail(s.level, s.band);
    band.paste(tree.data.block(s.row0, s.col0, s.rows, s.cols), quadrant_row(s.quadrant) * s.rows,
               quadrant_col(s.quadrant) * s.cols);
  }
  return pyr;
}

// Hexagonal spiral from the centre cell (ceil(R/2)-1, ceil(C/2)-1). Ring m
// starts one step along (0, 1) from the previous ring's start and walks m
// steps along each of (1,0), (0,-1), (-1,-1), (-1,0), (0,1), (1,1). Cells
// outside the array are skipped.
inline std::vector<Cell> hex_scan_order(int rows, int cols) {
  if (rows < 1 || cols < 1) throw DomainError("hex_scan_order: dimensions must be >= 1");
  static constexpr std::array<Cell, 6> kDirs{Cell{1, 0}, Cell{0, -1}, Cell{-1, -1},
                                             Cell{-1, 0}, Cell{0, 1},  Cell{1, 1}};
  const std::size_t total = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  std::vector<Cell> order;
  order.reserve(total);
  auto emit = [&](Cell p) {
    if (p.row >= 0 && p.row < rows && p.col >= 0 && p.col < cols) order.push_back(p);
  };
  Cell start{(rows + 1) / 2 - 1, (cols + 1) / 2 - 1};
  emit(start);
  for (int m = 1; order.size() < total; ++m) {
    start.col += 1;
    Cell p = start;
    emit(p);
    for (std::size_t d = 0; d < kDirs.size(); ++d)
      for (int s = 0; s < m; ++s) {
        p.row += kDirs[d].row;
        p.col += kDirs[d].col;
        if (d + 1 == kDirs.size() && s + 1 == m) break;  // back at the ring start
        emit(p);
      }
  }
  return order;
}

inline std::array<Cell, 4> quadrant_roots(int rows, int cols) {
  if (rows < 2 || cols < 2 || rows % 2 || cols % 2) throw DomainError("quadrant_roots: dimensions must be even");
  const int hr = rows / 2;
  const int hc = cols / 2;
  return {Cell{hr - 1, hc - 1}, Cell{hr - 1, hc}, Cell{hr, hc - 1}, Cell{hr, hc}};
}

inline bool is_quadrant_root(Cell p, int rows, int cols) {
  const int hr = rows / 2;
  const int hc = cols / 2;
  return (p.row == hr - 1 || p.row == hr) && (p.col == hc - 1 || p.col == hc);
}

// The four dilation-formula children of (r, c), without bounds filtering and
// without excluding the cell itself.
inline std::array<Cell, 4> child_formula(Cell p, int rows, int cols) {
  const int r = 2 * p.row - rows / 2;
  const int c = 2 * p.col - cols / 2;
  return {Cell{r, c}, Cell{r, c + 1}, Cell{r + 1, c}, Cell{r + 1, c + 1}};
}

inline std::vector<Cell> children_of(Cell p, int rows, int cols) {
  if (rows % 2 || cols % 2) throw DomainError("children_of: dimensions must be even");
  if (p.row < 0 || p.row >= rows || p.col < 0 || p.col >= cols) throw DomainError("children_of: cell out of bounds");
  if (is_quadrant_root(p, rows, cols)) throw DomainError("children_of: quadrant roots use root_descendants");
  std::vector<Cell> out;
  for (Cell ch : child_formula(p, rows, cols))
    if (ch.row >= 0 && ch.row < rows && ch.col >= 0 && ch.col < cols) out.push_back(ch);
  return out;
}

// Every cell of the root's quadrant except the root itself.
inline std::vector<Cell> root_descendants(Cell root, int rows, int cols) {
  if (rows % 2 || cols % 2 || !is_quadrant_root(root, rows, cols))
    throw DomainError("root_descendants: not a quadrant root");
  const int r0 = root.row < rows / 2 ? 0 : rows / 2;
  const int c0 = root.col < cols / 2 ? 0 : cols / 2;
  std::vector<Cell> out;
  for (int r = r0; r < r0 + rows / 2; ++r)
    for (int c = c0; c < c0 + cols / 2; ++c)
      if (Cell{r, c} != root) out.push_back({r, c});
  return out;
}

// Parent under the dilation rule; quadrant roots have none. A cell whose
// formula parent is a quadrant root is that root's child.
inline std::optional<Cell> sot_parent(Cell p, int rows, int cols) {
  if (is_quadrant_root(p, rows, cols)) return std::nullopt;
  return Cell{(p.row + rows / 2) >> 1, (p.col + cols / 2) >> 1};
}

// Z-order over an nr x nc block, as local (row, col).
inline std::vector<Cell> morton_order(int nr, int nc) {
  auto spread = [](std::uint32_t v) {
    std::uint64_t x = v;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
  };
  std::vector<std::pair<std::uint64_t, Cell>> keyed;
  keyed.reserve(static_cast<std::size_t>(nr) * static_cast<std::size_t>(nc));
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      keyed.push_back({(spread(static_cast<std::uint32_t>(r)) << 1) | spread(static_cast<std::uint32_t>(c)), {r, c}});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Cell> out;
  out.reserve(keyed.size());
  for (const auto& k : keyed) out.push_back(k.second);
  return out;
}

}  // namespace hexz
