#pragma once

// Hexagonal lattice geometry and the rectangular index-map embedding.
//
// A lattice site is h * V * k with V = [v1 v2], v1 = (1, 0) and
// v2 = (-1/2, sqrt(3)/2). The index map stores site k = (k1, k2) at
// row k2, column k1. A brick-shaped (rectangular) region of the lattice then
// appears as a sheared parallelogram; cells outside it are zero padding.

#include <array>
#include <cmath>
#include <numbers>

#include "hexz/grid.hpp"

namespace hexz {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  double norm() const { return std::hypot(x, y); }
};

struct LatticeBasis {
  static constexpr Vec2 v1{1.0, 0.0};
  static constexpr Vec2 v2{-0.5, std::numbers::sqrt3 / 2.0};

  static constexpr double determinant() { return v1.x * v2.y - v2.x * v1.y; }
};

// h * V * (k1, k2).
constexpr Vec2 lattice_point(int k1, int k2, double h = 1.0) {
  return {h * (k1 * LatticeBasis::v1.x + k2 * LatticeBasis::v2.x),
          h * (k1 * LatticeBasis::v1.y + k2 * LatticeBasis::v2.y)};
}

// Inverse of lattice_point for real-valued lattice coordinates.
inline Vec2 lattice_coords(Vec2 p, double h = 1.0) {
  const double k2 = p.y / (h * LatticeBasis::v2.y);
  const double k1 = p.x / h + 0.5 * k2;
  return {k1, k2};
}

// Six nearest neighbours as (d_row, d_col); each has spatial length h.
inline constexpr std::array<Cell, 6> kHexOffsets{
    Cell{0, 1}, Cell{0, -1}, Cell{1, 0}, Cell{-1, 0}, Cell{1, 1}, Cell{-1, -1}};

inline std::array<Cell, 6> hex_neighbors(int r, int c) {
  std::array<Cell, 6> out{};
  for (std::size_t i = 0; i < kHexOffsets.size(); ++i)
    out[i] = {r + kHexOffsets[i].row, c + kHexOffsets[i].col};
  return out;
}

struct ColumnRange {
  int begin = 0;
  int end = 0;  // exclusive
  bool contains(int c) const { return c >= begin && c < end; }
  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

inline ColumnRange valid_columns(int r, int width) {
  const int b = floor_div2(r);
  return {b, b + width};
}

inline int index_map_cols(int width, int rows) { return width + (rows - 1) / 2; }

// Index map of a width x rows brick of hexagonal samples.
class IndexMap {
 public:
  IndexMap() = default;
  IndexMap(int width, int rows)
      : width_(width), data_(rows, index_map_cols(width, rows), 0.0) {}

  int width() const noexcept { return width_; }
  int rows() const noexcept { return data_.rows(); }
  int cols() const noexcept { return data_.cols(); }
  std::size_t sample_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(rows());
  }

  bool is_valid(int r, int c) const noexcept {
    return r >= 0 && r < rows() && valid_columns(r, width_).contains(c);
  }

  double& operator()(int r, int c) noexcept { return data_(r, c); }
  double operator()(int r, int c) const noexcept { return data_(r, c); }

  const RealGrid& grid() const noexcept { return data_; }

  // Replaces the backing array; padded cells are re-zeroed.
  void assign(const RealGrid& g) {
    if (g.rows() != data_.rows() || g.cols() != data_.cols())
      throw DomainError("IndexMap::assign: dimension mismatch");
    data_ = g;
    clear_padding();
  }

  void clear_padding() {
    for (int r = 0; r < rows(); ++r) {
      const auto vc = valid_columns(r, width_);
      for (int c = 0; c < cols(); ++c)
        if (!vc.contains(c)) data_(r, c) = 0.0;
    }
  }

  template <typename F>
  void for_each_valid(F&& f) const {
    for (int r = 0; r < rows(); ++r) {
      const auto vc = valid_columns(r, width_);
      for (int c = vc.begin; c < vc.end; ++c) f(r, c);
    }
  }

  friend bool operator==(const IndexMap&, const IndexMap&) = default;

 private:
  int width_ = 0;
  RealGrid data_;
};

inline IndexMap build_index_map(int width, int rows) {
  if (width < 1 || rows < 1) throw DomainError("build_index_map: dimensions must be >= 1");
  return IndexMap(width, rows);
}

}  // namespace hexz
