#pragma once

// Moving images between Cartesian rasters and hexagonal index maps.
//
// Both grids cover one shared box. A Cartesian n x m raster spans pixel
// centres [0, m-1] x [0, n-1]; analytic sources see the same box as
// [-1, 1]^2. The hexagonal raster contributes the rectangle on which every
// row has samples, [0, (W - 1.5)h] x [0, (rows - 1)h*sqrt(3)/2], mapped
// affinely onto the box.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "hexz/grid.hpp"
#include "hexz/lattice.hpp"

namespace hexz {

using CartImage = RealGrid;

struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<std::array<std::uint8_t, 3>> pixels;  // row-major

  RgbImage() = default;
  RgbImage(int h, int w) : height(h), width(w), pixels(static_cast<std::size_t>(h) * static_cast<std::size_t>(w)) {
    if (h < 1 || w < 1) throw DomainError("RgbImage: dimensions must be >= 1");
  }
  std::array<std::uint8_t, 3>& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * width + c]; }
  const std::array<std::uint8_t, 3>& at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * width + c]; }
};

// BT.601 studio-range luma.
inline CartImage rgb_to_y(const RgbImage& img) {
  CartImage y(img.height, img.width);
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      const auto& p = img.at(r, c);
      y(r, c) = 16.0 + (65.481 * p[0] + 128.553 * p[1] + 24.966 * p[2]) / 255.0;
    }
  return y;
}

// Keys cubic convolution kernel.
inline double keys_kernel(double t, double a = -0.5) {
  t = std::abs(t);
  if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

// x is the column coordinate, y the row coordinate; indices clamp to the edge.
inline double keys_bicubic_sample(const CartImage& img, double x, double y) {
  if (img.empty()) throw DomainError("keys_bicubic_sample: empty image");
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  std::array<double, 4> wx{}, wy{};
  for (int k = 0; k < 4; ++k) {
    wx[static_cast<std::size_t>(k)] = keys_kernel(x - (x0 - 1 + k));
    wy[static_cast<std::size_t>(k)] = keys_kernel(y - (y0 - 1 + k));
  }
  double acc = 0.0;
  for (int j = 0; j < 4; ++j) {
    const int r = std::clamp(y0 - 1 + j, 0, img.rows() - 1);
    double row = 0.0;
    for (int i = 0; i < 4; ++i) row += wx[static_cast<std::size_t>(i)] * img(r, std::clamp(x0 - 1 + i, 0, img.cols() - 1));
    acc += wy[static_cast<std::size_t>(j)] * row;
  }
  return acc;
}

// Affine correspondence between a hexagonal raster and the shared box.
class HexGeometry {
 public:
  HexGeometry(int width, int rows, double h) : width_(width), rows_(rows), h_(h) {
    if (width < 2 || rows < 2) throw DomainError("HexGeometry: need at least 2 x 2 samples");
    if (!(h > 0.0)) throw DomainError("HexGeometry: h must be positive");
  }

  double extent_x() const { return (width_ - 1.5) * h_; }
  double extent_y() const { return (rows_ - 1) * h_ * std::numbers::sqrt3 / 2.0; }

  // Position of cell (r, c) as fractions of the box, (0,0)..(1,1) on the
  // covered rectangle (odd rows reach half a step outside).
  Vec2 unit_of(int r, int c) const {
    const Vec2 p = lattice_point(c, r, h_);
    return {p.x / extent_x(), p.y / extent_y()};
  }

  // Fractional lattice coordinates (k1 = column, k2 = row) of a box point.
  Vec2 lattice_of_unit(double u, double v) const { return lattice_coords({u * extent_x(), v * extent_y()}, h_); }

  int width() const { return width_; }
  int rows() const { return rows_; }
  double h() const { return h_; }

 private:
  int width_;
  int rows_;
  double h_;
};

// Evaluates f(x, y) on [-1,1]^2 at every valid cell.
inline IndexMap sample_hex(const std::function<double(double, double)>& f, int width, int rows, double h = 1.0) {
  const HexGeometry geo(width, rows, h);
  IndexMap m = build_index_map(width, rows);
  m.for_each_valid([&](int r, int c) {
    const Vec2 u = geo.unit_of(r, c);
    m(r, c) = f(-1.0 + 2.0 * u.x, -1.0 + 2.0 * u.y);
  });
  return m;
}

// Evaluates f on an n-row, m-column Cartesian raster covering [-1,1]^2.
inline CartImage sample_cart(const std::function<double(double, double)>& f, int rows, int cols) {
  if (rows < 2 || cols < 2) throw DomainError("sample_cart: need at least 2 x 2 pixels");
  CartImage img(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) img(i, j) = f(-1.0 + 2.0 * j / (cols - 1), -1.0 + 2.0 * i / (rows - 1));
  return img;
}

inline IndexMap resample_to_hex(const CartImage& src, int width, int rows, double h = 1.0) {
  if (src.rows() < 2 || src.cols() < 2) throw DomainError("resample_to_hex: source too small");
  const HexGeometry geo(width, rows, h);
  IndexMap m = build_index_map(width, rows);
  m.for_each_valid([&](int r, int c) {
    const Vec2 u = geo.unit_of(r, c);
    m(r, c) = keys_bicubic_sample(src, u.x * (src.cols() - 1), u.y * (src.rows() - 1));
  });
  return m;
}

// Resamples src onto a rows x cols Cartesian raster over the same box.
inline CartImage resample_cart(const CartImage& src, int rows, int cols) {
  if (rows < 2 || cols < 2) throw DomainError("resample_cart: need at least 2 x 2 pixels");
  CartImage out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      out(i, j) = keys_bicubic_sample(src, static_cast<double>(j) * (src.cols() - 1) / (cols - 1),
                                      static_cast<double>(i) * (src.rows() - 1) / (rows - 1));
  return out;
}

// Piecewise-linear interpolation on the lattice triangulation at fractional
// lattice coordinates (k1, k2). Throws when a vertex carrying weight lies
// outside the raster.
inline double interpolate_hex(const IndexMap& map, double k1, double k2) {
  constexpr double kEps = 1e-9;
  int a = static_cast<int>(std::floor(k1));
  int b = static_cast<int>(std::floor(k2));
  double f1 = k1 - a;
  double f2 = k2 - b;
  std::array<Cell, 3> v;
  std::array<double, 3> w;
  if (f1 >= f2) {
    v = {Cell{b, a}, Cell{b, a + 1}, Cell{b + 1, a + 1}};
    w = {1.0 - f1, f1 - f2, f2};
  } else {
    v = {Cell{b, a}, Cell{b + 1, a}, Cell{b + 1, a + 1}};
    w = {1.0 - f2, f2 - f1, f1};
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (map.is_valid(v[i].row, v[i].col)) {
      acc += w[i] * map(v[i].row, v[i].col);
    } else if (std::abs(w[i]) > kEps) {
      throw DomainError("interpolate_hex: query outside the covered region");
    }
  }
  return acc;
}

inline CartImage hex_to_cart(const IndexMap& map, double h, int out_rows, int out_cols) {
  if (out_rows < 2 || out_cols < 2) throw DomainError("hex_to_cart: need at least 2 x 2 pixels");
  const HexGeometry geo(map.width(), map.rows(), h);
  CartImage out(out_rows, out_cols);
  for (int i = 0; i < out_rows; ++i)
    for (int j = 0; j < out_cols; ++j) {
      const Vec2 k = geo.lattice_of_unit(static_cast<double>(j) / (out_cols - 1), static_cast<double>(i) / (out_rows - 1));
      out(i, j) = interpolate_hex(map, k.x, k.y);
    }
  return out;
}

// Synthetic test images on [-1,1]^2.
inline constexpr double kChirpRate = 40.0;
inline constexpr double kCheckerRing = 0.125;
inline constexpr double kCheckerSector = std::numbers::pi / 8.0;

inline double chirp_value(double x, double y) { return 127.5 * (1.0 + std::cos(kChirpRate * (x * x + y * y))); }

inline double checkerboard_value(double x, double y) {
  const double rho = std::hypot(x, y);
  double theta = std::atan2(y, x);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  const auto ring = static_cast<long>(std::floor(rho / kCheckerRing));
  const auto sector = static_cast<long>(std::floor(theta / kCheckerSector));
  return (ring + sector) % 2 == 0 ? 255.0 : 0.0;
}

inline CartImage gen_chirp(int n) {
  if (n < 8) throw DomainError("gen_chirp: n must be >= 8");
  return sample_cart(chirp_value, n, n);
}

inline CartImage gen_checkerboard(int n) {
  if (n < 8) throw DomainError("gen_checkerboard: n must be >= 8");
  return sample_cart(checkerboard_value, n, n);
}

}  // namespace hexz
