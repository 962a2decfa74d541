#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexz {

// Malformed or unreadable container/bitstream data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller handed in dimensions or coordinates outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Dense row-major 2-D array.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(checked_size(rows, cols), fill) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(int r, int c) noexcept {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const noexcept {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  T& operator[](Cell p) noexcept { return (*this)(p.row, p.col); }
  const T& operator[](Cell p) const noexcept { return (*this)(p.row, p.col); }

  bool in_bounds(int r, int c) const noexcept {
    return r >= 0 && r < rows_ && c >= 0 && c < cols_;
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  std::span<T> row(int r) noexcept {
    return std::span<T>(data_).subspan(static_cast<std::size_t>(r) * cols_, cols_);
  }
  std::span<const T> row(int r) const noexcept {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(r) * cols_, cols_);
  }

  void fill(const T& v) { std::fill(data_.begin(), data_.end(), v); }

  // Copy of the [r0, r0+nr) x [c0, c0+nc) window.
  Grid block(int r0, int c0, int nr, int nc) const {
    Grid out(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  void paste(const Grid& src, int r0, int c0) {
    for (int r = 0; r < src.rows(); ++r)
      for (int c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static std::size_t checked_size(int rows, int cols) {
    if (rows < 0 || cols < 0) throw DomainError("negative grid dimension");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RealGrid = Grid<double>;

inline int floor_div2(int v) noexcept { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

inline int round_up(int v, int multiple) noexcept {
  return (v + multiple - 1) / multiple * multiple;
}

template <typename T>
double max_abs_diff(const Grid<T>& a, const Grid<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    double d = static_cast<double>(av[i]) - static_cast<double>(bv[i]);
    m = std::max(m, d < 0 ? -d : d);
  }
  return m;
}

}  // namespace hexz
