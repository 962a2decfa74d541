#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "hexz/lattice.hpp"

using namespace hexz;

TEST(Lattice, BasisConstants) {
  EXPECT_EQ(LatticeBasis::v1.x, 1.0);
  EXPECT_EQ(LatticeBasis::v1.y, 0.0);
  EXPECT_EQ(LatticeBasis::v2.x, -0.5);
  EXPECT_NEAR(LatticeBasis::v2.y, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(std::abs(LatticeBasis::determinant()), std::sqrt(3.0) / 2.0, 1e-12);
}

TEST(Lattice, PointExamples) {
  const Vec2 o = lattice_point(0, 0);
  EXPECT_EQ(o.x, 0.0);
  EXPECT_EQ(o.y, 0.0);
  const Vec2 a = lattice_point(1, 0);
  EXPECT_EQ(a.x, 1.0);
  EXPECT_EQ(a.y, 0.0);
  const Vec2 b = lattice_point(0, 1);
  EXPECT_DOUBLE_EQ(b.x, -0.5);
  EXPECT_DOUBLE_EQ(b.y, std::sqrt(3.0) / 2.0);
  const Vec2 c = lattice_point(3, -2, 2.5);
  EXPECT_DOUBLE_EQ(c.x, 2.5 * (3 + 1));
  EXPECT_DOUBLE_EQ(c.y, 2.5 * -2 * std::sqrt(3.0) / 2.0);
}

TEST(Lattice, CoordsInvertPoint) {
  for (int k1 = -5; k1 <= 5; ++k1)
    for (int k2 = -5; k2 <= 5; ++k2) {
      const Vec2 k = lattice_coords(lattice_point(k1, k2, 0.7), 0.7);
      EXPECT_NEAR(k.x, k1, 1e-12);
      EXPECT_NEAR(k.y, k2, 1e-12);
    }
}

TEST(Lattice, BuildIndexMapDims) {
  EXPECT_EQ(build_index_map(2, 2).cols(), 2);
  const IndexMap m = build_index_map(4, 4);
  EXPECT_EQ(m.rows(), 4);
  EXPECT_EQ(m.cols(), 5);
  const IndexMap big = build_index_map(256, 512);
  EXPECT_EQ(big.rows(), 512);
  EXPECT_EQ(big.cols(), 511);
  EXPECT_EQ(big.sample_count(), 131072u);
  for (double v : big.grid().values()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(build_index_map(0, 4), DomainError);
  EXPECT_THROW(build_index_map(4, 0), DomainError);
}

// Enumerate the sites of a width x rows brick directly: row r holds the sites
// whose x position lies in the brick, i.e. k1 - r/2 in [-1/2, width - 1].
TEST(Lattice, IndexMapMatchesBrickEnumeration) {
  for (int rows : {1, 2, 3, 4, 7}) {
    const int width = 4;
    int max_col = 0;
    for (int r = 0; r < rows; ++r) {
      std::set<int> cols;
      for (int k1 = -10; k1 < 20; ++k1) {
        const double x = lattice_point(k1, r).x;
        if (x >= -0.5 && x <= width - 1 && static_cast<int>(cols.size()) < width) cols.insert(k1);
      }
      ASSERT_EQ(static_cast<int>(cols.size()), width);
      EXPECT_EQ(*cols.begin(), valid_columns(r, width).begin);
      EXPECT_EQ(*cols.rbegin() + 1, valid_columns(r, width).end);
      max_col = std::max(max_col, *cols.rbegin());
    }
    EXPECT_EQ(max_col + 1, index_map_cols(width, rows));
  }
}

TEST(Lattice, ValidColumnsExamples) {
  EXPECT_EQ(valid_columns(0, 256).begin, 0);
  EXPECT_EQ(valid_columns(0, 256).end, 256);
  EXPECT_EQ(valid_columns(5, 4).begin, 2);
  EXPECT_EQ(valid_columns(5, 4).end, 6);
  EXPECT_EQ(valid_columns(511, 256).begin, 255);
  EXPECT_EQ(valid_columns(511, 256).end, 511);
}

TEST(Lattice, NeighborsAreUnitDistance) {
  const auto n = hex_neighbors(0, 0);
  const std::set<std::pair<int, int>> got{{n[0].row, n[0].col}, {n[1].row, n[1].col}, {n[2].row, n[2].col},
                                          {n[3].row, n[3].col}, {n[4].row, n[4].col}, {n[5].row, n[5].col}};
  const std::set<std::pair<int, int>> want{{0, 1}, {0, -1}, {1, 0}, {-1, 0}, {1, 1}, {-1, -1}};
  EXPECT_EQ(got, want);
  // exactly these six offsets (and no others in a 5x5 window) have length 1
  std::set<std::pair<int, int>> unit;
  for (int dr = -2; dr <= 2; ++dr)
    for (int dc = -2; dc <= 2; ++dc)
      if (std::abs(lattice_point(dc, dr).norm() - 1.0) < 1e-12) unit.insert({dr, dc});
  EXPECT_EQ(unit, want);
  EXPECT_NEAR(lattice_point(-1, 1).norm(), std::sqrt(3.0), 1e-12);
  const auto m = hex_neighbors(7, -3);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(m[i].row, 7 + kHexOffsets[i].row);
    EXPECT_EQ(m[i].col, -3 + kHexOffsets[i].col);
  }
}

TEST(Lattice, BijectionAndRowTranslation) {
  const IndexMap m = build_index_map(9, 12);
  std::set<std::pair<long, long>> seen;
  m.for_each_valid([&](int r, int c) {
    const Vec2 p = lattice_point(c, r, 1.5);
    EXPECT_TRUE(seen.insert({std::lround(p.x * 1e6), std::lround(p.y * 1e6)}).second);
    if (r >= 2 && m.is_valid(r - 2, c - 1)) {
      const Vec2 d = lattice_point(c, r, 1.5) - lattice_point(c - 1, r - 2, 1.5);
      EXPECT_NEAR(d.x, 0.0, 1e-12);
      EXPECT_NEAR(d.y, 1.5 * std::sqrt(3.0), 1e-12);
    }
  });
  EXPECT_EQ(seen.size(), m.sample_count());
}

TEST(Lattice, PaddingStaysZero) {
  IndexMap m = build_index_map(5, 9);
  m.for_each_valid([&](int r, int c) { m(r, c) = r * 100 + c + 1; });
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      if (!m.is_valid(r, c)) {
        EXPECT_EQ(m(r, c), 0.0);
      }
    }
  RealGrid g = m.grid();
  g.fill(3.0);
  m.assign(g);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) EXPECT_EQ(m(r, c), m.is_valid(r, c) ? 3.0 : 0.0);
}
