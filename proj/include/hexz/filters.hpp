#pragma once

// Filter banks for the hexagonal (non-separable, four channel) and Cartesian
// (separable DB2) wavelet transforms.

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hexz/grid.hpp"

namespace hexz {

inline constexpr int kTapRadius = 3;
inline constexpr int kTapSize = 2 * kTapRadius + 1;

// 7x7 index-map filter with the origin at the centre cell.
class HexFilter {
 public:
  HexFilter() { taps_.fill(0.0); }
  explicit HexFilter(const std::array<double, kTapSize * kTapSize>& taps) : taps_(taps) {}

  double at(int drow, int dcol) const {
    return taps_[static_cast<std::size_t>((drow + kTapRadius) * kTapSize + dcol + kTapRadius)];
  }
  double& at(int drow, int dcol) {
    return taps_[static_cast<std::size_t>((drow + kTapRadius) * kTapSize + dcol + kTapRadius)];
  }

  double sum() const {
    double s = 0.0;
    for (double t : taps_) s += t;
    return s;
  }

  // Lattice rotation by 2*pi/3: k = (k1, k2) -> (-k2, k1 - k2), i.e.
  // (row, col) -> (col - row, -row). Taps leaving the 7x7 window are an error.
  HexFilter rotated() const {
    HexFilter out;
    for (int r = -kTapRadius; r <= kTapRadius; ++r)
      for (int c = -kTapRadius; c <= kTapRadius; ++c) {
        const double v = at(r, c);
        if (v == 0.0) continue;
        const int nr = c - r;
        const int nc = -r;
        if (std::abs(nr) > kTapRadius || std::abs(nc) > kTapRadius)
          throw DomainError("HexFilter::rotated: support leaves the 7x7 window");
        out.at(nr, nc) = v;
      }
    return out;
  }

  const std::array<double, kTapSize * kTapSize>& taps() const { return taps_; }
  friend bool operator==(const HexFilter&, const HexFilter&) = default;

 private:
  std::array<double, kTapSize * kTapSize> taps_;
};

struct FilterBank {
  std::array<HexFilter, 4> analysis;   // low-pass, then three directional high-pass
  std::array<HexFilter, 4> synthesis;
  friend bool operator==(const FilterBank&, const FilterBank&) = default;
};

namespace detail {

// clang-format off
inline constexpr std::array<double, 49> kAnalysis0{
    0,      0,      0,      0,      0,      0,      0,
    0, -0.125,      0, -0.125,      0,      0,      0,
    0,      0,   0.25,   0.25,      0,      0,      0,
    0, -0.125,   0.25,   1.25,   0.25, -0.125,      0,
    0,      0,      0,   0.25,   0.25,      0,      0,
    0,      0,      0, -0.125,      0, -0.125,      0,
    0,      0,      0,      0,      0,      0,      0};
inline constexpr std::array<double, 49> kAnalysis1{
    0,    0,    0,    0, 0, 0, 0,
    0,    0,    0,    0, 0, 0, 0,
    0,    0,    0,    0, 0, 0, 0,
    0, -0.5,    1, -0.5, 0, 0, 0,
    0,    0,    0,    0, 0, 0, 0,
    0,    0,    0,    0, 0, 0, 0,
    0,    0,    0,    0, 0, 0, 0};
inline constexpr std::array<double, 49> kAnalysis2{
    0, 0, 0,    0, 0, 0, 0,
    0, 0, 0, -0.5, 0, 0, 0,
    0, 0, 0,    1, 0, 0, 0,
    0, 0, 0, -0.5, 0, 0, 0,
    0, 0, 0,    0, 0, 0, 0,
    0, 0, 0,    0, 0, 0, 0,
    0, 0, 0,    0, 0, 0, 0};
inline constexpr std::array<double, 49> kAnalysis3{
    0, 0, 0,    0, 0,    0, 0,
    0, 0, 0,    0, 0,    0, 0,
    0, 0, 0,    0, 0,    0, 0,
    0, 0, 0, -0.5, 0,    0, 0,
    0, 0, 0,    0, 1,    0, 0,
    0, 0, 0,    0, 0, -0.5, 0,
    0, 0, 0,    0, 0,    0, 0};
inline constexpr std::array<double, 49> kSynthesis0{
    0, 0,    0,    0,    0, 0, 0,
    0, 0,    0,    0,    0, 0, 0,
    0, 0, 0.25, 0.25,    0, 0, 0,
    0, 0, 0.25,  0.5, 0.25, 0, 0,
    0, 0,    0, 0.25, 0.25, 0, 0,
    0, 0,    0,    0,    0, 0, 0,
    0, 0,    0,    0,    0, 0, 0};
inline constexpr std::array<double, 49> kSynthesis1{
    0, 0,       0,       0,       0,       0,       0,
    0, 0,       0,       0,       0,       0,       0,
    0, 0, -0.0625, -0.0625, -0.0625, -0.0625,       0,
    0, 0, -0.0625,  -0.125,   0.875,  -0.125, -0.0625,
    0, 0,       0, -0.0625, -0.0625, -0.0625, -0.0625,
    0, 0,       0,       0,       0,       0,       0,
    0, 0,       0,       0,       0,       0,       0};
inline constexpr std::array<double, 49> kSynthesis2{
    0, 0,       0,       0,       0, 0, 0,
    0, 0,       0,       0,       0, 0, 0,
    0, 0, -0.0625, -0.0625,       0, 0, 0,
    0, 0, -0.0625,  -0.125, -0.0625, 0, 0,
    0, 0, -0.0625,   0.875, -0.0625, 0, 0,
    0, 0, -0.0625,  -0.125, -0.0625, 0, 0,
    0, 0,       0, -0.0625, -0.0625, 0, 0};
inline constexpr std::array<double, 49> kSynthesis3{
    -0.0625, -0.0625,       0,       0,       0, 0, 0,
    -0.0625,  -0.125, -0.0625,       0,       0, 0, 0,
          0, -0.0625,   0.875, -0.0625,       0, 0, 0,
          0,       0, -0.0625,  -0.125, -0.0625, 0, 0,
          0,       0,       0, -0.0625, -0.0625, 0, 0,
          0,       0,       0,       0,       0, 0, 0,
          0,       0,       0,       0,       0, 0, 0};
// clang-format on

}  // namespace detail

// Built-in second-order hexagonal bank. Matches data/dhwt_filters.txt.
inline const FilterBank& default_filter_bank() {
  static const FilterBank bank{
      {HexFilter(detail::kAnalysis0), HexFilter(detail::kAnalysis1),
       HexFilter(detail::kAnalysis2), HexFilter(detail::kAnalysis3)},
      {HexFilter(detail::kSynthesis0), HexFilter(detail::kSynthesis1),
       HexFilter(detail::kSynthesis2), HexFilter(detail::kSynthesis3)}};
  return bank;
}

// Plain-text format: eight 7x7 blocks (analysis 0..3, synthesis 0..3) of
// whitespace-separated numbers, row-major. '#' starts a comment.
inline FilterBank parse_filter_bank(std::istream& in) {
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw FormatError("filter file: bad number '" + tok + "'");
      }
      if (used != tok.size()) throw FormatError("filter file: bad number '" + tok + "'");
      values.push_back(v);
    }
  }
  if (values.size() != 8 * 49)
    throw FormatError("filter file: expected 392 coefficients, got " + std::to_string(values.size()));
  FilterBank bank;
  for (int f = 0; f < 8; ++f) {
    std::array<double, 49> taps{};
    for (int i = 0; i < 49; ++i) taps[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(f * 49 + i)];
    (f < 4 ? bank.analysis : bank.synthesis)[static_cast<std::size_t>(f % 4)] = HexFilter(taps);
  }
  return bank;
}

inline FilterBank load_filter_bank(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open filter file: " + path);
  return parse_filter_bank(in);
}

inline void write_filter_bank(std::ostream& out, const FilterBank& bank) {
  static constexpr const char* kNames[] = {"analysis 0",  "analysis 1",  "analysis 2",  "analysis 3",
                                           "synthesis 0", "synthesis 1", "synthesis 2", "synthesis 3"};
  for (int f = 0; f < 8; ++f) {
    const HexFilter& filt = (f < 4 ? bank.analysis : bank.synthesis)[static_cast<std::size_t>(f % 4)];
    out << "# " << kNames[f] << '\n';
    for (int r = -kTapRadius; r <= kTapRadius; ++r) {
      for (int c = -kTapRadius; c <= kTapRadius; ++c) out << (c > -kTapRadius ? " " : "") << filt.at(r, c);
      out << '\n';
    }
    out << '\n';
  }
}

// Daubechies 4-tap orthonormal filters (two vanishing moments).
struct Db2Bank {
  std::array<double, 4> analysis_lo;
  std::array<double, 4> analysis_hi;
  std::array<double, 4> synthesis_lo;
  std::array<double, 4> synthesis_hi;
};

inline Db2Bank db2_bank() {
  const double s3 = std::numbers::sqrt3;
  const double n = 4.0 * std::numbers::sqrt2;
  const std::array<double, 4> h{(1 + s3) / n, (3 + s3) / n, (3 - s3) / n, (1 - s3) / n};
  std::array<double, 4> g{};
  for (int k = 0; k < 4; ++k) g[static_cast<std::size_t>(k)] = (k % 2 ? -1.0 : 1.0) * h[static_cast<std::size_t>(3 - k)];
  // Orthonormal: synthesis uses the same taps (applied transposed).
  return {h, g, h, g};
}

}  // namespace hexz
