#pragma once

// Multilevel wavelet transforms with periodized boundary extension:
//  - dhwt_*: discrete hexagonal wavelet transform on an index map, 2-D
//    non-separable convolution with 7x7 index-map filters and dyadic
//    subsampling on (row, col);
//  - dwt2_*: separable DB2 Mallat decomposition for Cartesian images.

#include <array>
#include <cstdint>
#include <vector>

#include "hexz/filters.hpp"
#include "hexz/grid.hpp"
#include "hexz/lattice.hpp"

namespace hexz {

inline constexpr int kPeriodizeMargin = kTapSize;
inline constexpr int kDefaultLevels = 6;
inline constexpr int kMaxLevels = 14;

// Periodic extension with `margin` cells on each side. An odd-length axis is
// first made even by repeating its last sample.
inline RealGrid periodize(const RealGrid& src, int margin = kPeriodizeMargin) {
  if (src.empty()) throw DomainError("periodize: empty input");
  const int er = src.rows() + (src.rows() % 2);
  const int ec = src.cols() + (src.cols() % 2);
  auto wrap = [](int i, int n) { return ((i % n) + n) % n; };
  RealGrid out(er + 2 * margin, ec + 2 * margin);
  for (int r = 0; r < out.rows(); ++r) {
    const int sr = std::min(wrap(r - margin, er), src.rows() - 1);
    for (int c = 0; c < out.cols(); ++c) {
      const int sc = std::min(wrap(c - margin, ec), src.cols() - 1);
      out(r, c) = src(sr, sc);
    }
  }
  return out;
}

// Coarse band plus three detail bands per level; details[0] is level 1
// (finest). Every band at level l has dimensions padded_rows/2^l x padded_cols/2^l.
struct WaveletPyramid {
  int levels = 0;
  int orig_rows = 0;
  int orig_cols = 0;
  int hex_width = 0;  // samples per hexagonal row; 0 when not built from an IndexMap
  RealGrid coarse;
  std::vector<std::array<RealGrid, 3>> details;

  int padded_rows() const { return coarse.rows() << levels; }
  int padded_cols() const { return coarse.cols() << levels; }

  const RealGrid& detail(int level, int band) const {
    return details.at(static_cast<std::size_t>(level - 1)).at(static_cast<std::size_t>(band - 1));
  }
  RealGrid& detail(int level, int band) {
    return details.at(static_cast<std::size_t>(level - 1)).at(static_cast<std::size_t>(band - 1));
  }

  friend bool operator==(const WaveletPyramid&, const WaveletPyramid&) = default;
};

// Zero-pads (right/bottom) to multiples of 2^(levels+1).
inline RealGrid pad_for_levels(const RealGrid& g, int levels) {
  const int m = 1 << (levels + 1);
  RealGrid out(round_up(g.rows(), m), round_up(g.cols(), m), 0.0);
  out.paste(g, 0, 0);
  return out;
}

namespace detail {

struct Tap {
  int drow;
  int dcol;
  double w;
};

inline std::vector<Tap> nonzero_taps(const HexFilter& f) {
  std::vector<Tap> taps;
  for (int r = -kTapRadius; r <= kTapRadius; ++r)
    for (int c = -kTapRadius; c <= kTapRadius; ++c)
      if (f.at(r, c) != 0.0) taps.push_back({r, c, f.at(r, c)});
  return taps;
}

inline void check_levels(int levels, int rows, int cols) {
  if (levels < 1 || levels > kMaxLevels) throw DomainError("wavelet: levels must be in [1, 14]");
  if ((1 << levels) > std::max(rows, cols))
    throw DomainError("wavelet: too many levels for the input dimensions");
}

}  // namespace detail

// One analysis level: (F * filter)[2k] for each of the four filters.
inline std::array<RealGrid, 4> dhwt_analyze_level(const RealGrid& f, const FilterBank& bank) {
  const RealGrid ext = periodize(f);
  const int m = kPeriodizeMargin;
  const int hr = f.rows() / 2;
  const int hc = f.cols() / 2;
  std::array<RealGrid, 4> out;
  for (std::size_t ch = 0; ch < 4; ++ch) {
    const auto taps = detail::nonzero_taps(bank.analysis[ch]);
    RealGrid band(hr, hc);
    for (int a = 0; a < hr; ++a)
      for (int b = 0; b < hc; ++b) {
        double acc = 0.0;
        for (const auto& t : taps) acc += ext(2 * a - t.drow + m, 2 * b - t.dcol + m) * t.w;
        band(a, b) = acc;
      }
    out[ch] = std::move(band);
  }
  return out;
}

// One synthesis level: sum over channels of (upsampled band * filter).
inline RealGrid dhwt_synthesize_level(const std::array<const RealGrid*, 4>& bands, const FilterBank& bank) {
  const int hr = bands[0]->rows();
  const int hc = bands[0]->cols();
  for (const RealGrid* b : bands)
    if (b->rows() != hr || b->cols() != hc) throw DomainError("dhwt_inverse: band dimension mismatch");
  const int m = kPeriodizeMargin;
  RealGrid out(2 * hr, 2 * hc, 0.0);
  for (std::size_t ch = 0; ch < 4; ++ch) {
    RealGrid up(2 * hr, 2 * hc, 0.0);
    for (int a = 0; a < hr; ++a)
      for (int b = 0; b < hc; ++b) up(2 * a, 2 * b) = (*bands[ch])(a, b);
    const RealGrid ext = periodize(up);
    const auto taps = detail::nonzero_taps(bank.synthesis[ch]);
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c) {
        double acc = 0.0;
        for (const auto& t : taps) acc += ext(r - t.drow + m, c - t.dcol + m) * t.w;
        out(r, c) += acc;
      }
  }
  return out;
}

inline WaveletPyramid dhwt_forward(const RealGrid& input, int levels,
                                   const FilterBank& bank = default_filter_bank()) {
  detail::check_levels(levels, input.rows(), input.cols());
  WaveletPyramid pyr;
  pyr.levels = levels;
  pyr.orig_rows = input.rows();
  pyr.orig_cols = input.cols();
  RealGrid current = pad_for_levels(input, levels);
  for (int l = 1; l <= levels; ++l) {
    auto bands = dhwt_analyze_level(current, bank);
    pyr.details.push_back({std::move(bands[1]), std::move(bands[2]), std::move(bands[3])});
    current = std::move(bands[0]);
  }
  pyr.coarse = std::move(current);
  return pyr;
}

inline WaveletPyramid dhwt_forward(const IndexMap& map, int levels,
                                   const FilterBank& bank = default_filter_bank()) {
  WaveletPyramid pyr = dhwt_forward(map.grid(), levels, bank);
  pyr.hex_width = map.width();
  return pyr;
}

// Reconstructs the padded array, then crops to the original dimensions.
inline RealGrid dhwt_inverse_grid(const WaveletPyramid& pyr, const FilterBank& bank = default_filter_bank()) {
  if (pyr.levels < 1 || static_cast<int>(pyr.details.size()) != pyr.levels)
    throw DomainError("dhwt_inverse: inconsistent pyramid");
  RealGrid current = pyr.coarse;
  for (int l = pyr.levels; l >= 1; --l) {
    const auto& d = pyr.details[static_cast<std::size_t>(l - 1)];
    if (d[0].rows() != current.rows() || d[0].cols() != current.cols())
      throw DomainError("dhwt_inverse: dimension mismatch at level " + std::to_string(l));
    current = dhwt_synthesize_level({&current, &d[0], &d[1], &d[2]}, bank);
  }
  if (pyr.orig_rows > current.rows() || pyr.orig_cols > current.cols())
    throw DomainError("dhwt_inverse: original dimensions exceed padded array");
  return current.block(0, 0, pyr.orig_rows, pyr.orig_cols);
}

inline IndexMap dhwt_inverse(const WaveletPyramid& pyr, const FilterBank& bank = default_filter_bank()) {
  if (pyr.hex_width < 1) throw DomainError("dhwt_inverse: pyramid was not built from an index map");
  IndexMap map(pyr.hex_width, pyr.orig_rows);
  map.assign(dhwt_inverse_grid(pyr, bank));
  return map;
}

// Cartesian pyramid in the standard Mallat layout: the coarse band occupies
// the top-left (rows/2^L x cols/2^L) block; level l details HL (top-right),
// LH (bottom-left), HH (bottom-right) of the (rows/2^(l-1))^2 block.
struct CartPyramid {
  int levels = 0;
  int orig_rows = 0;
  int orig_cols = 0;
  RealGrid data;  // padded, Mallat layout
  friend bool operator==(const CartPyramid&, const CartPyramid&) = default;
};

namespace detail {

inline void db2_analyze_1d(std::span<const double> x, std::span<double> lo, std::span<double> hi,
                           const Db2Bank& bank) {
  const int n = static_cast<int>(x.size());
  for (int k = 0; k < n / 2; ++k) {
    double l = 0.0;
    double h = 0.0;
    for (int t = 0; t < 4; ++t) {
      const double v = x[static_cast<std::size_t>((2 * k + t) % n)];
      l += bank.analysis_lo[static_cast<std::size_t>(t)] * v;
      h += bank.analysis_hi[static_cast<std::size_t>(t)] * v;
    }
    lo[static_cast<std::size_t>(k)] = l;
    hi[static_cast<std::size_t>(k)] = h;
  }
}

inline void db2_synthesize_1d(std::span<const double> lo, std::span<const double> hi, std::span<double> x,
                              const Db2Bank& bank) {
  const int n = static_cast<int>(x.size());
  std::fill(x.begin(), x.end(), 0.0);
  for (int k = 0; k < n / 2; ++k)
    for (int t = 0; t < 4; ++t) {
      auto& dst = x[static_cast<std::size_t>((2 * k + t) % n)];
      dst += bank.synthesis_lo[static_cast<std::size_t>(t)] * lo[static_cast<std::size_t>(k)] +
             bank.synthesis_hi[static_cast<std::size_t>(t)] * hi[static_cast<std::size_t>(k)];
    }
}

}  // namespace detail

inline CartPyramid dwt2_forward(const RealGrid& img, int levels, const Db2Bank& bank = db2_bank()) {
  detail::check_levels(levels, img.rows(), img.cols());
  const int m = 1 << levels;
  CartPyramid pyr{levels, img.rows(), img.cols(), RealGrid(round_up(img.rows(), m), round_up(img.cols(), m), 0.0)};
  pyr.data.paste(img, 0, 0);
  int nr = pyr.data.rows();
  int nc = pyr.data.cols();
  std::vector<double> line;
  std::vector<double> lo;
  std::vector<double> hi;
  for (int l = 0; l < levels; ++l, nr /= 2, nc /= 2) {
    line.resize(static_cast<std::size_t>(nc));
    lo.resize(static_cast<std::size_t>(nc / 2));
    hi.resize(static_cast<std::size_t>(nc / 2));
    for (int r = 0; r < nr; ++r) {
      for (int c = 0; c < nc; ++c) line[static_cast<std::size_t>(c)] = pyr.data(r, c);
      detail::db2_analyze_1d(line, lo, hi, bank);
      for (int c = 0; c < nc / 2; ++c) {
        pyr.data(r, c) = lo[static_cast<std::size_t>(c)];
        pyr.data(r, c + nc / 2) = hi[static_cast<std::size_t>(c)];
      }
    }
    line.resize(static_cast<std::size_t>(nr));
    lo.resize(static_cast<std::size_t>(nr / 2));
    hi.resize(static_cast<std::size_t>(nr / 2));
    for (int c = 0; c < nc; ++c) {
      for (int r = 0; r < nr; ++r) line[static_cast<std::size_t>(r)] = pyr.data(r, c);
      detail::db2_analyze_1d(line, lo, hi, bank);
      for (int r = 0; r < nr / 2; ++r) {
        pyr.data(r, c) = lo[static_cast<std::size_t>(r)];
        pyr.data(r + nr / 2, c) = hi[static_cast<std::size_t>(r)];
      }
    }
  }
  return pyr;
}

inline RealGrid dwt2_inverse(const CartPyramid& pyr, const Db2Bank& bank = db2_bank()) {
  if (pyr.levels < 1 || pyr.data.rows() % (1 << pyr.levels) || pyr.data.cols() % (1 << pyr.levels))
    throw DomainError("dwt2_inverse: inconsistent pyramid");
  RealGrid data = pyr.data;
  std::vector<double> line;
  std::vector<double> lo;
  std::vector<double> hi;
  for (int l = pyr.levels - 1; l >= 0; --l) {
    const int nr = data.rows() >> l;
    const int nc = data.cols() >> l;
    line.resize(static_cast<std::size_t>(nr));
    lo.resize(static_cast<std::size_t>(nr / 2));
    hi.resize(static_cast<std::size_t>(nr / 2));
    for (int c = 0; c < nc; ++c) {
      for (int r = 0; r < nr / 2; ++r) {
        lo[static_cast<std::size_t>(r)] = data(r, c);
        hi[static_cast<std::size_t>(r)] = data(r + nr / 2, c);
      }
      detail::db2_synthesize_1d(lo, hi, line, bank);
      for (int r = 0; r < nr; ++r) data(r, c) = line[static_cast<std::size_t>(r)];
    }
    line.resize(static_cast<std::size_t>(nc));
    lo.resize(static_cast<std::size_t>(nc / 2));
    hi.resize(static_cast<std::size_t>(nc / 2));
    for (int r = 0; r < nr; ++r) {
      for (int c = 0; c < nc / 2; ++c) {
        lo[static_cast<std::size_t>(c)] = data(r, c);
        hi[static_cast<std::size_t>(c)] = data(r, c + nc / 2);
      }
      detail::db2_synthesize_1d(lo, hi, line, bank);
      for (int c = 0; c < nc; ++c) data(r, c) = line[static_cast<std::size_t>(c)];
    }
  }
  return data.block(0, 0, pyr.orig_rows, pyr.orig_cols);
}

}  // namespace hexz
