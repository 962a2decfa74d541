#pragma once

// Distortion, rate and coding statistics.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "hexz/coder.hpp"
#include "hexz/codestream.hpp"
#include "hexz/grid.hpp"

namespace hexz {

inline constexpr double kPsnrCap = 99.0;
inline constexpr double kPeak = 255.0;

inline void check_same_dims(const RealGrid& a, const RealGrid& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError(std::string(what) + ": dimension mismatch");
}

inline double mse(const RealGrid& a, const RealGrid& b) {
  check_same_dims(a, b, "mse");
  if (a.empty()) throw DomainError("mse: empty images");
  double acc = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) acc += (av[i] - bv[i]) * (av[i] - bv[i]);
  return acc / static_cast<double>(av.size());
}

inline double psnr(const RealGrid& a, const RealGrid& b) {
  const double m = mse(a, b);
  if (m <= 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(kPeak * kPeak / m));
}

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double range = kPeak;
};

namespace detail {

inline std::vector<double> gaussian_window(int size, double sigma) {
  std::vector<double> w(static_cast<std::size_t>(size));
  const double mid = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) sum += w[static_cast<std::size_t>(i)] = std::exp(-(i - mid) * (i - mid) / (2 * sigma * sigma));
  for (double& v : w) v /= sum;
  return w;
}

// Separable "valid" filtering with a symmetric 1-D kernel.
inline RealGrid filter_valid(const RealGrid& g, const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  RealGrid tmp(g.rows(), g.cols() - n + 1);
  for (int r = 0; r < tmp.rows(); ++r)
    for (int c = 0; c < tmp.cols(); ++c) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[static_cast<std::size_t>(i)] * g(r, c + i);
      tmp(r, c) = acc;
    }
  RealGrid out(g.rows() - n + 1, tmp.cols());
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[static_cast<std::size_t>(i)] * tmp(r + i, c);
      out(r, c) = acc;
    }
  return out;
}

}  // namespace detail

// Mean SSIM over every full window position.
inline double ssim(const RealGrid& a, const RealGrid& b, const SsimParams& p = {}) {
  check_same_dims(a, b, "ssim");
  if (a.rows() < p.window || a.cols() < p.window) throw DomainError("ssim: image smaller than the window");
  const auto w = detail::gaussian_window(p.window, p.sigma);
  RealGrid aa(a.rows(), a.cols()), bb(a.rows(), a.cols()), ab(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa.values()[i] = a.values()[i] * a.values()[i];
    bb.values()[i] = b.values()[i] * b.values()[i];
    ab.values()[i] = a.values()[i] * b.values()[i];
  }
  const RealGrid mu_a = detail::filter_valid(a, w);
  const RealGrid mu_b = detail::filter_valid(b, w);
  const RealGrid s_aa = detail::filter_valid(aa, w);
  const RealGrid s_bb = detail::filter_valid(bb, w);
  const RealGrid s_ab = detail::filter_valid(ab, w);
  const double c1 = (p.k1 * p.range) * (p.k1 * p.range);
  const double c2 = (p.k2 * p.range) * (p.k2 * p.range);
  double acc = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a.values()[i];
    const double mb = mu_b.values()[i];
    const double va = s_aa.values()[i] - ma * ma;
    const double vb = s_bb.values()[i] - mb * mb;
    const double cov = s_ab.values()[i] - ma * mb;
    acc += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return acc / static_cast<double>(mu_a.size());
}

inline double bpp(const CodeStream& s) {
  const std::size_t n = s.header.coefficient_count();
  if (n == 0) throw DomainError("bpp: empty source grid");
  return static_cast<double>(s.header.payload_bits) / static_cast<double>(n);
}

inline std::size_t budget_for_bpp(double target, std::size_t coefficient_count) {
  if (!(target > 0.0)) throw DomainError("bpp target must be positive");
  return static_cast<std::size_t>(std::floor(target * static_cast<double>(coefficient_count)));
}

// Per-pass P/N/Z/T counts, recovered by walking the decoder.
struct SymbolHistogram {
  std::vector<PassStats> passes;

  std::array<long, 4> totals() const {
    std::array<long, 4> t{};
    for (const auto& p : passes)
      for (std::size_t i = 0; i < 4; ++i) t[i] += p.counts[i];
    return t;
  }
  long symbol_total() const {
    long n = 0;
    for (long v : totals()) n += v;
    return n;
  }
};

inline SymbolHistogram symbol_histogram(const CodeStream& s) { return {stream_pass_stats(s)}; }

// Coefficients inside zero-trees per pass. Passes with the same index from
// different BBHex bands are summed.
inline std::vector<long> zero_tree_coverage(const CodeStream& s) {
  std::vector<long> out;
  for (const auto& p : stream_pass_stats(s)) {
    if (static_cast<std::size_t>(p.pass) >= out.size()) out.resize(static_cast<std::size_t>(p.pass) + 1, 0);
    out[static_cast<std::size_t>(p.pass)] += p.zerotree_cells;
  }
  return out;
}

// y = y_max / (1 + (ec50 / x)^n)
struct HillFit {
  double y_max = 0.0;
  double ec50 = 0.0;
  double n = 0.0;
  double residual = 0.0;  // sum of squared residuals
  bool identifiable = true;

  double operator()(double x) const { return hill(x, y_max, ec50, n); }
  static double hill(double x, double y_max, double ec50, double n) { return y_max / (1.0 + std::pow(ec50 / x, n)); }
};

struct XY {
  double x;
  double y;
};

inline HillFit hill_fit(const std::vector<XY>& pts) {
  if (pts.size() < 3) throw DomainError("hill_fit: need at least 3 points");
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
  for (const auto& p : pts) {
    if (!(p.x > 0.0) || !std::isfinite(p.y)) throw DomainError("hill_fit: x must be positive and y finite");
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  const bool flat = std::all_of(pts.begin(), pts.end(), [&](const XY& p) { return p.y == pts.front().y; });
  if (flat) return {pts.front().y, 0.0, 0.0, 0.0, false};

  // For fixed (ec50, n) the model is linear in y_max.
  auto solve = [&](double ec50, double n) {
    double sgg = 0.0, sgy = 0.0;
    for (const auto& p : pts) {
      const double g = 1.0 / (1.0 + std::pow(ec50 / p.x, n));
      sgg += g * g;
      sgy += g * p.y;
    }
    const double ym = sgg > 0.0 ? sgy / sgg : 0.0;
    double r = 0.0;
    for (const auto& p : pts) {
      const double e = p.y - HillFit::hill(p.x, ym, ec50, n);
      r += e * e;
    }
    return std::pair{ym, r};
  };

  HillFit best{0.0, 0.0, 0.0, std::numeric_limits<double>::infinity(), true};
  const double lo = std::log(xmin) - std::log(100.0);
  const double hi = std::log(xmax) + std::log(100.0);
  constexpr int kEcSteps = 200;
  constexpr int kNSteps = 120;
  for (int i = 0; i <= kEcSteps; ++i) {
    const double ec50 = std::exp(lo + (hi - lo) * i / kEcSteps);
    for (int j = 0; j <= kNSteps; ++j) {
      const double n = std::exp(std::log(0.05) + (std::log(20.0) - std::log(0.05)) * j / kNSteps);
      const auto [ym, r] = solve(ec50, n);
      if (r < best.residual) best = {ym, ec50, n, r, true};
    }
  }

  // Gauss-Newton on (y_max, log ec50, log n) with step halving.
  std::array<double, 3> theta{best.y_max, std::log(best.ec50), std::log(best.n)};
  auto residual_of = [&](const std::array<double, 3>& t) {
    double r = 0.0;
    for (const auto& p : pts) {
      const double e = p.y - HillFit::hill(p.x, t[0], std::exp(t[1]), std::exp(t[2]));
      r += e * e;
    }
    return r;
  };
  double r_cur = residual_of(theta);
  for (int it = 0; it < 200 && r_cur > 0.0; ++it) {
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jte{};
    const double ec50 = std::exp(theta[1]);
    const double n = std::exp(theta[2]);
    for (const auto& p : pts) {
      const double u = std::pow(ec50 / p.x, n);
      const double d = 1.0 + u;
      const double f = theta[0] / d;
      // df/dy_max, df/dlog(ec50), df/dlog(n)
      const std::array<double, 3> g{1.0 / d, -theta[0] * u * n / (d * d), -theta[0] * u * n * std::log(ec50 / p.x) / (d * d)};
      const double e = p.y - f;
      for (std::size_t a = 0; a < 3; ++a) {
        jte[a] += g[a] * e;
        for (std::size_t b = 0; b < 3; ++b) jtj[a][b] += g[a] * g[b];
      }
    }
    // Solve the 3x3 system by Cramer's rule with a touch of damping.
    for (std::size_t a = 0; a < 3; ++a) jtj[a][a] *= 1.0 + 1e-12;
    auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(jtj);
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
    std::array<double, 3> step{};
    for (std::size_t a = 0; a < 3; ++a) {
      auto m = jtj;
      for (std::size_t b = 0; b < 3; ++b) m[b][a] = jte[b];
      step[a] = det3(m) / det;
    }
    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h, scale *= 0.5) {
      std::array<double, 3> next{theta[0] + scale * step[0], theta[1] + scale * step[1], theta[2] + scale * step[2]};
      const double r_next = residual_of(next);
      if (r_next < r_cur) {
        theta = next;
        improved = r_cur - r_next > 1e-30;
        r_cur = r_next;
        break;
      }
    }
    if (!improved) break;
  }
  return {theta[0], std::exp(theta[1]), std::exp(theta[2]), r_cur, true};
}

}  // namespace hexz
