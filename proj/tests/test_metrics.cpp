#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hexz/metrics.hpp"

using namespace hexz;

namespace {

RealGrid noise_image(int rows, int cols, unsigned seed, double amp) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  RealGrid g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = 128.0 + 60.0 * std::sin(0.3 * r + 0.2 * c) + u(rng);
  return g;
}

// Windowed statistics computed directly with the 2-D Gaussian weights.
double naive_ssim(const RealGrid& a, const RealGrid& b) {
  constexpr int n = 11;
  constexpr double sigma = 1.5;
  double w[n][n];
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum += w[i][j] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * sigma * sigma));
  const double c1 = std::pow(0.01 * 255, 2), c2 = std::pow(0.03 * 255, 2);
  double acc = 0.0;
  int count = 0;
  for (int r = 0; r + n <= a.rows(); ++r)
    for (int c = 0; c + n <= a.cols(); ++c) {
      double ma = 0, mb = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          ma += w[i][j] / sum * a(r + i, c + j);
          mb += w[i][j] / sum * b(r + i, c + j);
        }
      double va = 0, vb = 0, cov = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double da = a(r + i, c + j) - ma, db = b(r + i, c + j) - mb;
          va += w[i][j] / sum * da * da;
          vb += w[i][j] / sum * db * db;
          cov += w[i][j] / sum * da * db;
        }
      acc += (2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  return acc / count;
}

}  // namespace

TEST(Psnr, Values) {
  RealGrid a(4, 4, 10.0);
  RealGrid b(4, 4, 11.0);
  EXPECT_DOUBLE_EQ(mse(a, b), 1.0);
  EXPECT_NEAR(psnr(a, b), 48.1308, 1e-4);
  EXPECT_EQ(psnr(a, a), kPsnrCap);
  RealGrid c = a;
  c(0, 0) += 1e-9;
  EXPECT_EQ(psnr(a, c), kPsnrCap);
  EXPECT_THROW(psnr(a, RealGrid(4, 5)), DomainError);
  EXPECT_THROW(mse(RealGrid(), RealGrid()), DomainError);
}

TEST(Ssim, MatchesDirectComputation) {
  const RealGrid a = noise_image(24, 30, 1, 20.0);
  const RealGrid b = noise_image(24, 30, 2, 40.0);
  EXPECT_NEAR(ssim(a, b), naive_ssim(a, b), 1e-9);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
  EXPECT_LT(ssim(a, b), 1.0);
  EXPECT_THROW(ssim(RealGrid(10, 20), RealGrid(10, 20)), DomainError);
}

TEST(Rate, BitsPerPixel) {
  CodeStream s;
  s.header.orig_width = 362;
  s.header.orig_rows = 362;
  s.header.payload_bits = 65522;
  EXPECT_DOUBLE_EQ(bpp(s), 0.5);
  s.header.orig_width = 256;
  s.header.orig_rows = 512;
  s.header.payload_bits = 131072;
  EXPECT_DOUBLE_EQ(bpp(s), 1.0);
  EXPECT_EQ(budget_for_bpp(0.25, 131072), 32768u);
  EXPECT_EQ(budget_for_bpp(0.5, 362 * 362), 65522u);
  EXPECT_THROW(budget_for_bpp(0.0, 10), DomainError);
  s.header.orig_width = 0;
  EXPECT_THROW(bpp(s), DomainError);
}

TEST(Histogram, ConservationAndCoverage) {
  IndexMap m(20, 24);
  m.for_each_valid([&](int r, int c) { m(r, c) = 100.0 + 50.0 * std::sin(0.5 * r) * std::cos(0.3 * c); });
  for (Scheme scheme : {Scheme::SBHex, Scheme::BBHex}) {
    const EncodeReport rep = encode_hex_report(m, scheme, 2);
    const SymbolHistogram h = symbol_histogram(rep.stream);
    ASSERT_EQ(h.passes.size(), rep.passes.size());
    const auto t = h.totals();
    // every significance decision is refined in every later pass
    long last_refine = 0;
    std::vector<long> per_band(7, 0);
    for (const auto& p : h.passes) per_band[static_cast<std::size_t>(p.band)] = p.refinement_bits;
    for (long v : per_band) last_refine += v;
    EXPECT_EQ(t[0] + t[1], last_refine);
    EXPECT_EQ(h.symbol_total(), t[0] + t[1] + t[2] + t[3]);
    const auto cov = zero_tree_coverage(rep.stream);
    ASSERT_FALSE(cov.empty());
    const int top = scheme == Scheme::SBHex ? rep.stream.header.exponents[0]
                                            : *std::max_element(rep.stream.header.exponents.begin(),
                                                                rep.stream.header.exponents.end());
    EXPECT_EQ(static_cast<int>(cov.size()), top - kMinExponent + 1);
    const long cells = static_cast<long>(rep.stream.header.tree_rows) * rep.stream.header.tree_cols;
    for (long c : cov) {
      EXPECT_GE(c, 0);
      EXPECT_LE(c, cells);
    }
  }
}

TEST(HillFit, RecoversParameters) {
  std::vector<XY> pts;
  for (double x : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) pts.push_back({x, HillFit::hill(x, 42.0, 0.6, 1.7)});
  const HillFit f = hill_fit(pts);
  EXPECT_TRUE(f.identifiable);
  EXPECT_NEAR(f.y_max, 42.0, 1e-4);
  EXPECT_NEAR(f.ec50, 0.6, 1e-5);
  EXPECT_NEAR(f.n, 1.7, 1e-4);
  EXPECT_NEAR(f(f.ec50), f.y_max / 2, 1e-12);
  EXPECT_LT(f.residual, 1e-10);
}

TEST(HillFit, Errors) {
  EXPECT_THROW(hill_fit({{1, 1}, {2, 2}}), DomainError);
  EXPECT_THROW(hill_fit({{0, 1}, {1, 2}, {2, 3}}), DomainError);
  const HillFit flat = hill_fit({{1, 5}, {2, 5}, {3, 5}});
  EXPECT_FALSE(flat.identifiable);
  EXPECT_EQ(flat.y_max, 5.0);
}
