// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hexz/coder.hpp"
#include "hexz/huffman.hpp"
#include "hexz/metrics.hpp"
#include "hexz/resample.hpp"
#include "hexz/sot.hpp"
#include "hexz/sweep.hpp"
#include "hexz/wavelet.hpp"

using namespace hexz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  const auto t0 = Clock::now();
  Outcome o{false, {}};
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  failures += !o.pass;
  fmt::print("{} [{}] {} ({}; {:.1f} s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail, seconds_since(t0));
  std::fflush(stdout);
}

double max_abs(const RealGrid& a, const RealGrid& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

double pyramid_error(const WaveletPyramid& a, const WaveletPyramid& b) {
  double m = max_abs(a.coarse, b.coarse);
  for (int l = 1; l <= a.levels; ++l)
    for (int band = 1; band <= 3; ++band) m = std::max(m, max_abs(a.detail(l, band), b.detail(l, band)));
  return m;
}

// ---------------------------------------------------------------------------

Outcome perfect_reconstruction() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  double hex_err = 0.0, db2_err = 0.0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 20; ++trial) {
    IndexMap m(64, 64);
    m.for_each_valid([&](int r, int c) { m(r, c) = u(rng); });
    RealGrid g(64, 64);
    for (double& v : g.values()) v = u(rng);
    for (int L : {1, 3, 6}) {
      const IndexMap back = dhwt_inverse(dhwt_forward(m, L));
      m.for_each_valid([&](int r, int c) { hex_err = std::max(hex_err, std::abs(back(r, c) - m(r, c))); });
      const RealGrid gb = dwt2_inverse(dwt2_forward(g, L));
      db2_err = std::max(db2_err, max_abs(gb, g));
    }
  }
  const double t = seconds_since(t0);
  return {hex_err <= 1e-8 && db2_err <= 1e-8 && t < 30.0,
          fmt::format("hex max err {:.2e}, DB2 max err {:.2e}, {:.1f} s for 20 inputs x L in {{1,3,6}}", hex_err,
                      db2_err, t)};
}

Outcome vanishing_moments() {
  constexpr int n = 64;
  RealGrid flat(n, n, 93.0), ramp(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) ramp(r, c) = 1.25 * r - 0.75 * c + 10.0;
  double hex_flat = 0.0, hex_ramp = 0.0, db2_flat = 0.0, db2_ramp = 0.0;
  const WaveletPyramid pf = dhwt_forward(flat, 3);
  for (int l = 1; l <= 3; ++l)
    for (int b = 1; b <= 3; ++b)
      for (double v : pf.detail(l, b).values()) hex_flat = std::max(hex_flat, std::abs(v));
  // interior: away from the periodic seam of the ramp
  const auto bands = dhwt_analyze_level(ramp, default_filter_bank());
  for (std::size_t ch = 1; ch < 4; ++ch)
    for (int a = 2; a < n / 2 - 2; ++a)
      for (int b = 2; b < n / 2 - 2; ++b) hex_ramp = std::max(hex_ramp, std::abs(bands[ch](a, b)));
  const CartPyramid cf = dwt2_forward(flat, 3);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r >= 8 || c >= 8) db2_flat = std::max(db2_flat, std::abs(cf.data(r, c)));
  const CartPyramid cr = dwt2_forward(ramp, 1);
  for (int r = 0; r < n / 2 - 2; ++r)
    for (int c = 0; c < n / 2 - 2; ++c) {
      db2_ramp = std::max(db2_ramp, std::abs(cr.data(r, c + n / 2)));
      db2_ramp = std::max(db2_ramp, std::abs(cr.data(r + n / 2, c)));
      db2_ramp = std::max(db2_ramp, std::abs(cr.data(r + n / 2, c + n / 2)));
    }
  const double worst = std::max({hex_flat, hex_ramp, db2_flat, db2_ramp});
  return {worst <= 1e-8, fmt::format("hex constant {:.1e}, hex ramp {:.1e}, DB2 constant {:.1e}, DB2 ramp {:.1e}",
                                     hex_flat, hex_ramp, db2_flat, db2_ramp)};
}

Outcome structural_suite() {
  std::vector<std::string> problems;
  for (int R = 1; R <= 64; ++R)
    for (int C = 1; C <= 64; ++C) {
      const auto s = hex_scan_order(R, C);
      std::vector<char> seen(static_cast<std::size_t>(R * C), 0);
      bool ok = s.size() == seen.size();
      for (Cell p : s) {
        if (!ok) break;
        auto& f = seen[static_cast<std::size_t>(p.row * C + p.col)];
        ok = p.row >= 0 && p.row < R && p.col >= 0 && p.col < C && !f;
        f = 1;
      }
      if (!ok) problems.push_back(fmt::format("scan {}x{}", R, C));
    }

  for (int n : {8, 16, 32}) {
    // parent partition: children sets of non-roots are disjoint, each of size 4,
    // and together with the roots' quadrants cover every non-root cell once
    std::map<Cell, int> hits;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const Cell p{r, c};
        if (is_quadrant_root(p, n, n)) {
          for (Cell d : root_descendants(p, n, n))
            if (sot_parent(d, n, n) == p) ++hits[d];
          continue;
        }
        const auto kids = children_of(p, n, n);
        if (!kids.empty() && kids.size() != 4) problems.push_back(fmt::format("{}: {} children", n, kids.size()));
        for (Cell k : kids) {
          ++hits[k];
          if (sot_parent(k, n, n) != p) problems.push_back(fmt::format("{}: parent/child mismatch", n));
        }
      }
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const Cell p{r, c};
        const int want = is_quadrant_root(p, n, n) ? 0 : 1;
        if (hits[p] != want) problems.push_back(fmt::format("{}: cell ({},{}) has {} parents", n, r, c, hits[p]));
      }

    // root_descendants equals the brute-force closure of children_of
    for (Cell root : quadrant_roots(n, n)) {
      std::set<Cell> closure;
      std::vector<Cell> stack;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (sot_parent({r, c}, n, n) == root) stack.push_back({r, c});
      while (!stack.empty()) {
        const Cell p = stack.back();
        stack.pop_back();
        if (!closure.insert(p).second) problems.push_back("closure revisits a cell");
        for (Cell k : children_of(p, n, n)) stack.push_back(k);
      }
      const auto d = root_descendants(root, n, n);
      if (closure != std::set<Cell>(d.begin(), d.end())) problems.push_back(fmt::format("{}: closure mismatch", n));
    }
  }

  // spiral map/unmap identity and dilation consistency with the slot table
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto [R, C, L] : {std::tuple{32, 32, 3}, std::tuple{64, 128, 4}, std::tuple{128, 128, 6}}) {
    WaveletPyramid p;
    p.levels = L;
    p.orig_rows = R;
    p.orig_cols = C;
    p.hex_width = 1;
    p.coarse = RealGrid(R >> L, C >> L);
    for (double& v : p.coarse.values()) v = u(rng);
    for (int l = 1; l <= L; ++l) {
      std::array<RealGrid, 3> d{RealGrid(R >> l, C >> l), RealGrid(R >> l, C >> l), RealGrid(R >> l, C >> l)};
      for (auto& g : d)
        for (double& v : g.values()) v = u(rng);
      p.details.push_back(d);
    }
    if (!(spiral_unmap(spiral_map(p)) == p)) problems.push_back(fmt::format("spiral identity {}x{}", R, C));

    const auto layout = spiral_layout(R, C, L);
    for (const Slot& s : layout) {
      if (s.level < 2) continue;
      for (int r = s.row0; r < s.row0 + s.rows; ++r)
        for (int c = s.col0; c < s.col0 + s.cols; ++c)
          for (Cell k : children_of({r, c}, R, C)) {
            const auto ks = slot_of(k.row, k.col, layout);
            if (!ks || ks->level != s.level - 1 || ks->band != s.band || ks->quadrant != s.quadrant)
              problems.push_back(fmt::format("dilation {}x{} level {}", R, C, s.level));
          }
    }
  }
  const bool ok = problems.empty();
  return {ok, ok ? "scan bijection R,C<=64; partition, closure at 8/16/32; spiral identity; slot dilation"
                 : fmt::format("{} problems, first: {}", problems.size(), problems.front())};
}

// Sources at 128-row scale: hex 64 x 128, Cartesian 91 x 91.
struct SmallSources {
  std::string name;
  IndexMap hex;
  CartImage cart;
};

std::vector<SmallSources> small_sources() {
  std::vector<SmallSources> out;
  for (auto [name, f] : {std::pair{"chirp", chirp_value}, std::pair{"checkerboard", checkerboard_value}})
    out.push_back({name, sample_hex(f, 64, 128), sample_cart(f, 91, 91)});
  return out;
}

Outcome embedded_equality() {
  constexpr int L = 6;
  int compared = 0;
  std::vector<std::string> bad;
  for (const auto& src : small_sources())
    for (Scheme scheme : {Scheme::SBHex, Scheme::BBHex, Scheme::EzwCartesian}) {
      const bool hex = is_hex_scheme(scheme);
      const CodeStream full = hex ? encode_hex_report(src.hex, scheme, L).stream : encode_ezw_cart(src.cart, L);
      for (double frac : {0.01, 0.07, 0.2, 0.45, 0.8}) {
        const auto b = static_cast<std::size_t>(frac * full.header.payload_bits);
        const CodeStream direct =
            hex ? encode_hex_report(src.hex, scheme, L, b).stream : encode_ezw_cart(src.cart, L, b);
        const CodeStream prefix = truncate_stream(full, b);
        bool same;
        if (hex)
          same = decode_hex_pyramid(prefix) == decode_hex_pyramid(direct) &&
                 decode_hex_pyramid(full, b) == decode_hex_pyramid(direct);
        else
          same = decode_ezw_pyramid(prefix) == decode_ezw_pyramid(direct);
        ++compared;
        if (!same) bad.push_back(fmt::format("{}/{}/{}", src.name, scheme_name(scheme), b));
      }
    }
  return {bad.empty(), bad.empty() ? fmt::format("{} budget/scheme/image cases bit-exact", compared)
                                   : fmt::format("mismatch at {}", bad.front())};
}

Outcome convergence_bound() {
  constexpr int L = 6;
  double worst_hex = 0.0, worst_ezw = 0.0;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> u(0, 255);
  auto check = [&](const IndexMap& hm, const CartImage& cm) {
    const WaveletPyramid ref = dhwt_forward(hm, L);
    for (Scheme s : {Scheme::SBHex, Scheme::BBHex})
      worst_hex = std::max(worst_hex, pyramid_error(decode_hex_pyramid(encode_hex_pyramid(ref, s).stream), ref));
    const CartPyramid cref = dwt2_forward(cm, L);
    worst_ezw = std::max(worst_ezw, max_abs(decode_ezw_pyramid(encode_ezw_pyramid(cref).stream).data, cref.data));
  };
  for (const auto& src : small_sources()) {
    IndexMap hm = src.hex;
    hm.for_each_valid([&](int r, int c) { hm(r, c) = std::round(hm(r, c)); });
    CartImage cm = src.cart;
    for (double& v : cm.values()) v = std::round(v);
    check(hm, cm);
  }
  IndexMap hm(64, 128);
  hm.for_each_valid([&](int r, int c) { hm(r, c) = u(rng); });
  CartImage cm(91, 91);
  for (double& v : cm.values()) v = u(rng);
  check(hm, cm);
  return {worst_hex <= 0.5 && worst_ezw <= 0.5,
          fmt::format("max coefficient error: hex {:.4f}, EZW {:.4f}", worst_hex, worst_ezw)};
}

Outcome huffman_conformance() {
  // Hand-derived first pass on a 4 x 4 spiral tree: roots (1,1) = 40 and
  // (1,2) = -40 are significant, root (2,2) = 1 has the significant
  // descendant (3,3) = 33, everything else is zero.
  RealGrid v(4, 4, 0.0);
  v(1, 1) = 40.0;
  v(1, 2) = -40.0;
  v(2, 2) = 1.0;
  v(3, 3) = 33.0;
  const CodingTree t = make_hex_tree(4, 4);
  BitWriter w;
  encode_tree(v.values(), t, w);
  const std::string bits = to_bit_string(w);
  // p n z t t t t t t p | refinement 0 0 0
  const std::string expected = std::string("1110") + "110" + "10" + "000000" + "1110" + "1111" + "000";
  bool table = true;
  const std::vector<std::pair<Symbol, std::string>> golden{
      {Symbol::T, "0"}, {Symbol::Z, "10"}, {Symbol::N, "110"}, {Symbol::P, "1110"}, {Symbol::Sep, "1111"}};
  for (const auto& [s, code] : golden) table &= to_bit_string(huffman_encode({s})) == code;
  const bool stream = bits.rfind(expected, 0) == 0;
  return {table && stream, fmt::format("code table {}, emitted first pass {}", table ? "exact" : "WRONG",
                                       stream ? "matches" : "differs: " + bits.substr(0, expected.size()))};
}

struct ChirpRun {
  EncodeReport sb, bb, ezw;
  CartImage reference;
  IndexMap hex;
};

const ChirpRun& chirp_run() {
  static const ChirpRun run = [] {
    SweepConfig cfg;
    const SweepSource src = make_source("chirp", cfg);
    ChirpRun r;
    r.reference = src.reference;
    r.hex = src.hex;
    r.sb = encode_hex_report(src.hex, Scheme::SBHex, cfg.levels);
    r.bb = encode_hex_report(src.hex, Scheme::BBHex, cfg.levels);
    r.ezw = encode_ezw_report(src.reference, cfg.levels);
    return r;
  }();
  return run;
}

Outcome rd_trend() {
  const auto t0 = Clock::now();
  const ChirpRun& run = chirp_run();
  SweepConfig cfg;
  bool ok = true;
  std::string detail;
  for (double b : {0.25, 0.5, 1.0}) {
    auto at = [&](const EncodeReport& rep) {
      const CodeStream cut = truncate_stream(rep.stream, budget_for_bpp(b, rep.stream.header.coefficient_count()));
      const CartImage rec = is_hex_scheme(cut.header.scheme)
                                ? hex_to_cart(decode_hex(cut), 1.0, cfg.cart_size, cfg.cart_size)
                                : decode_ezw_cart(cut);
      return psnr(run.reference, rec);
    };
    const double s = at(run.sb), bb = at(run.bb), e = at(run.ezw);
    ok &= s > e && bb > e;
    detail += fmt::format("{} bpp: SBHex {:.2f} BBHex {:.2f} EZW {:.2f} dB; ", b, s, bb, e);
  }
  const bool same = decode_hex(run.sb.stream) == decode_hex(run.bb.stream);
  ok &= same;
  const double t = seconds_since(t0);
  ok &= t < 300.0;
  detail += fmt::format("unlimited SBHex == BBHex: {}", same ? "yes" : "no");
  return {ok, detail};
}

Outcome symbol_trend() {
  const ChirpRun& run = chirp_run();
  auto coverage = [](const std::vector<PassStats>& ps) {
    std::vector<long> out;
    for (const auto& p : ps) {
      if (static_cast<std::size_t>(p.pass) >= out.size()) out.resize(static_cast<std::size_t>(p.pass) + 1, 0);
      out[static_cast<std::size_t>(p.pass)] += p.zerotree_cells;
    }
    return out;
  };
  // matched depth: the same number of passes from each stream's top threshold
  const auto cs = coverage(run.sb.passes), cb = coverage(run.bb.passes), ce = coverage(run.ezw.passes);
  const std::size_t depth = std::min({cs.size(), cb.size(), ce.size()});
  auto truncated_total = [&](const std::vector<PassStats>& ps) {
    long n = 0;
    for (const auto& p : ps)
      if (static_cast<std::size_t>(p.pass) < depth) n += p.symbol_total();
    return n;
  };
  const long ts = truncated_total(run.sb.passes), tb = truncated_total(run.bb.passes),
             te = truncated_total(run.ezw.passes);
  bool cover_ok = true;
  std::size_t first_bad = depth;
  for (std::size_t k = 0; k < depth; ++k)
    if (!(cs[k] > ce[k] && cb[k] > ce[k])) {
      cover_ok = false;
      first_bad = std::min(first_bad, k);
    }
  const bool count_ok = ts < te && tb < te;
  std::string detail = fmt::format(
      "{} passes; dominant symbols SBHex {} BBHex {} EZW {} ({}); zero-tree coverage {} (pass 0: {} / {} vs {})", depth,
      ts, tb, te, count_ok ? "lower" : "NOT lower", cover_ok ? "exceeds EZW at every pass" : "falls short",
      cs.front(), cb.front(), ce.front());
  if (!cover_ok) detail += fmt::format(", first shortfall at pass {}", first_bad);
  return {count_ok && cover_ok, detail};
}

Outcome hill_recovery() {
  const double ym = 38.5, ec = 0.42, nn = 2.3;
  std::vector<XY> pts;
  for (double x : {0.03, 0.06, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0}) pts.push_back({x, HillFit::hill(x, ym, ec, nn)});
  const HillFit f = hill_fit(pts);
  const double err = std::max({std::abs(f.y_max - ym), std::abs(f.ec50 - ec), std::abs(f.n - nn)});
  const double mid = std::abs(f(f.ec50) - f.y_max / 2);
  return {err <= 1e-6 && mid <= 1e-9,
          fmt::format("parameter error {:.2e}, |f(ec50) - yMax/2| = {:.2e}", err, mid)};
}

Outcome metric_sanity() {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  RealGrid a(64, 64), b(64, 64);
  for (double& v : a.values()) v = u(rng);
  for (std::size_t i = 0; i < b.size(); ++i) b.values()[i] = std::clamp(a.values()[i] + u(rng) / 8 - 16, 0.0, 255.0);
  const double p_self = psnr(a, a), s_self = ssim(a, a);
  const double p_sym = std::abs(psnr(a, b) - psnr(b, a)), s_sym = std::abs(ssim(a, b) - ssim(b, a));
  const bool ok = p_self == kPsnrCap && std::abs(s_self - 1.0) <= 1e-12 && p_sym <= 1e-12 && s_sym <= 1e-12;
  return {ok, fmt::format("psnr(x,x) = {}, ssim(x,x) = {:.15f}, asymmetry {:.1e} / {:.1e}", p_self, s_self, p_sym,
                          s_sym)};
}

}  // namespace

int main() {
  report(1, "perfect reconstruction", perfect_reconstruction);
  report(2, "vanishing moments", vanishing_moments);
  report(3, "structural suite", structural_suite);
  report(4, "embedded-stream equality", embedded_equality);
  report(5, "convergence bound", convergence_bound);
  report(6, "prefix code conformance", huffman_conformance);
  report(7, "rate-distortion trend on the chirp", rd_trend);
  report(8, "symbol-distribution trend on the chirp", symbol_trend);
  report(9, "Hill regression recovery", hill_recovery);
  report(10, "metric sanity", metric_sanity);
  fmt::print("{} of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
