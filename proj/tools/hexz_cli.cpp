// hexz: import, encode, decode and evaluate hexagonal images.
//
// Exit codes: 0 ok, 2 usage, 3 bad file format, 4 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hexz/coder.hpp"
#include "hexz/hexi.hpp"
#include "hexz/metrics.hpp"
#include "hexz/netpbm.hpp"
#include "hexz/resample.hpp"
#include "hexz/sot.hpp"
#include "hexz/sweep.hpp"

namespace {

using namespace hexz;

enum Exit : int { kOk = 0, kUsage = 2, kFormat = 3, kInternal = 4 };

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

FilterBank active_bank() {
  if (const char* path = std::getenv("HEXZ_FILTER_FILE"); path && *path) return load_filter_bank(path);
  return default_filter_bank();
}

CartImage load_cart_source(const std::string& src, int n) {
  if (src == "chirp") return gen_chirp(n);
  if (src == "checkerboard") return gen_checkerboard(n);
  return to_luma(load_netpbm(src));
}

struct ImportArgs {
  std::string src;
  std::string out;
  bool hex = false;
  bool cart = false;
  int width = 256;
  int rows = 512;
  int size = 362;
  double h = 1.0;
};

int cmd_import(const ImportArgs& a) {
  if (a.hex == a.cart) throw DomainError("import: pass exactly one of --hex or --cart");
  if (ends_with(a.src, ".hexi")) {
    if (!a.hex) throw DomainError("import: a .hexi source can only be written as hex");
    save_hexi(a.out, load_hexi(a.src));
    return kOk;
  }
  if (a.hex) {
    IndexMap m;
    if (a.src == "chirp" || a.src == "checkerboard")
      m = sample_hex(a.src == "chirp" ? chirp_value : checkerboard_value, a.width, a.rows, a.h);
    else
      m = resample_to_hex(to_luma(load_netpbm(a.src)), a.width, a.rows, a.h);
    save_hexi(a.out, {m, a.h});
    fmt::print("{}: {} x {} hexagonal samples\n", a.out, a.width, a.rows);
  } else {
    const CartImage src = load_cart_source(a.src, a.size);
    save_pgm(a.out, src.rows() == a.size && src.cols() == a.size ? src : resample_cart(src, a.size, a.size));
    fmt::print("{}: {} x {} pixels\n", a.out, a.size, a.size);
  }
  return kOk;
}

struct EncodeArgs {
  std::string in;
  std::string out;
  std::string scheme = "sbhex";
  int levels = kDefaultLevels;
  double bpp = 0.0;
  bool lossless = false;
};

int cmd_encode(const EncodeArgs& a) {
  if (a.lossless == (a.bpp > 0.0)) throw DomainError("encode: pass exactly one of --bpp or --lossless");
  const Scheme scheme = parse_scheme(a.scheme);
  EncodeReport rep;
  if (is_hex_scheme(scheme)) {
    if (!ends_with(a.in, ".hexi")) throw DomainError("encode: " + a.scheme + " needs a .hexi input");
    const HexImage img = load_hexi(a.in);
    const std::size_t budget = a.lossless ? 0 : budget_for_bpp(a.bpp, img.map.sample_count());
    rep = encode_hex_report(img.map, scheme, a.levels, budget, active_bank());
  } else {
    if (ends_with(a.in, ".hexi")) throw DomainError("encode: ezw needs a Cartesian (.pgm/.ppm) input");
    const CartImage img = to_luma(load_netpbm(a.in));
    const std::size_t budget = a.lossless ? 0 : budget_for_bpp(a.bpp, img.size());
    rep = encode_ezw_report(img, a.levels, budget);
  }
  save_stream(a.out, rep.stream);
  fmt::print("{}: {} payload bits, {:.4f} bpp\n", a.out, rep.stream.header.payload_bits, bpp(rep.stream));
  return kOk;
}

struct DecodeArgs {
  std::string in;
  std::string out;
  double bpp = 0.0;
  int cart_size = 362;
};

int cmd_decode(const DecodeArgs& a) {
  CodeStream s = load_stream(a.in);
  if (a.bpp > 0.0) s = truncate_stream(std::move(s), budget_for_bpp(a.bpp, s.header.coefficient_count()));
  if (is_hex_scheme(s.header.scheme)) {
    const IndexMap m = decode_hex(s, 0, active_bank());
    if (ends_with(a.out, ".pgm"))
      save_pgm(a.out, hex_to_cart(m, 1.0, a.cart_size, a.cart_size));
    else
      save_hexi(a.out, {m, 1.0});
  } else {
    save_pgm(a.out, decode_ezw_cart(s));
  }
  fmt::print("{}: decoded {} payload bits\n", a.out, s.header.payload_bits);
  return kOk;
}

int cmd_info(const std::string& in) {
  const CodeStream s = load_stream(in);
  const auto& h = s.header;
  fmt::print("scheme {}\ntree {} x {}\nsource {} x {}\nlevels {}\npayload bits {}\nbpp {:.6f}\n", scheme_name(h.scheme),
             h.tree_rows, h.tree_cols, h.orig_width, h.orig_rows, h.levels, h.payload_bits, bpp(s));
  fmt::print("band,pass,exponent,p,n,z,t,zerotree_cells,refinement_bits,complete\n");
  for (const auto& p : stream_pass_stats(s))
    fmt::print("{},{},{},{},{},{},{},{},{},{}\n", p.band, p.pass, p.exponent, p.counts[0], p.counts[1], p.counts[2],
               p.counts[3], p.zerotree_cells, p.refinement_bits, p.complete ? 1 : 0);
  return kOk;
}

struct SweepArgs {
  std::vector<std::string> images;
  std::vector<std::string> schemes{"sbhex", "bbhex", "ezw"};
  std::vector<double> bpps;
  std::string csv;
  std::string hist;
  int levels = kDefaultLevels;
};

int cmd_sweep(const SweepArgs& a) {
  std::vector<Scheme> schemes;
  for (const auto& s : a.schemes) schemes.push_back(parse_scheme(s));
  SweepConfig cfg;
  cfg.levels = a.levels;
  cfg.bank = active_bank();
  const SweepResult r = run_sweep(a.images, schemes, a.bpps, cfg);
  std::ofstream csv(a.csv);
  if (!csv) throw FormatError("cannot write " + a.csv);
  write_sweep_csv(csv, r.points);
  if (!a.hist.empty()) {
    std::ofstream hist(a.hist);
    if (!hist) throw FormatError("cannot write " + a.hist);
    write_histogram_csv(hist, r);
  }
  int failed = 0;
  for (const auto& p : r.points) failed += !p.error.empty();
  fmt::print("{}: {} rows, {} failed\n", a.csv, r.points.size(), failed);
  return kOk;
}

int cmd_dump_scan(int rows, int cols) {
  fmt::print("index,row,col\n");
  const auto order = hex_scan_order(rows, cols);
  for (std::size_t i = 0; i < order.size(); ++i) fmt::print("{},{},{}\n", i, order[i].row, order[i].col);
  return kOk;
}

int cmd_dump_slots(int rows, int cols, int levels) {
  fmt::print("level,band,quadrant,row0,col0,rows,cols\n");
  for (const auto& s : spiral_layout(rows, cols, levels))
    fmt::print("{},{},{},{},{},{},{}\n", s.level, s.band, quadrant_name(s.quadrant), s.row0, s.col0, s.rows, s.cols);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexagonal image wavelet codec"};
  app.require_subcommand(1);

  ImportArgs imp;
  auto* import = app.add_subcommand("import", "resample a PGM/PPM (or chirp|checkerboard) onto a grid");
  import->add_option("src", imp.src, "source image")->required();
  import->add_flag("--hex", imp.hex, "write a hexagonal .hexi");
  import->add_flag("--cart", imp.cart, "write a Cartesian .pgm");
  import->add_option("--width", imp.width, "hexagonal samples per row")->check(CLI::Range(2, 65535));
  import->add_option("--rows", imp.rows, "hexagonal rows")->check(CLI::Range(2, 65535));
  import->add_option("--size", imp.size, "Cartesian side length")->check(CLI::Range(8, 65535));
  import->add_option("--spacing", imp.h, "lattice spacing h")->check(CLI::PositiveNumber);
  import->add_option("--out", imp.out, "output file")->required();

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "encode a .hexi (sbhex, bbhex) or .pgm/.ppm (ezw)");
  encode->add_option("in", enc.in, "input image")->required();
  encode->add_option("--scheme", enc.scheme, "sbhex | bbhex | ezw")
      ->check(CLI::IsMember({"sbhex", "bbhex", "ezw"}));
  encode->add_option("--levels", enc.levels, "decomposition levels")->check(CLI::Range(1, kMaxLevels));
  encode->add_option("--bpp", enc.bpp, "target bits per pixel")->check(CLI::PositiveNumber);
  encode->add_flag("--lossless", enc.lossless, "code every pass");
  encode->add_option("--out", enc.out, "output .hxc")->required();

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "decode a .hxc to .hexi or .pgm");
  decode->add_option("in", dec.in, "input .hxc")->required();
  decode->add_option("--out", dec.out, "output (.hexi, or .pgm)")->required();
  decode->add_option("--bpp", dec.bpp, "truncate to this rate first")->check(CLI::PositiveNumber);
  decode->add_option("--cart-size", dec.cart_size, "side of the .pgm written for hexagonal streams")
      ->check(CLI::Range(2, 65535));

  std::string info_in;
  auto* info = app.add_subcommand("info", "print a .hxc header and per-pass statistics");
  info->add_option("in", info_in, "input .hxc")->required();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "rate-distortion sweep to CSV");
  sweep->add_option("images", sw.images, "PGM/PPM paths or chirp|checkerboard")->required();
  sweep->add_option("--schemes", sw.schemes, "schemes")->delimiter(',')->check(CLI::IsMember({"sbhex", "bbhex", "ezw"}));
  sweep->add_option("--bpps", sw.bpps, "bit rates")->delimiter(',')->required()->check(CLI::PositiveNumber);
  sweep->add_option("--levels", sw.levels, "decomposition levels")->check(CLI::Range(1, kMaxLevels));
  sweep->add_option("--csv", sw.csv, "RD output")->required();
  sweep->add_option("--hist", sw.hist, "per-pass symbol histogram output");

  int rows = 0, cols = 0, levels = kDefaultLevels;
  auto* dump_scan = app.add_subcommand("dump-scan", "hexagonal scan order as CSV");
  dump_scan->add_option("rows", rows)->required()->check(CLI::Range(1, 4096));
  dump_scan->add_option("cols", cols)->required()->check(CLI::Range(1, 4096));
  auto* dump_slots = app.add_subcommand("dump-slots", "spiral slot table as CSV");
  dump_slots->add_option("rows", rows)->required()->check(CLI::Range(2, 65535));
  dump_slots->add_option("cols", cols)->required()->check(CLI::Range(2, 65535));
  dump_slots->add_option("--levels", levels)->check(CLI::Range(1, kMaxLevels));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*import) return cmd_import(imp);
    if (*encode) return cmd_encode(enc);
    if (*decode) return cmd_decode(dec);
    if (*info) return cmd_info(info_in);
    if (*sweep) return cmd_sweep(sw);
    if (*dump_scan) return cmd_dump_scan(rows, cols);
    if (*dump_slots) return cmd_dump_slots(rows, cols, levels);
  } catch (const FormatError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kFormat;
  } catch (const DomainError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "internal error: {}\n", e.what());
    return kInternal;
  }
  return kUsage;
}
