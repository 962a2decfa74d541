#pragma once

// Rate-distortion sweeps: every (image, scheme, bpp) combination, with hex
// reconstructions brought back to the Cartesian comparison grid.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hexz/coder.hpp"
#include "hexz/metrics.hpp"
#include "hexz/netpbm.hpp"
#include "hexz/resample.hpp"

namespace hexz {

struct SweepConfig {
  int hex_width = 256;
  int hex_rows = 512;
  int cart_size = 362;
  int levels = kDefaultLevels;
  FilterBank bank = default_filter_bank();
};

// Source of a sweep: "chirp", "checkerboard" or a PGM/PPM path.
struct SweepSource {
  std::string name;
  CartImage reference;  // cart_size x cart_size
  IndexMap hex;
};

inline SweepSource make_source(const std::string& source, const SweepConfig& cfg) {
  SweepSource s{source, {}, {}};
  if (source == "chirp" || source == "checkerboard") {
    const auto f = source == "chirp" ? chirp_value : checkerboard_value;
    s.reference = sample_cart(f, cfg.cart_size, cfg.cart_size);
    s.hex = sample_hex(f, cfg.hex_width, cfg.hex_rows);
  } else {
    const CartImage src = to_luma(load_netpbm(source));
    s.reference = resample_cart(src, cfg.cart_size, cfg.cart_size);
    s.hex = resample_to_hex(src, cfg.hex_width, cfg.hex_rows);
  }
  return s;
}

struct RDPoint {
  std::string image;
  std::string scheme;
  double target_bpp = 0.0;
  double bpp = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
  std::string error;  // empty on success

  friend bool operator==(const RDPoint&, const RDPoint&) = default;
};

struct SweepResult {
  std::vector<RDPoint> points;
  std::vector<std::pair<std::string, std::vector<PassStats>>> histograms;  // "image/scheme"
};

inline SweepResult run_sweep(const std::vector<std::string>& images, const std::vector<Scheme>& schemes,
                             const std::vector<double>& bpps, const SweepConfig& cfg = {}) {
  SweepResult out;
  for (const auto& image : images) {
    SweepSource src;
    std::string source_error;
    try {
      src = make_source(image, cfg);
    } catch (const std::exception& e) {
      source_error = e.what();
    }
    for (Scheme scheme : schemes) {
      EncodeReport rep;
      std::string encode_error = source_error;
      if (encode_error.empty()) {
        try {
          rep = is_hex_scheme(scheme) ? encode_hex_report(src.hex, scheme, cfg.levels, 0, cfg.bank)
                                      : encode_ezw_report(src.reference, cfg.levels);
          out.histograms.emplace_back(image + "/" + scheme_name(scheme), rep.passes);
        } catch (const std::exception& e) {
          encode_error = e.what();
        }
      }
      for (double target : bpps) {
        RDPoint p{image, scheme_name(scheme), target, 0.0, 0.0, 0.0, {}};
        if (!encode_error.empty()) {
          p.error = encode_error;
          out.points.push_back(p);
          continue;
        }
        try {
          const std::size_t budget = budget_for_bpp(target, rep.stream.header.coefficient_count());
          const CodeStream cut = truncate_stream(rep.stream, budget);
          const CartImage rec = is_hex_scheme(scheme)
                                    ? hex_to_cart(decode_hex(cut, 0, cfg.bank), 1.0, cfg.cart_size, cfg.cart_size)
                                    : decode_ezw_cart(cut);
          p.bpp = hexz::bpp(cut);
          p.psnr = hexz::psnr(src.reference, rec);
          p.ssim = hexz::ssim(src.reference, rec);
        } catch (const std::exception& e) {
          p.error = e.what();
        }
        out.points.push_back(p);
      }
    }
  }
  return out;
}

inline constexpr const char* kSweepCsvHeader = "image,scheme,target_bpp,bpp,psnr,ssim,error";

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}
}  // namespace detail

inline void write_sweep_csv(std::ostream& out, const std::vector<RDPoint>& points) {
  out << kSweepCsvHeader << '\n';
  for (const auto& p : points)
    fmt::print(out, "{},{},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", detail::csv_field(p.image), p.scheme, p.target_bpp,
               p.bpp, p.psnr, p.ssim, detail::csv_field(p.error));
}

inline std::vector<RDPoint> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) throw FormatError("sweep csv: bad header");
  std::vector<RDPoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 7) throw FormatError("sweep csv: expected 7 fields");
    out.push_back({f[0], f[1], std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), std::stod(f[5]), f[6]});
  }
  return out;
}

inline void write_histogram_csv(std::ostream& out, const SweepResult& r) {
  out << "stream,band,pass,exponent,p,n,z,t,zerotree_cells,refinement_bits\n";
  for (const auto& [name, passes] : r.histograms)
    for (const auto& p : passes)
      fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", detail::csv_field(name), p.band, p.pass, p.exponent,
                 p.counts[0], p.counts[1], p.counts[2], p.counts[3], p.zerotree_cells, p.refinement_bits);
}

}  // namespace hexz
