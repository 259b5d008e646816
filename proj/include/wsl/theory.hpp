// Weak-type exponent alpha = min(beta, gamma) for bilinear sparse bounds and
// the map of where alpha < 1 over the admissible exponent triangle.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsl/measure.hpp"

namespace wsl {

/// 1/p + max{ min{1/p1', (1/p1') p2'/p}, min{1/p2', (1/p2') p1'/p} }.
[[nodiscard]] inline double beta(const ExponentTuple& P) {
  const double a = std::min(1.0 / P.p1c, (1.0 / P.p1c) * (P.p2c / P.p));
  const double b = std::min(1.0 / P.p2c, (1.0 / P.p2c) * (P.p1c / P.p));
  return 1.0 / P.p + std::max(a, b);
}

/// Strong-type exponent max{1, p1'/p, p2'/p}.
[[nodiscard]] inline double gamma(const ExponentTuple& P) {
  return std::max({1.0, P.p1c / P.p, P.p2c / P.p});
}

struct ExponentReport {
  double p1, p2, p;
  double beta, gamma, alpha;
  bool weak_strictly_better;  // alpha < gamma
  bool alpha_lt_1;
};

[[nodiscard]] inline ExponentReport alpha(const ExponentTuple& P) {
  ExponentReport r{};
  r.p1 = P.p1;
  r.p2 = P.p2;
  r.p = P.p;
  r.beta = beta(P);
  r.gamma = gamma(P);
  r.alpha = std::min(r.beta, r.gamma);
  r.weak_strictly_better = r.alpha < r.gamma;
  r.alpha_lt_1 = r.alpha < 1.0;
  return r;
}

inline const double golden_threshold = (3.0 + std::sqrt(5.0)) / 2.0;

struct RegionRow {
  double inv_p1, inv_p2, p;
  double beta, gamma, alpha;
  bool weak_strictly_better, alpha_lt_1, p_ge_golden, min_gt_4;
};

struct RegionTable {
  int resolution = 0;
  std::vector<RegionRow> rows;
};

/// Samples (1/p1, 1/p2) = ((i + 1/2)/N, (j + 1/2)/N) over the open triangle
/// 1/p1 + 1/p2 < 1; rows ordered by i, then j.
[[nodiscard]] inline RegionTable region_map(int resolution) {
  if (resolution < 2) throw std::invalid_argument("region resolution must be at least 2");
  RegionTable t;
  t.resolution = resolution;
  const double n = resolution;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j + 1 < resolution; ++j) {
      const double x = (i + 0.5) / n, y = (j + 0.5) / n;
      const ExponentTuple P(1.0 / x, 1.0 / y);
      const auto e = alpha(P);
      t.rows.push_back({x, y, P.p, e.beta, e.gamma, e.alpha, e.weak_strictly_better, e.alpha_lt_1,
                        P.p >= golden_threshold, std::min(P.p1, P.p2) > 4.0});
    }
  }
  return t;
}

/// Shortest text that parses back to the same double, with 17 significant digits.
[[nodiscard]] inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_region_csv(const RegionTable& t, std::ostream& out) {
  out << "inv_p1,inv_p2,p,beta,gamma,alpha,weak_strictly_better,alpha_lt_1,p_ge_golden,min_gt_4\n";
  for (const auto& r : t.rows) {
    out << format_real(r.inv_p1) << ',' << format_real(r.inv_p2) << ',' << format_real(r.p) << ','
        << format_real(r.beta) << ',' << format_real(r.gamma) << ',' << format_real(r.alpha) << ','
        << int(r.weak_strictly_better) << ',' << int(r.alpha_lt_1) << ',' << int(r.p_ge_golden)
        << ',' << int(r.min_gt_4) << '\n';
  }
}

/// Deterministic SVG: one square per sample, light shade where alpha < gamma,
/// darker shade where alpha < 1, plus axes for 1/p1 (horizontal) and 1/p2.
[[nodiscard]] inline std::string region_svg(const RegionTable& t) {
  constexpr int size = 400, margin = 40;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
    << size + 2 * margin << "\" viewBox=\"0 0 " << size + 2 * margin << ' ' << size + 2 * margin
    << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << size + 2 * margin << "\" height=\"" << size + 2 * margin
    << "\" fill=\"white\"/>\n";
  if (t.resolution > 0 && !t.rows.empty()) {
    const double cell = static_cast<double>(size) / t.resolution;
    const double half = 0.5 / t.resolution;
    s << "<g stroke=\"none\">\n";
    char buf[160];
    for (const auto& r : t.rows) {
      const char* fill = r.alpha_lt_1 ? "#3b6ea8" : (r.weak_strictly_better ? "#a9c6e8" : nullptr);
      if (fill == nullptr) continue;
      const double x = margin + (r.inv_p1 - half) * size;
      const double y = margin + (1.0 - (r.inv_p2 + half)) * size;
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.4f\" y=\"%.4f\" width=\"%.4f\" height=\"%.4f\" fill=\"%s\"/>\n", x,
                    y, cell, cell, fill);
      s << buf;
    }
    s << "</g>\n";
  }
  const int x0 = margin, y0 = margin + size, x1 = margin + size, y1 = margin;
  s << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
    << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\"/>\n"
    << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\"/>\n"
    << "<line x1=\"" << x1 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
    << "\" stroke-dasharray=\"4 3\"/>\n"
    << "</g>\n"
    << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n"
    << "<text x=\"" << x0 << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">0</text>\n"
    << "<text x=\"" << x1 << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">1</text>\n"
    << "<text x=\"" << x0 - 8 << "\" y=\"" << y1 + 4 << "\" text-anchor=\"end\">1</text>\n"
    << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << y0 + 30 << "\" text-anchor=\"middle\">1/p1</text>\n"
    << "<text x=\"" << x0 - 26 << "\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\">1/p2</text>\n"
    << "</g>\n"
    << "</svg>\n";
  return s.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace wsl
