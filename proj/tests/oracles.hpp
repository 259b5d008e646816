// Brute-force reference implementations used only by tests. They loop over
// cubes and cells directly from the definitions and share no code path with
// the pyramid-based library routines beyond cell enumeration.
#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "wsl/dyadic.hpp"
#include "wsl/measure.hpp"

namespace oracle {

using wsl::DyadicCube;
using wsl::GridConfig;

inline double mean_over(const std::vector<double>& v, const DyadicCube& q, const GridConfig& cfg) {
  double s = 0.0;
  const auto cells = wsl::cells_of(q, cfg);
  for (auto c : cells) s += v[c];
  return s / static_cast<double>(cells.size());
}

inline std::vector<double> values(const wsl::GridFunction& f) {
  return {f.values().begin(), f.values().end()};
}

inline std::vector<double> powered(const std::vector<double>& v, double e) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::pow(v[i], e);
  return out;
}

inline double ap(const std::vector<double>& w, const GridConfig& cfg, double p) {
  const double pc = p / (p - 1.0);
  const auto dual = powered(w, 1.0 - pc);
  double best = 0.0;
  for (const auto& q : wsl::all_cubes(cfg))
    best = std::max(best, mean_over(w, q, cfg) * std::pow(mean_over(dual, q, cfg), p - 1.0));
  return best;
}

/// sup_Q <v>_Q <s1>_Q^(p/p1') <s2>_Q^(p/p2') computed from w1, w2 directly.
inline double apvec(const std::vector<double>& w1, const std::vector<double>& w2, const GridConfig& cfg,
                    double p1, double p2) {
  const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
  const double p1c = p1 / (p1 - 1.0), p2c = p2 / (p2 - 1.0);
  std::vector<double> v(w1.size()), s1(w1.size()), s2(w1.size());
  for (std::size_t i = 0; i < w1.size(); ++i) {
    v[i] = std::pow(w1[i], p / p1) * std::pow(w2[i], p / p2);
    s1[i] = std::pow(w1[i], 1.0 - p1c);
    s2[i] = std::pow(w2[i], 1.0 - p2c);
  }
  double best = 0.0;
  for (const auto& q : wsl::all_cubes(cfg))
    best = std::max(best, mean_over(v, q, cfg) * std::pow(mean_over(s1, q, cfg), p / p1c) *
                              std::pow(mean_over(s2, q, cfg), p / p2c));
  return best;
}

/// sup_Q (1/w(Q)) int_Q M_Q w, M_Q(x) = max over dyadic R with x in R subset Q of <w>_R.
inline double ainfty(const std::vector<double>& w, const GridConfig& cfg) {
  const auto cubes = wsl::all_cubes(cfg);
  double best = 0.0;
  for (const auto& q : cubes) {
    double integral = 0.0, mass = 0.0;
    for (auto c : wsl::cells_of(q, cfg)) {
      const auto cell = wsl::cell_cube(cfg, c);
      double m = 0.0;
      for (const auto& r : cubes)
        if (wsl::contained_in(r, q) && wsl::contained_in(cell, r)) m = std::max(m, mean_over(w, r, cfg));
      integral += m;
      mass += w[c];
    }
    best = std::max(best, integral / mass);
  }
  return best;
}

/// sup over every candidate threshold t in the value set of t * mu(|f| >= t)^(1/p).
inline double weak(const std::vector<double>& f, const std::vector<double>& mass, double p) {
  double best = 0.0;
  for (double t : f) {
    t = std::abs(t);
    if (t == 0.0) continue;
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (std::abs(f[i]) >= t) m += mass[i];
    best = std::max(best, t * std::pow(m, 1.0 / p));
  }
  return best;
}

/// Cellwise sum over the cubes of S of <f1>_Q <f2>_Q chi_Q.
inline std::vector<double> sparse(const std::vector<DyadicCube>& S, const std::vector<double>& f1,
                                  const std::vector<double>& f2, const GridConfig& cfg) {
  std::vector<double> out(cfg.cell_count(), 0.0);
  for (const auto& q : S) {
    const double c = mean_over(f1, q, cfg) * mean_over(f2, q, cfg);
    for (auto x : wsl::cells_of(q, cfg)) out[x] += c;
  }
  return out;
}

/// Stopping family by direct recursion over all cubes of S.
inline std::set<DyadicCube> stopping(const std::vector<DyadicCube>& S, const std::vector<double>& f,
                                     const std::vector<double>& w, const GridConfig& cfg) {
  const auto avg = [&](const DyadicCube& q) {
    double num = 0.0, den = 0.0;
    for (auto c : wsl::cells_of(q, cfg)) {
      num += f[c] * w[c];
      den += w[c];
    }
    return num / den;
  };
  std::vector<DyadicCube> generation;
  for (const auto& q : S) {
    bool maximal = true;
    for (const auto& r : S)
      if (r != q && wsl::contained_in(q, r)) maximal = false;
    if (maximal) generation.push_back(q);
  }
  std::set<DyadicCube> out(generation.begin(), generation.end());
  while (!generation.empty()) {
    std::vector<DyadicCube> next;
    for (const auto& F : generation) {
      const double a = avg(F);
      std::vector<DyadicCube> hits;
      for (const auto& q : S)
        if (q != F && wsl::contained_in(q, F) && avg(q) > 2.0 * a) hits.push_back(q);
      for (const auto& q : hits) {
        bool maximal = true;
        for (const auto& r : hits)
          if (r != q && wsl::contained_in(q, r)) maximal = false;
        if (maximal) next.push_back(q);
      }
    }
    out.insert(next.begin(), next.end());
    generation = std::move(next);
  }
  return out;
}

}  // namespace oracle
