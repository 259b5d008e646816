// Piecewise-constant functions and weights on the finest dyadic cells, their
// averages, and the L^p / weak L^p (quasi-)norms used throughout the lab.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wsl/dyadic.hpp"

namespace wsl {

/// A real value per finest cell, lexicographic cell order.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridConfig cfg, std::vector<double> values) : cfg_(cfg), values_(std::move(values)) {
    cfg_.validate();
    if (values_.size() != cfg_.cell_count())
      throw std::invalid_argument("grid function length does not match 2^(nK)");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("grid function values must be finite");
  }

  static GridFunction constant(GridConfig cfg, double c) {
    return {cfg, std::vector<double>(cfg.cell_count(), c)};
  }
  static GridFunction indicator(GridConfig cfg, const DyadicCube& q) {
    std::vector<double> v(cfg.cell_count(), 0.0);
    for (std::size_t c : cells_of(q, cfg)) v[c] = 1.0;
    return {cfg, std::move(v)};
  }

  [[nodiscard]] const GridConfig& config() const { return cfg_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  [[nodiscard]] bool is_nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
  }
  [[nodiscard]] bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
  }

 private:
  GridConfig cfg_;
  std::vector<double> values_;
};

/// A strictly positive GridFunction.
class Weight {
 public:
  Weight() = default;
  explicit Weight(GridFunction f) : f_(std::move(f)) {
    for (double v : f_.values())
      if (!(v > 0.0)) throw std::invalid_argument("weight values must be strictly positive");
  }
  Weight(GridConfig cfg, std::vector<double> values) : Weight(GridFunction(cfg, std::move(values))) {}

  static Weight constant(GridConfig cfg, double c) { return Weight(GridFunction::constant(cfg, c)); }

  [[nodiscard]] const GridFunction& function() const { return f_; }
  [[nodiscard]] const GridConfig& config() const { return f_.config(); }
  [[nodiscard]] std::span<const double> values() const { return f_.values(); }
  [[nodiscard]] double operator[](std::size_t i) const { return f_[i]; }
  [[nodiscard]] std::size_t size() const { return f_.size(); }

 private:
  GridFunction f_;
};

[[nodiscard]] inline double conjugate(double p) { return p / (p - 1.0); }

/// (p1, p2, p) with 1/p = 1/p1 + 1/p2 and conjugates; requires 1 < p.
struct ExponentTuple {
  double p1, p2, p;
  double p1c, p2c, pc;

  ExponentTuple(double first, double second) : p1(first), p2(second) {
    if (!(p1 > 1.0) || !(p2 > 1.0) || !std::isfinite(p1) || !std::isfinite(p2))
      throw std::invalid_argument("exponents p1, p2 must lie in (1, inf)");
    p = 1.0 / (1.0 / p1 + 1.0 / p2);
    if (!(p > 1.0)) throw std::invalid_argument("exponent tuple requires 1 < p");
    p1c = conjugate(p1);
    p2c = conjugate(p2);
    pc = conjugate(p);
  }

  [[nodiscard]] ExponentTuple swapped() const { return {p2, p1}; }
};

inline void require_same_grid(const GridConfig& a, const GridConfig& b) {
  if (!(a == b)) throw std::invalid_argument("operands live on different grids");
}

/// Sums of cell values over every dyadic cube, one vector per level.
/// levels()[k][i] is the sum over the cube cube_at(cfg, k, i).
class LevelSums {
 public:
  LevelSums(const GridConfig& cfg, std::span<const double> cells) : cfg_(cfg) {
    const int K = cfg.finest_level;
    sums_.resize(static_cast<std::size_t>(K) + 1);
    sums_[K].assign(cells.begin(), cells.end());
    for (int k = K - 1; k >= 0; --k) {
      auto& cur = sums_[k];
      const auto& fine = sums_[k + 1];
      cur.assign(cfg.cubes_at(k), 0.0);
      for (std::size_t i = 0; i < fine.size(); ++i) cur[parent_index(cfg, k + 1, i)] += fine[i];
    }
  }
  explicit LevelSums(const GridFunction& f) : LevelSums(f.config(), f.values()) {}
  explicit LevelSums(const Weight& w) : LevelSums(w.config(), w.values()) {}

  [[nodiscard]] double sum(int level, std::size_t index) const { return sums_[level][index]; }
  [[nodiscard]] double sum(const DyadicCube& q) const { return sums_[q.level][linear_index(cfg_, q)]; }
  [[nodiscard]] double mean(int level, std::size_t index) const {
    return sums_[level][index] / static_cast<double>(cfg_.cells_per_cube(level));
  }
  [[nodiscard]] double mean(const DyadicCube& q) const { return mean(q.level, linear_index(cfg_, q)); }
  [[nodiscard]] const GridConfig& config() const { return cfg_; }

 private:
  GridConfig cfg_;
  std::vector<std::vector<double>> sums_;
};

// Cellwise helpers.

template <class Fn>
[[nodiscard]] GridFunction map_cells(const GridFunction& f, Fn&& fn) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = fn(f[i]);
  return {f.config(), std::move(out)};
}

[[nodiscard]] inline GridFunction multiply(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.config(), b.config());
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return {a.config(), std::move(out)};
}

[[nodiscard]] inline GridFunction abs(const GridFunction& f) {
  return map_cells(f, [](double v) { return std::abs(v); });
}

[[nodiscard]] inline GridFunction scale(const GridFunction& f, double c) {
  return map_cells(f, [c](double v) { return c * v; });
}

/// f with everything outside q set to zero.
[[nodiscard]] inline GridFunction restrict_to(const GridFunction& f, const DyadicCube& q) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t c : cells_of(q, f.config())) out[c] = f[c];
  return {f.config(), std::move(out)};
}

[[nodiscard]] inline double average(const GridFunction& f, const DyadicCube& q) {
  const auto cells = cells_of(q, f.config());
  double s = 0.0;
  for (std::size_t c : cells) s += f[c];
  return s / static_cast<double>(cells.size());
}

/// w(Q) = |cell| * sum of w over the cells of Q.
[[nodiscard]] inline double weighted_measure(const Weight& w, const DyadicCube& q) {
  double s = 0.0;
  for (std::size_t c : cells_of(q, w.config())) s += w[c];
  return s * w.config().cell_measure();
}

[[nodiscard]] inline double weighted_average(const GridFunction& f, const Weight& w,
                                             const DyadicCube& q) {
  require_same_grid(f.config(), w.config());
  double num = 0.0, den = 0.0;
  for (std::size_t c : cells_of(q, w.config())) {
    num += f[c] * w[c];
    den += w[c];
  }
  return num / den;
}

/// sigma = w^(1 - pi').
[[nodiscard]] inline Weight dual_weight(const Weight& w, double pi) {
  if (!(pi > 1.0)) throw std::invalid_argument("dual_weight requires exponent in (1, inf)");
  const double e = 1.0 - conjugate(pi);
  return Weight(map_cells(w.function(), [e](double v) { return std::pow(v, e); }));
}

/// v = w1^(p/p1) * w2^(p/p2).
[[nodiscard]] inline Weight joint_weight(const Weight& w1, const Weight& w2, const ExponentTuple& P) {
  require_same_grid(w1.config(), w2.config());
  const double e1 = P.p / P.p1, e2 = P.p / P.p2;
  std::vector<double> out(w1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(w1[i], e1) * std::pow(w2[i], e2);
  return Weight(w1.config(), std::move(out));
}

/// (sum |f|^p w |cell|)^(1/p).
[[nodiscard]] inline double lp_norm(const GridFunction& f, const Weight& w, double p) {
  require_same_grid(f.config(), w.config());
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm requires p > 0");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p) * w[i];
  return std::pow(s * f.config().cell_measure(), 1.0 / p);
}

/// sup_t t * mu(|f| > t)^(1/p) for a step function with cell masses `mass`.
/// The supremum is attained in the limit t -> t_j from below at each jump value
/// t_j, where the superlevel set is {|f| >= t_j}.
[[nodiscard]] inline double weak_quasi_norm(std::span<const double> values,
                                            std::span<const double> mass, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("weak norm requires p > 0");
  std::vector<std::pair<double, double>> cells;
  cells.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a > 0.0) cells.emplace_back(a, mass[i]);
  }
  std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  double best = 0.0, accumulated = 0.0;
  for (std::size_t i = 0; i < cells.size();) {
    const double t = cells[i].first;
    while (i < cells.size() && cells[i].first == t) accumulated += cells[i++].second;
    best = std::max(best, t * std::pow(accumulated, 1.0 / p));
  }
  return best;
}

[[nodiscard]] inline double weak_norm(const GridFunction& f, const Weight& w, double p) {
  require_same_grid(f.config(), w.config());
  std::vector<double> mass(w.values().begin(), w.values().end());
  const double h = f.config().cell_measure();
  for (double& m : mass) m *= h;
  return weak_quasi_norm(f.values(), mass, p);
}

struct KolmogorovResult {
  double lhs;
  double rhs;
  bool pass;
};

[[nodiscard]] inline double kolmogorov_constant(double p) {
  return std::pow(1.0 / p + 1.0 / (1.0 - p), 1.0 / p);
}

/// ||f||_{L^p(dx/|Q|)} <= (1/p + 1/(1-p))^(1/p) ||f||_{L^{1,inf}(dx/|Q|)} on Q, 0 < p < 1.
[[nodiscard]] inline KolmogorovResult kolmogorov_check(const GridFunction& f, const DyadicCube& q,
                                                       double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("kolmogorov_check requires 0 < p < 1");
  const auto cells = cells_of(q, f.config());
  const double m = 1.0 / static_cast<double>(cells.size());
  std::vector<double> vals;
  vals.reserve(cells.size());
  double s = 0.0;
  for (std::size_t c : cells) {
    vals.push_back(f[c]);
    s += std::pow(std::abs(f[c]), p) * m;
  }
  const std::vector<double> mass(cells.size(), m);
  const double lhs = std::pow(s, 1.0 / p);
  const double rhs = kolmogorov_constant(p) * weak_quasi_norm(vals, mass, 1.0);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-12)};
}

}  // namespace wsl
