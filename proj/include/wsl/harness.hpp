// Weight-family generators and the empirical exponent (slope) experiment.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wsl/constants.hpp"
#include "wsl/measure.hpp"
#include "wsl/sparse.hpp"
#include "wsl/testing_conditions.hpp"
#include "wsl/theory.hpp"

namespace wsl {

/// Worker count: WSL_THREADS when set to a positive integer, else hardware concurrency.
[[nodiscard]] inline unsigned thread_budget() {
  if (const char* env = std::getenv("WSL_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n). Each index writes only its own output slot,
/// so results do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_budget(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
[[nodiscard]] inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Cell averages of x^a on [0,1), 1D grids only.
[[nodiscard]] inline Weight power_weight(double a, const GridConfig& cfg) {
  if (cfg.dimension != 1) throw std::invalid_argument("power_weight is defined on 1D grids only");
  if (!(a > -1.0)) throw std::invalid_argument("not locally integrable");
  const double b = a + 1.0;
  const std::size_t n = cfg.cell_count();
  const double h = cfg.cell_measure();
  std::vector<double> v(n);
  // First cell: h^b / (b h). Later cells: x_j^b expm1(b log1p(h/x_j)) / (b h),
  // which avoids cancellation between neighbouring powers.
  v[0] = std::pow(h, a) / b;
  for (std::size_t j = 1; j < n; ++j) {
    const double x = static_cast<double>(j) * h;
    v[j] = std::pow(x, b) * std::expm1(b * std::log1p(1.0 / static_cast<double>(j))) / (b * h);
  }
  return Weight(cfg, std::move(v));
}

/// exp(roughness * X) for a seeded dyadic cascade X = sum_k u_k 2^(-k/2),
/// one uniform u_k in [-1, 1] per cube of level k >= 1.
[[nodiscard]] inline Weight random_ap_weight(const GridConfig& cfg, std::uint64_t seed, double roughness) {
  std::mt19937_64 rng(seed);
  std::vector<double> field(1, 0.0), next;
  for (int k = 1; k <= cfg.finest_level; ++k) {
    next.resize(cfg.cubes_at(k));
    const double amp = std::pow(2.0, -0.5 * k);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = field[parent_index(cfg, k, i)] + amp * (2.0 * unit_uniform(rng) - 1.0);
    field.swap(next);
  }
  for (double& x : field) x = std::exp(roughness * x);
  return Weight(cfg, std::move(field));
}

[[nodiscard]] inline GridFunction random_nonnegative(const GridConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(cfg.cell_count());
  for (double& x : v) {
    const double u = unit_uniform(rng);
    x = u * u * u;
  }
  return {cfg, std::move(v)};
}

enum class FamilyKind { power, random_ap };

/// power: w_i = x^{a_i}, a_i(delta) = (1 - delta)(p_i - 1).
/// random_ap: w_i = random_ap_weight(seed + i, roughness * log2(1/delta)); delta = 1
/// gives the trivial pair in both kinds.
struct WeightFamilySpec {
  FamilyKind kind = FamilyKind::power;
  std::vector<double> deltas;
  std::uint64_t seed = 1;
  double roughness = 0.25;

  void validate() const {
    if (deltas.empty()) throw std::invalid_argument("weight family needs at least one delta");
    for (double d : deltas)
      if (!(d > 0.0 && d <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  }
};

/// delta in {2^-first, ..., 2^-last}.
[[nodiscard]] inline std::vector<double> dyadic_deltas(int first, int last) {
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

struct FamilyMember {
  double delta;
  Weight w1, w2;
  double apvec;
};

[[nodiscard]] inline FamilyMember family_member(const WeightFamilySpec& spec, const ExponentTuple& P,
                                                const GridConfig& cfg, double delta) {
  Weight w1, w2;
  if (spec.kind == FamilyKind::power) {
    w1 = power_weight((1.0 - delta) * (P.p1 - 1.0), cfg);
    w2 = power_weight((1.0 - delta) * (P.p2 - 1.0), cfg);
  } else {
    const double s = spec.roughness * std::log2(1.0 / delta);
    w1 = random_ap_weight(cfg, spec.seed, s);
    w2 = random_ap_weight(cfg, spec.seed + 1, s);
  }
  const double a = apvec_constant(w1, w2, P).value;
  return {delta, std::move(w1), std::move(w2), a};
}

/// Members ordered by decreasing delta.
[[nodiscard]] inline std::vector<FamilyMember> build_family(const WeightFamilySpec& spec,
                                                            const ExponentTuple& P,
                                                            const GridConfig& cfg) {
  spec.validate();
  std::vector<double> deltas = spec.deltas;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  std::vector<FamilyMember> out(deltas.size(), FamilyMember{0.0, {}, {}, 0.0});
  parallel_for(deltas.size(), [&](std::size_t i) { out[i] = family_member(spec, P, cfg, deltas[i]); });
  return out;
}

/// Least-squares slope of y against x.
[[nodiscard]] inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("no dynamic range");
  return sxy / sxx;
}

/// Slope of log y against log x.
[[nodiscard]] inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
  std::transform(y.begin(), y.end(), ly.begin(), [](double v) { return std::log(v); });
  return least_squares_slope(lx, ly);
}

/// Indicators of [0, 2^-k) (corner cubes in 2D) for k = 0..K plus `random_count`
/// seeded random nonnegative functions.
[[nodiscard]] inline std::vector<GridFunction> default_test_functions(const GridConfig& cfg,
                                                                       std::uint64_t seed,
                                                                       int random_count = 8) {
  std::vector<GridFunction> out;
  for (int k = 0; k <= cfg.finest_level; ++k) out.push_back(GridFunction::indicator(cfg, {k, {0, 0}}));
  for (int i = 0; i < random_count; ++i) out.push_back(random_nonnegative(cfg, seed + 1000 + i));
  return out;
}

struct ExperimentRow {
  double delta;
  double apvec_constant;
  double weak_quantity;
  double strong_quantity;
  double ratio_weak;    // weak / apvec^alpha
  double ratio_strong;  // strong / apvec^gamma
};

struct SlopeResult {
  std::vector<ExperimentRow> rows;
  double weak_slope;
  double strong_slope;
};

/// Max of the weak and strong global quantities over all ordered pairs of test functions.
[[nodiscard]] inline GlobalQuantities max_global_quantities(const SparseFamily& S, const Weight& w1,
                                                            const Weight& w2, const ExponentTuple& P,
                                                            const std::vector<GridFunction>& tests) {
  const WeightBundle W(w1, w2, P);
  const GridConfig& cfg = S.config();
  std::vector<std::vector<double>> mean1(tests.size()), mean2(tests.size());
  std::vector<double> norm1(tests.size()), norm2(tests.size());
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const LevelSums a(multiply(abs(tests[t]), W.sigma1.function()));
    const LevelSums b(multiply(abs(tests[t]), W.sigma2.function()));
    for (const auto& q : S.cubes()) {
      mean1[t].push_back(a.mean(q));
      mean2[t].push_back(b.mean(q));
    }
    norm1[t] = lp_norm(tests[t], W.sigma1, P.p1);
    norm2[t] = lp_norm(tests[t], W.sigma2, P.p2);
  }
  GlobalQuantities best{0.0, 0.0};
  std::vector<double> coeff(S.size());
  for (std::size_t i = 0; i < tests.size(); ++i) {
    for (std::size_t j = 0; j < tests.size(); ++j) {
      for (std::size_t n = 0; n < S.size(); ++n) coeff[n] = mean1[i][n] * mean2[j][n];
      const GridFunction g = spread_coefficients(cfg, S.cubes(), coeff);
      const double denom = norm1[i] * norm2[j];
      best.weak = std::max(best.weak, weak_norm(g, W.v, P.p) / denom);
      best.strong = std::max(best.strong, lp_norm(g, W.v, P.p) / denom);
    }
  }
  return best;
}

[[nodiscard]] inline SlopeResult slope_experiment(const WeightFamilySpec& spec, const ExponentTuple& P,
                                                  const GridConfig& cfg, const SparseFamily& S,
                                                  const std::vector<GridFunction>& tests) {
  spec.validate();
  if (spec.deltas.size() < 4) throw std::invalid_argument("slope experiment needs at least 4 family members");
  std::vector<double> deltas = spec.deltas;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  const auto exps = alpha(P);
  SlopeResult r;
  r.rows.resize(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    const FamilyMember m = family_member(spec, P, cfg, deltas[i]);
    const auto q = max_global_quantities(S, m.w1, m.w2, P, tests);
    r.rows[i] = {m.delta, m.apvec, q.weak, q.strong, q.weak / std::pow(m.apvec, exps.alpha),
                 q.strong / std::pow(m.apvec, exps.gamma)};
  });
  std::vector<double> a, weak, strong;
  for (const auto& row : r.rows) {
    a.push_back(row.apvec_constant);
    weak.push_back(row.weak_quantity);
    strong.push_back(row.strong_quantity);
  }
  const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
  if (!(*hi > *lo * (1.0 + 1e-9))) throw std::invalid_argument("no dynamic range");
  r.weak_slope = log_log_slope(a, weak);
  r.strong_slope = log_log_slope(a, strong);
  return r;
}

inline void write_experiment_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << "delta,apvec,weak,strong,ratio_weak,ratio_strong\n";
  for (const auto& r : rows) {
    out << format_real(r.delta) << ',' << format_real(r.apvec_constant) << ','
        << format_real(r.weak_quantity) << ',' << format_real(r.strong_quantity) << ','
        << format_real(r.ratio_weak) << ',' << format_real(r.ratio_strong) << '\n';
  }
}

}  // namespace wsl
