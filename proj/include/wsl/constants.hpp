// Dyadic A_p, A_infinity (Fujii-Wilson) and multiple A_P constants, the
// exponent-change identity for A_P pairs, and reverse Hoelder checks.
//
// Every supremum ranges over the finite family of dyadic subcubes of [0,1)^n,
// so the constants are exact on the discrete grid.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wsl/dyadic.hpp"
#include "wsl/measure.hpp"

namespace wsl {

struct ConstantReport {
  double value = 0.0;
  DyadicCube argmax_cube{};
};

/// Max of `per_cube(level, index)` over all cubes; ties keep the first cube in
/// enumeration order.
template <class PerCube>
[[nodiscard]] ConstantReport sweep_max(const GridConfig& cfg, PerCube&& per_cube) {
  double best = -INFINITY;
  int best_level = 0;
  std::size_t best_index = 0;
  for (int k = 0; k <= cfg.finest_level; ++k) {
    for (std::size_t i = 0, n = cfg.cubes_at(k); i < n; ++i) {
      const double v = per_cube(k, i);
      if (v > best) {
        best = v;
        best_level = k;
        best_index = i;
      }
    }
  }
  return {best, cube_at(cfg, best_level, best_index)};
}

/// <w>_Q <w^(1-p')>_Q^(p-1) for every cube, as a sweep functor.
class ApQuantity {
 public:
  ApQuantity(const Weight& w, double p)
      : p_(p), w_(w), dual_(dual_weight(w, p)) {
    if (!(p > 1.0)) throw std::invalid_argument("A_p constant requires p > 1");
  }
  [[nodiscard]] double operator()(int level, std::size_t index) const {
    return w_.mean(level, index) * std::pow(dual_.mean(level, index), p_ - 1.0);
  }

 private:
  double p_;
  LevelSums w_;
  LevelSums dual_;
};

[[nodiscard]] inline ConstantReport ap_constant(const Weight& w, double p) {
  return sweep_max(w.config(), ApQuantity(w, p));
}

/// Per-cube A_P quantity <v>_Q <sigma1>_Q^(p/p1') <sigma2>_Q^(p/p2').
class ApvecQuantity {
 public:
  ApvecQuantity(const Weight& w1, const Weight& w2, const ExponentTuple& P)
      : e1_(P.p / P.p1c),
        e2_(P.p / P.p2c),
        v_(joint_weight(w1, w2, P)),
        s1_(dual_weight(w1, P.p1)),
        s2_(dual_weight(w2, P.p2)) {}
  [[nodiscard]] double operator()(int level, std::size_t index) const {
    return v_.mean(level, index) * std::pow(s1_.mean(level, index), e1_) *
           std::pow(s2_.mean(level, index), e2_);
  }

 private:
  double e1_, e2_;
  LevelSums v_, s1_, s2_;
};

[[nodiscard]] inline ConstantReport apvec_constant(const Weight& w1, const Weight& w2,
                                                   const ExponentTuple& P) {
  require_same_grid(w1.config(), w2.config());
  return sweep_max(w1.config(), ApvecQuantity(w1, w2, P));
}

/// For every cube Q, (1/w(Q)) * int_Q M_Q(w), where M_Q is the dyadic maximal
/// operator restricted to subcubes of Q. Returned as one vector per level.
[[nodiscard]] inline std::vector<std::vector<double>> local_maximal_ratios(const Weight& w) {
  const GridConfig& cfg = w.config();
  const LevelSums sums(w);
  const int K = cfg.finest_level;
  std::vector<std::vector<double>> out(static_cast<std::size_t>(K) + 1);
  std::vector<double> running, next;
  for (int top = 0; top <= K; ++top) {
    // running[i] at level j: max of averages over the chain from the level-top
    // ancestor down to cube (j, i).
    running.resize(cfg.cubes_at(top));
    for (std::size_t i = 0; i < running.size(); ++i) running[i] = sums.mean(top, i);
    for (int j = top + 1; j <= K; ++j) {
      next.resize(cfg.cubes_at(j));
      for (std::size_t i = 0; i < next.size(); ++i)
        next[i] = std::max(running[parent_index(cfg, j, i)], sums.mean(j, i));
      running.swap(next);
    }
    // running now holds M_Q(w) per finest cell for the level-top cube Q above it.
    std::vector<double> integral(cfg.cubes_at(top), 0.0);
    const int shift = cfg.dimension * (K - top);
    if (cfg.dimension == 1) {
      for (std::size_t c = 0; c < running.size(); ++c) integral[c >> shift] += running[c];
    } else {
      for (std::size_t c = 0; c < running.size(); ++c) {
        const std::size_t x = c >> K, y = c & ((std::size_t{1} << K) - 1);
        const int s = K - top;
        integral[((x >> s) << top) | (y >> s)] += running[c];
      }
    }
    auto& ratios = out[top];
    ratios.resize(integral.size());
    for (std::size_t i = 0; i < integral.size(); ++i) ratios[i] = integral[i] / sums.sum(top, i);
  }
  return out;
}

/// Fujii-Wilson constant sup_Q (1/w(Q)) int_Q M(w chi_Q), M dyadic.
[[nodiscard]] inline ConstantReport ainfty_constant(const Weight& w) {
  const auto ratios = local_maximal_ratios(w);
  return sweep_max(w.config(), [&](int k, std::size_t i) { return ratios[k][i]; });
}

/// Both sides of [v]_{A_2p} <= [w]_{A_P} and [sigma_i]_{A_{2 pi'}} <= [w]_{A_P}^{pi'/p}.
struct ConstantInequalityReport {
  double apvec;
  double v_a2p;
  double sigma1_a2p1c;
  double sigma2_a2p2c;
  double sigma1_bound;
  double sigma2_bound;
  bool pass;
};

[[nodiscard]] inline ConstantInequalityReport check_constant_inequalities(const Weight& w1,
                                                                          const Weight& w2,
                                                                          const ExponentTuple& P) {
  constexpr double slack = 1e-10;
  ConstantInequalityReport r{};
  r.apvec = apvec_constant(w1, w2, P).value;
  r.v_a2p = ap_constant(joint_weight(w1, w2, P), 2.0 * P.p).value;
  r.sigma1_a2p1c = ap_constant(dual_weight(w1, P.p1), 2.0 * P.p1c).value;
  r.sigma2_a2p2c = ap_constant(dual_weight(w2, P.p2), 2.0 * P.p2c).value;
  r.sigma1_bound = std::pow(r.apvec, P.p1c / P.p);
  r.sigma2_bound = std::pow(r.apvec, P.p2c / P.p);
  r.pass = r.v_a2p <= r.apvec * (1.0 + slack) && r.sigma1_a2p1c <= r.sigma1_bound * (1.0 + slack) &&
           r.sigma2_a2p2c <= r.sigma2_bound * (1.0 + slack);
  return r;
}

/// The pair (v^(1-p'), w2) with exponents (p', p2).
struct TransformedPair {
  Weight w1;
  Weight w2;
  ExponentTuple P;
  double percube_max_error;
};

/// Replaces w1 by v^(1-p') and p1 by p'. Per cube the new A_P quantity equals the
/// old one raised to p1'/p; the maximum relative deviation over all cubes is
/// reported.
[[nodiscard]] inline TransformedPair exponent_change_transform(const Weight& w1, const Weight& w2,
                                                       const ExponentTuple& P) {
  require_same_grid(w1.config(), w2.config());
  const Weight v = joint_weight(w1, w2, P);
  const double e = 1.0 - P.pc;
  Weight w1_new(map_cells(v.function(), [e](double x) { return std::pow(x, e); }));
  ExponentTuple P_new(P.pc, P.p2);
  const ApvecQuantity before(w1, w2, P);
  const ApvecQuantity after(w1_new, w2, P_new);
  const double power = P.p1c / P.p;
  double err = 0.0;
  const GridConfig& cfg = w1.config();
  for (int k = 0; k <= cfg.finest_level; ++k) {
    for (std::size_t i = 0, n = cfg.cubes_at(k); i < n; ++i) {
      const double expected = std::pow(before(k, i), power);
      err = std::max(err, std::abs(after(k, i) - expected) / expected);
    }
  }
  return {std::move(w1_new), w2, P_new, err};
}

/// eps = 1 / (2^(11+n) [sigma]_{A_inf}), n the grid dimension.
[[nodiscard]] inline double reverse_holder_epsilon(const Weight& sigma) {
  const double a = ainfty_constant(sigma).value;
  return 1.0 / (std::ldexp(1.0, 11 + sigma.config().dimension) * a);
}

struct ReverseHolderResult {
  double epsilon;
  double worst_ratio;
  DyadicCube worst_cube;
  bool pass;
};

/// Pass threshold for max_Q <sigma^(1+eps)>_Q / <sigma>_Q^(1+eps).
inline constexpr double reverse_holder_threshold = 2.0;

[[nodiscard]] inline ReverseHolderResult reverse_holder_check(const Weight& sigma) {
  const double eps = reverse_holder_epsilon(sigma);
  const LevelSums base(sigma);
  const LevelSums raised(sigma.config(), map_cells(sigma.function(), [eps](double x) {
                                           return std::pow(x, 1.0 + eps);
                                         }).values());
  const auto r = sweep_max(sigma.config(), [&](int k, std::size_t i) {
    return raised.mean(k, i) / std::pow(base.mean(k, i), 1.0 + eps);
  });
  return {eps, r.value, r.argmax_cube, r.value <= reverse_holder_threshold};
}

}  // namespace wsl
