// Measured versions of the testing conditions and localized norm bounds for
// bilinear sparse operators with multiple A_P weights. Each quantity is
// reported as lhs / rhs where rhs omits the implicit constant.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wsl/constants.hpp"
#include "wsl/measure.hpp"
#include "wsl/sparse.hpp"

namespace wsl {

struct TestingReport {
  double lhs = 0.0;
  double rhs_without_constant = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  bool defined = false;
  std::string context;
};

[[nodiscard]] inline TestingReport make_report(double lhs, double rhs, std::string context) {
  TestingReport r;
  r.lhs = lhs;
  r.rhs_without_constant = rhs;
  r.defined = rhs > 0.0;
  if (r.defined) r.ratio = lhs / rhs;
  r.context = std::move(context);
  return r;
}

/// Weights derived from a pair (w1, w2) that every check needs.
struct WeightBundle {
  Weight sigma1, sigma2, v;
  WeightBundle(const Weight& w1, const Weight& w2, const ExponentTuple& P)
      : sigma1(dual_weight(w1, P.p1)), sigma2(dual_weight(w2, P.p2)), v(joint_weight(w1, w2, P)) {}
};

struct GlobalQuantities {
  double weak;    // ||A(|f1| s1, |f2| s2)||_{L^{p,inf}(v)} / prod ||fi||_{L^pi(si)}
  double strong;  // same with the L^p(v) norm
};

[[nodiscard]] inline GlobalQuantities global_quantities(const SparseFamily& S, const WeightBundle& W,
                                                        const ExponentTuple& P, const GridFunction& f1,
                                                        const GridFunction& f2) {
  if (f1.is_zero() || f2.is_zero()) throw std::invalid_argument("test functions must not vanish");
  const GridFunction g = sparse_eval(S, multiply(abs(f1), W.sigma1.function()),
                                     multiply(abs(f2), W.sigma2.function()));
  const double denom = lp_norm(f1, W.sigma1, P.p1) * lp_norm(f2, W.sigma2, P.p2);
  return {weak_norm(g, W.v, P.p) / denom, lp_norm(g, W.v, P.p) / denom};
}

[[nodiscard]] inline double global_weak_quantity(const SparseFamily& S, const Weight& w1,
                                                 const Weight& w2, const ExponentTuple& P,
                                                 const GridFunction& f1, const GridFunction& f2) {
  return global_quantities(S, WeightBundle(w1, w2, P), P, f1, f2).weak;
}

/// int_Q A(|f1| s1 chi_Q, |f2| s2 chi_Q) v / (prod ||fi||_{L^pi(si)} v(Q)^(1/p')).
[[nodiscard]] inline double local_testing_quantity(const SparseFamily& S, const WeightBundle& W,
                                                   const ExponentTuple& P, const GridFunction& f1,
                                                   const GridFunction& f2, const DyadicCube& Q) {
  if (!S.contains(Q)) throw std::invalid_argument("testing cube must belong to the sparse family");
  const GridFunction l1 = restrict_to(f1, Q), l2 = restrict_to(f2, Q);
  if (l1.is_zero() || l2.is_zero()) throw std::invalid_argument("test functions must not vanish on Q");
  const GridFunction g = sparse_eval(S, multiply(abs(l1), W.sigma1.function()),
                                     multiply(abs(l2), W.sigma2.function()));
  double integral = 0.0;
  for (std::size_t c : cells_of(Q, S.config())) integral += g[c] * W.v[c];
  integral *= S.config().cell_measure();
  const double denom = lp_norm(f1, W.sigma1, P.p1) * lp_norm(f2, W.sigma2, P.p2) *
                       std::pow(weighted_measure(W.v, Q), 1.0 / P.pc);
  return integral / denom;
}

[[nodiscard]] inline double local_testing_quantity(const SparseFamily& S, const Weight& w1,
                                                   const Weight& w2, const ExponentTuple& P,
                                                   const GridFunction& f1, const GridFunction& f2,
                                                   const DyadicCube& Q) {
  return local_testing_quantity(S, WeightBundle(w1, w2, P), P, f1, f2, Q);
}

/// The weak-to-strong comparison factor for the local testing constant:
/// int_E g dmu <= p' ||g||_{L^{p,inf}(mu)} mu(E)^(1/p'), applied to the
/// localized data f chi_Q.
[[nodiscard]] inline double testing_comparison_factor(const ExponentTuple& P) { return P.pc; }

/// A_infinity constants shared by the localized estimates.
struct AinftyBundle {
  double sigma1, sigma2, v;
  explicit AinftyBundle(const WeightBundle& W)
      : sigma1(ainfty_constant(W.sigma1).value),
        sigma2(ainfty_constant(W.sigma2).value),
        v(ainfty_constant(W.v).value) {}
};

/// lhs = ||chi_Qt A(sigma1 chi_Qt, |f2| sigma2)||_{L^p(v)};
/// rhs = max{min{[s1],[s2]}^(1/p), min{[s1],[v]}^(1/p2')} [w]^(1/p) ||f2||_{L^p2(s2)} s1(Qt)^(1/p1).
[[nodiscard]] inline TestingReport localized_sum_ratio(const SparseFamily& S, const WeightBundle& W,
                                                 const AinftyBundle& A, double apvec,
                                                 const ExponentTuple& P, const GridFunction& f2,
                                                 const DyadicCube& Qt) {
  if (!f2.is_nonnegative() || f2.is_zero())
    throw std::invalid_argument("localized_sum_ratio requires nonnegative, nonzero f2");
  const GridFunction s1_local = restrict_to(W.sigma1.function(), Qt);
  const auto split = sparse_split_eval(S, Qt, s1_local, multiply(f2, W.sigma2.function()));
  std::vector<double> sum(split.A1.size());
  for (std::size_t c = 0; c < sum.size(); ++c) sum[c] = split.A1[c] + split.A2[c];
  const GridFunction local = restrict_to(GridFunction(S.config(), std::move(sum)), Qt);
  const double lhs = lp_norm(local, W.v, P.p);
  const double factor = std::max(std::pow(std::min(A.sigma1, A.sigma2), 1.0 / P.p),
                                 std::pow(std::min(A.sigma1, A.v), 1.0 / P.p2c));
  const double rhs = factor * std::pow(apvec, 1.0 / P.p) * lp_norm(f2, W.sigma2, P.p2) *
                     std::pow(weighted_measure(W.sigma1, Qt), 1.0 / P.p1);
  return make_report(lhs, rhs, "localized_sum");
}

[[nodiscard]] inline TestingReport localized_sum_ratio(const SparseFamily& S, const Weight& w1,
                                                 const Weight& w2, const ExponentTuple& P,
                                                 const GridFunction& f2, const DyadicCube& Qt) {
  const WeightBundle W(w1, w2, P);
  return localized_sum_ratio(S, W, AinftyBundle(W), apvec_constant(w1, w2, P).value, P, f2, Qt);
}

struct SplitTermReports {
  TestingReport r1;
  TestingReport r2;
};

/// r1: ||sum <s1><s2> chi_Q||_{L^p(v)} vs [w]^(1/p) (sum <s1>^(p/p1) <s2>^(p/p2) |Q|)^(1/p).
/// r2: ||sum <s1><v> chi_Q||_{L^p2'(s2)} vs [w]^(1/p) (sum <s1>^(p2'/p1) <v>^(p2'/p') |Q|)^(1/p2').
[[nodiscard]] inline SplitTermReports split_term_ratios(const SparseFamily& S, const WeightBundle& W,
                                                   double apvec, const ExponentTuple& P) {
  const GridConfig& cfg = S.config();
  const LevelSums s1(W.sigma1), s2(W.sigma2), v(W.v);
  std::vector<double> c1(S.size()), c2(S.size());
  double packed1 = 0.0, packed2 = 0.0;
  for (std::size_t n = 0; n < S.size(); ++n) {
    const auto& q = S.cubes()[n];
    const double a1 = s1.mean(q), a2 = s2.mean(q), av = v.mean(q), size = measure(cfg, q);
    c1[n] = a1 * a2;
    c2[n] = a1 * av;
    packed1 += std::pow(a1, P.p / P.p1) * std::pow(a2, P.p / P.p2) * size;
    packed2 += std::pow(a1, P.p2c / P.p1) * std::pow(av, P.p2c / P.pc) * size;
  }
  const double scale = std::pow(apvec, 1.0 / P.p);
  const double lhs1 = lp_norm(spread_coefficients(cfg, S.cubes(), c1), W.v, P.p);
  const double lhs2 = lp_norm(spread_coefficients(cfg, S.cubes(), c2), W.sigma2, P.p2c);
  return {make_report(lhs1, scale * std::pow(packed1, 1.0 / P.p), "split_term-first"),
          make_report(lhs2, scale * std::pow(packed2, 1.0 / P.p2c), "split_term-second")};
}

[[nodiscard]] inline SplitTermReports split_term_ratios(const SparseFamily& S, const Weight& w1,
                                                   const Weight& w2, const ExponentTuple& P) {
  return split_term_ratios(S, WeightBundle(w1, w2, P), apvec_constant(w1, w2, P).value, P);
}

}  // namespace wsl
