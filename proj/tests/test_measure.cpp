#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wsl/harness.hpp"
#include "wsl/measure.hpp"

using namespace wsl;

namespace {

GridFunction make(int level, std::vector<double> v) { return {GridConfig(1, level), std::move(v)}; }

}  // namespace

TEST(Measure, Construction) {
  EXPECT_THROW(make(2, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(make(1, {1, NAN}), std::invalid_argument);
  EXPECT_THROW(Weight(GridConfig(1, 1), {1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Weight(GridConfig(1, 1), {1.0, -2.0}), std::invalid_argument);
}

TEST(Measure, ExponentTuple) {
  const ExponentTuple P(2, 3);
  EXPECT_NEAR(P.p, 1.2, 1e-15);
  EXPECT_NEAR(1.0 / P.p1 + 1.0 / P.p1c, 1.0, 1e-12);
  EXPECT_NEAR(1.0 / P.p2 + 1.0 / P.p2c, 1.0, 1e-12);
  EXPECT_NEAR(1.0 / P.p + 1.0 / P.pc, 1.0, 1e-12);
  // p1 = p2 = 2 gives p = 1, outside the hypothesis 1 < p.
  EXPECT_THROW(ExponentTuple(2, 2), std::invalid_argument);
  EXPECT_THROW(ExponentTuple(1, 5), std::invalid_argument);
  EXPECT_THROW(ExponentTuple(1.5, 1.5), std::invalid_argument);
}

TEST(Measure, Average) {
  const GridConfig cfg(1, 2);
  EXPECT_DOUBLE_EQ(average(GridFunction::indicator(cfg, {1, {0, 0}}), DyadicCube::root()), 0.5);
  EXPECT_DOUBLE_EQ(average(GridFunction::constant(cfg, 3.5), {2, {3, 0}}), 3.5);
  EXPECT_DOUBLE_EQ(average(make(2, {4, 1, 1, 1}), DyadicCube::root()), 7.0 / 4.0);
}

TEST(Measure, WeightedAverage) {
  const GridConfig cfg(1, 1);
  const Weight w(cfg, {1, 3});
  EXPECT_DOUBLE_EQ(weighted_average(make(1, {2, 0}), w, DyadicCube::root()), 0.5);
  EXPECT_DOUBLE_EQ(weighted_average(GridFunction::constant(cfg, 7), w, DyadicCube::root()), 7.0);
  EXPECT_DOUBLE_EQ(weighted_measure(w, DyadicCube::root()), 2.0);
  EXPECT_DOUBLE_EQ(weighted_measure(w, {1, {1, 0}}), 1.5);
}

TEST(Measure, UnitWeightAverageMatchesAverage) {
  for (const GridConfig cfg : {GridConfig(1, 4), GridConfig(2, 3)}) {
    const GridFunction f = random_nonnegative(cfg, 5);
    const Weight one = Weight::constant(cfg, 1.0);
    for (const auto& q : all_cubes(cfg)) EXPECT_NEAR(weighted_average(f, one, q), average(f, q), 1e-15);
  }
}

TEST(Measure, DualAndJointWeights) {
  const GridConfig cfg(1, 3);
  const Weight one = Weight::constant(cfg, 1.0);
  const Weight d = dual_weight(one, 3.0), j = joint_weight(one, one, ExponentTuple(3, 4));
  for (double v : d.values()) EXPECT_EQ(v, 1.0);
  for (double v : j.values()) EXPECT_EQ(v, 1.0);
  // p1' = 3 means p1 = 3/2 and sigma = c^(1 - 3) = c^-2.
  const Weight c = Weight::constant(cfg, 5.0);
  const Weight dc = dual_weight(c, 1.5);
  for (double v : dc.values()) EXPECT_NEAR(v, 1.0 / 25.0, 1e-15);
  EXPECT_THROW((void)dual_weight(c, 1.0), std::invalid_argument);
}

TEST(Measure, DualWeightInvolution) {
  const GridConfig cfg(1, 8);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Weight w = random_ap_weight(cfg, seed, 2.0);
    const double p = 1.1 + 0.4 * seed;
    const Weight back = dual_weight(dual_weight(w, p), conjugate(p));
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(back[i] / w[i], 1.0, 1e-12);
  }
}

TEST(Measure, LpNorm) {
  const GridConfig cfg(1, 2);
  const Weight one = Weight::constant(cfg, 1.0);
  EXPECT_DOUBLE_EQ(lp_norm(GridFunction::constant(cfg, 1.0), one, 3.0), 1.0);
  EXPECT_NEAR(lp_norm(GridFunction::indicator(cfg, {2, {0, 0}}), one, 2.0), 0.5, 1e-15);
  const GridFunction f = make(2, {1, -2, 3, 0.5});
  EXPECT_NEAR(lp_norm(scale(f, -3.0), one, 1.7), 3.0 * lp_norm(f, one, 1.7), 1e-13);
  EXPECT_THROW((void)lp_norm(f, one, 0.0), std::invalid_argument);
}

TEST(Measure, WeakNormExamples) {
  const GridConfig cfg(1, 2);
  const Weight one = Weight::constant(cfg, 1.0);
  // f = 2 on [0,1/4), 1 elsewhere: max{2 (1/4)^(1/2), 1 * 1} = 1.
  EXPECT_DOUBLE_EQ(weak_norm(make(2, {2, 1, 1, 1}), one, 2.0), 1.0);
  EXPECT_EQ(weak_norm(GridFunction::constant(cfg, 0.0), one, 2.0), 0.0);
  const Weight w(cfg, {1, 2, 3, 4});
  const DyadicCube e{1, {1, 0}};
  EXPECT_NEAR(weak_norm(GridFunction::indicator(cfg, e), w, 1.5),
              std::pow(weighted_measure(w, e), 1.0 / 1.5), 1e-15);
}

TEST(Measure, WeakNormMatchesOracleAndChebyshev) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const GridConfig cfg(1 + t % 2, 3);
    std::vector<double> v(cfg.cell_count());
    // Repeated values exercise the tie handling at jump points.
    for (double& x : v) x = static_cast<double>(rng() % 5) - 2.0;
    const GridFunction f(cfg, v);
    const Weight w = random_ap_weight(cfg, rng(), 1.0);
    const double p = 0.5 + static_cast<double>(t % 7);
    std::vector<double> mass(w.values().begin(), w.values().end());
    for (double& m : mass) m *= cfg.cell_measure();
    EXPECT_NEAR(weak_norm(f, w, p), oracle::weak(v, mass, p), 1e-14);
    EXPECT_LE(weak_norm(f, w, p), lp_norm(f, w, p) * (1 + 1e-12));
  }
}

TEST(Measure, HolderConsistency) {
  std::mt19937_64 rng(17);
  const GridConfig cfg(1, 7);
  for (int t = 0; t < 30; ++t) {
    const GridFunction f = random_nonnegative(cfg, rng());
    const GridFunction g = random_nonnegative(cfg, rng());
    const Weight w = random_ap_weight(cfg, rng(), 1.5);
    const double s = 1.2 + 0.1 * t, u = 1.5 + 0.05 * t;
    const double r = 1.0 / (1.0 / s + 1.0 / u);
    EXPECT_LE(lp_norm(multiply(f, g), w, r), lp_norm(f, w, s) * lp_norm(g, w, u) * (1 + 1e-10));
  }
}

TEST(Measure, KolmogorovConstantAndExamples) {
  EXPECT_DOUBLE_EQ(kolmogorov_constant(0.5), 16.0);
  const GridConfig cfg(1, 3);
  const auto half = kolmogorov_check(GridFunction::indicator(cfg, {1, {0, 0}}), DyadicCube::root(), 0.5);
  EXPECT_NEAR(half.lhs, 0.25, 1e-15);
  EXPECT_NEAR(half.rhs, 8.0, 1e-14);
  EXPECT_TRUE(half.pass);
  const auto zero = kolmogorov_check(GridFunction::constant(cfg, 0.0), DyadicCube::root(), 0.5);
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_EQ(zero.rhs, 0.0);
  EXPECT_TRUE(zero.pass);
  EXPECT_THROW((void)kolmogorov_check(GridFunction::constant(cfg, 1), {}, 1.0), std::invalid_argument);
  EXPECT_THROW((void)kolmogorov_check(GridFunction::constant(cfg, 1), {}, 0.0), std::invalid_argument);
}

TEST(Measure, KolmogorovRandomSuite) {
  std::mt19937_64 rng(99);
  for (double p : {0.3, 0.5, 0.8}) {
    for (int t = 0; t < 100; ++t) {
      const GridConfig cfg(1, 6);
      std::vector<double> v(cfg.cell_count());
      for (double& x : v) x = std::pow(unit_uniform(rng) + 1e-9, -0.8) * (rng() % 3 == 0 ? 0.0 : 1.0);
      EXPECT_TRUE(kolmogorov_check(GridFunction(cfg, v), DyadicCube::root(), p).pass);
    }
  }
}

TEST(Measure, LevelSumsMatchDirectAverages) {
  for (const GridConfig cfg : {GridConfig(1, 5), GridConfig(2, 3)}) {
    const GridFunction f = random_nonnegative(cfg, 8);
    const LevelSums sums(f);
    for (const auto& q : all_cubes(cfg)) EXPECT_NEAR(sums.mean(q), average(f, q), 1e-14);
  }
}
