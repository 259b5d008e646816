// Verification suites. Each check runs a seeded family of instances and
// returns a verdict with its measured extremes; suites group checks and
// serialize to JSON.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wsl/constants.hpp"
#include "wsl/dyadic.hpp"
#include "wsl/harness.hpp"
#include "wsl/io.hpp"
#include "wsl/measure.hpp"
#include "wsl/sparse.hpp"
#include "wsl/stopping.hpp"
#include "wsl/testing_conditions.hpp"
#include "wsl/theory.hpp"

namespace wsl {

struct CheckResult {
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool pass = true;
  json metrics = json::object();
  std::string failure;  // first violation, empty on pass

  void fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
  [[nodiscard]] json to_json() const {
    json j;
    j["name"] = name;
    j["pass"] = pass;
    j["metrics"] = metrics;
    if (!pass) j["failure"] = failure;
    return j;
  }
};

/// Independent stream per (seed, check) so adding checks leaves others unchanged.
[[nodiscard]] inline std::mt19937_64 check_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

[[nodiscard]] inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

/// Exponent tuples used by randomized suites.
inline const std::array<std::array<double, 2>, 5> suite_exponents{
    {{2.0, 3.0}, {3.0, 3.0}, {6.0, 6.0}, {4.0, 2.5}, {5.0, 12.0}}};

[[nodiscard]] inline ExponentTuple pick_exponents(std::mt19937_64& rng) {
  const auto& e = suite_exponents[rng() % suite_exponents.size()];
  return {e[0], e[1]};
}

// ---------------------------------------------------------------- dyadic

[[nodiscard]] inline CheckResult check_dyadic_exhaustive() {
  CheckResult r("dyadic_exhaustive");
  std::size_t pairs = 0;
  for (const GridConfig cfg : {GridConfig(1, 1), GridConfig(1, 2), GridConfig(1, 3), GridConfig(1, 4),
                               GridConfig(2, 1), GridConfig(2, 2), GridConfig(2, 3)}) {
    const auto cubes = all_cubes(cfg);
    if (cubes.size() != ((std::size_t{1} << (cfg.dimension * (cfg.finest_level + 1))) - 1) /
                            ((std::size_t{1} << cfg.dimension) - 1))
      r.fail("cube count mismatch");
    std::vector<std::set<std::size_t>> cells;
    for (const auto& q : cubes) {
      const auto c = cells_of(q, cfg);
      cells.emplace_back(c.begin(), c.end());
    }
    for (std::size_t a = 0; a < cubes.size(); ++a) {
      for (std::size_t b = 0; b < cubes.size(); ++b) {
        ++pairs;
        const auto& A = cells[a];
        const auto& B = cells[b];
        const bool a_in_b = std::includes(B.begin(), B.end(), A.begin(), A.end());
        const bool b_in_a = std::includes(A.begin(), A.end(), B.begin(), B.end());
        Relation expected = Relation::disjoint;
        if (a_in_b && b_in_a)
          expected = Relation::equal;
        else if (a_in_b)
          expected = Relation::q_inside_r;
        else if (b_in_a)
          expected = Relation::r_inside_q;
        else {
          std::vector<std::size_t> common;
          std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(common));
          if (!common.empty()) r.fail("partial overlap between dyadic cubes");
        }
        if (relation(cubes[a], cubes[b]) != expected) r.fail("relation disagrees with cell containment");
      }
    }
    for (int k = 0; k <= cfg.finest_level; ++k) {
      std::vector<int> hits(cfg.cell_count(), 0);
      for (std::size_t i = 0; i < cfg.cubes_at(k); ++i)
        for (std::size_t c : cells_of(cube_at(cfg, k, i), cfg)) ++hits[c];
      if (!std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }))
        r.fail("level does not partition the unit cube");
    }
    for (const auto& q : cubes)
      for (const auto& c : children(cfg, q))
        if (parent(c) != q) r.fail("parent of child is not the cube");
  }
  r.metrics["pairs_checked"] = pairs;
  return r;
}

// ---------------------------------------------------------------- measure

[[nodiscard]] inline CheckResult check_measure_properties(std::uint64_t seed) {
  CheckResult r("measure_properties");
  auto rng = check_rng(seed, 11);
  double worst_involution = 0.0, worst_unit_average = 0.0;
  for (int t = 0; t < 20; ++t) {
    const GridConfig cfg(1 + static_cast<int>(rng() % 2), 2 + static_cast<int>(rng() % 3));
    const GridFunction f = random_nonnegative(cfg, rng());
    const Weight w = random_ap_weight(cfg, rng(), uniform_in(rng, 0.1, 2.0));
    const Weight one = Weight::constant(cfg, 1.0);
    for (const auto& q : all_cubes(cfg))
      worst_unit_average = std::max(worst_unit_average, std::abs(weighted_average(f, one, q) - average(f, q)));
    const double p = uniform_in(rng, 1.1, 5.0);
    if (weak_norm(f, w, p) > lp_norm(f, w, p) * (1.0 + 1e-12)) r.fail("weak norm exceeds strong norm");
    const auto q = cube_at(cfg, 1, rng() % cfg.cubes_at(1));
    const GridFunction ind = GridFunction::indicator(cfg, q);
    if (std::abs(weak_norm(ind, w, p) - lp_norm(ind, w, p)) > 1e-12 * lp_norm(ind, w, p))
      r.fail("weak and strong norms differ on an indicator");
    const Weight back = dual_weight(dual_weight(w, p), conjugate(p));
    for (std::size_t c = 0; c < w.size(); ++c)
      worst_involution = std::max(worst_involution, std::abs(back[c] - w[c]) / w[c]);
  }
  if (worst_involution > 1e-12) r.fail("dual weight is not an involution");
  if (worst_unit_average > 1e-12) r.fail("weighted average with unit weight differs from average");
  r.metrics["worst_involution_error"] = worst_involution;
  r.metrics["worst_unit_weight_deviation"] = worst_unit_average;
  return r;
}

[[nodiscard]] inline CheckResult check_kolmogorov(std::uint64_t seed) {
  CheckResult r("kolmogorov");
  auto rng = check_rng(seed, 12);
  double worst = 0.0;
  std::size_t runs = 0;
  for (double p : {0.3, 0.5, 0.8}) {
    for (int t = 0; t < 100; ++t) {
      const GridConfig cfg(1, 3 + static_cast<int>(rng() % 6));
      std::vector<double> v(cfg.cell_count());
      const double sparsity = unit_uniform(rng);
      for (double& x : v) x = unit_uniform(rng) < sparsity ? 0.0 : std::pow(unit_uniform(rng), -0.7);
      const GridFunction f(cfg, std::move(v));
      const DyadicCube q = cube_at(cfg, static_cast<int>(rng() % 3), 0);
      const auto k = kolmogorov_check(f, q, p);
      ++runs;
      if (!k.pass) r.fail("Kolmogorov inequality violated");
      if (k.rhs > 0) worst = std::max(worst, k.lhs / k.rhs);
    }
  }
  r.metrics["instances"] = runs;
  r.metrics["max_lhs_over_rhs"] = worst;
  return r;
}

// ---------------------------------------------------------------- constants

[[nodiscard]] inline CheckResult check_exponent_change(std::uint64_t seed, int pairs = 50) {
  CheckResult r("exponent_change_identity");
  auto rng = check_rng(seed, 21);
  const GridConfig cfg(1, 6);
  double worst_cube = 0.0, worst_constant = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const Weight w1 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.5));
    const Weight w2 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.5));
    const ExponentTuple P = pick_exponents(rng);
    const auto tr = exponent_change_transform(w1, w2, P);
    worst_cube = std::max(worst_cube, tr.percube_max_error);
    const double before = apvec_constant(w1, w2, P).value;
    const double after = apvec_constant(tr.w1, tr.w2, tr.P).value;
    const double expected = std::pow(before, P.p1c / P.p);
    worst_constant = std::max(worst_constant, std::abs(after - expected) / expected);
  }
  if (worst_cube > 1e-10) r.fail("per-cube identity error above 1e-10");
  if (worst_constant > 1e-9) r.fail("constant identity error above 1e-9");
  r.metrics["pairs"] = pairs;
  r.metrics["max_percube_error"] = worst_cube;
  r.metrics["max_constant_error"] = worst_constant;
  return r;
}

/// Random pairs plus the power family down to delta = 2^-9 on a K = 14 grid.
[[nodiscard]] inline CheckResult check_weight_bounds(std::uint64_t seed) {
  CheckResult r("constant_inequalities");
  auto rng = check_rng(seed, 22);
  std::size_t n = 0;
  double tightest = 0.0;  // max of lhs / rhs over the three inequalities
  const auto record = [&](const ConstantInequalityReport& c) {
    ++n;
    if (!c.pass) r.fail("constant inequality violated");
    tightest = std::max({tightest, c.v_a2p / c.apvec, c.sigma1_a2p1c / c.sigma1_bound,
                         c.sigma2_a2p2c / c.sigma2_bound});
  };
  for (int t = 0; t < 50; ++t) {
    const GridConfig cfg(1, 6);
    const Weight w1 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.5));
    const Weight w2 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.5));
    record(check_constant_inequalities(w1, w2, pick_exponents(rng)));
  }
  for (int t = 0; t < 4; ++t) {
    const GridConfig cfg(2, 4);
    const Weight w1 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.0));
    const Weight w2 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.0));
    record(check_constant_inequalities(w1, w2, pick_exponents(rng)));
  }
  const GridConfig big(1, 14);
  WeightFamilySpec spec;
  spec.deltas = dyadic_deltas(0, 9);
  for (const auto& e : suite_exponents) {
    const ExponentTuple P(e[0], e[1]);
    for (const double d : spec.deltas) {
      const auto m = family_member(spec, P, big, d);
      record(check_constant_inequalities(m.w1, m.w2, P));
    }
  }
  r.metrics["pairs"] = n;
  r.metrics["max_lhs_over_rhs"] = tightest;
  return r;
}

[[nodiscard]] inline CheckResult check_reverse_holder(std::uint64_t seed) {
  CheckResult r("reverse_holder");
  auto rng = check_rng(seed, 23);
  double worst = 0.0;
  json power = json::array();
  const GridConfig cfg(1, 10);
  for (double a : {-0.9, -0.5, 0.5, 1.0, 2.0}) {
    const auto rh = reverse_holder_check(power_weight(a, cfg));
    if (!rh.pass) r.fail("reverse Hoelder ratio above 2 for a power weight");
    worst = std::max(worst, rh.worst_ratio);
    power.push_back({{"a", a}, {"epsilon", rh.epsilon}, {"worst_ratio", rh.worst_ratio}});
  }
  for (int t = 0; t < 20; ++t) {
    const GridConfig c(1, 8);
    const Weight w = random_ap_weight(c, rng(), uniform_in(rng, 0.2, 3.0));
    const double p = uniform_in(rng, 1.2, 6.0);
    const auto rh = reverse_holder_check(dual_weight(w, p));
    if (!rh.pass) r.fail("reverse Hoelder ratio above 2 for a random weight");
    worst = std::max(worst, rh.worst_ratio);
  }
  r.metrics["power_weights"] = power;
  r.metrics["max_ratio"] = worst;
  return r;
}

// ---------------------------------------------------------------- sparse

[[nodiscard]] inline CheckResult check_sparsity(std::uint64_t seed) {
  CheckResult r("sparsity");
  auto rng = check_rng(seed, 31);
  double worst_packing = 0.0;
  for (int t = 0; t < 40; ++t) {
    const GridConfig cfg(1 + static_cast<int>(rng() % 2), 3 + static_cast<int>(rng() % 4));
    SparseFamily S = generate_sparse(cfg, rng());
    if (!verify_sparse(S).pass) r.fail("generated family is not canonically sparse");
    const auto pk = carleson_packing(S);
    if (pk.total_measure > 2.0 * pk.witness_measure * (1.0 + 1e-12)) r.fail("Carleson packing violated");
    worst_packing = std::max(worst_packing, pk.total_measure);
    if (S.size() > 0) {
      const auto& qt = S.cubes()[rng() % S.size()];
      if (!verify_sparse(restrict(S, qt)).pass) r.fail("restriction of a sparse family is not sparse");
    }
  }
  const GridConfig cfg(1, 6);
  if (verify_sparse(full_tree(cfg, 6)).pass) r.fail("full binary tree accepted");
  SparseFamily tower = tower_family(cfg);
  if (!verify_sparse(tower).pass) r.fail("tower family rejected");
  for (std::size_t n = 0; n + 1 < tower.size(); ++n)
    if (2 * tower.witness[n].size() != cfg.cells_per_cube(tower.cubes()[n].level))
      r.fail("tower witness is not exactly half of its cube");
  r.metrics["max_total_measure"] = worst_packing;
  return r;
}

// ---------------------------------------------------------------- stopping

[[nodiscard]] inline GridFunction random_sparse_values(std::mt19937_64& rng, const GridConfig& cfg) {
  std::vector<double> v(cfg.cell_count());
  const double holes = unit_uniform(rng) * 0.6;
  for (double& x : v) x = unit_uniform(rng) < holes ? 0.0 : std::pow(unit_uniform(rng), 3.0) * 10.0;
  return {cfg, std::move(v)};
}

[[nodiscard]] inline CheckResult check_stopping(std::uint64_t seed, int instances = 200) {
  CheckResult r("stopping");
  auto rng = check_rng(seed, 41);
  double worst_sum_ratio = 0.0, worst_mass_ratio = 0.0;
  int max_generations = 0;
  for (int t = 0; t < instances; ++t) {
    const GridConfig cfg(1, 3 + static_cast<int>(rng() % 8));
    SparseFamily S = generate_sparse(cfg, rng());
    // Odd instances use a spike at the origin, which forces long doubling chains.
    const GridFunction f = t % 2 == 0 ? random_sparse_values(rng, cfg)
                                      : multiply(power_weight(-uniform_in(rng, 0.5, 0.95), cfg).function(),
                                                 random_nonnegative(cfg, rng()));
    const Weight w = random_ap_weight(cfg, rng(), uniform_in(rng, 0.1, 2.0));
    const double p = uniform_in(rng, 1.2, 6.0);
    const StoppingFamily F = build_stopping(S, f, w);
    const WeightedAverages avg(f, w);
    for (const auto& m : F.members()) {
      if (m.parent_member == CubeIndex::npos) continue;
      const auto& up = F.members()[m.parent_member];
      if (!(m.average > 2.0 * up.average)) r.fail("stopping child does not double its parent average");
      if (!contained_in(m.cube, up.cube) || m.generation != up.generation + 1)
        r.fail("stopping child is not inside its previous-generation parent");
    }
    for (const auto& q : S.cubes()) {
      const auto& par = F.parent_of(q);
      if (!(avg(q) <= 2.0 * par.average)) r.fail("parent bound violated");
    }
    const auto c = carleson_checks(F, f, w, p);
    if (!c.child_mass_ok) r.fail("generation mass bound violated");
    if (!c.pass) r.fail("Carleson sum bound violated");
    worst_sum_ratio = std::max(worst_sum_ratio, c.sum_value / c.bound_value);
    std::vector<double> child(F.size(), 0.0);
    for (const auto& m : F.members())
      if (m.parent_member != CubeIndex::npos) child[m.parent_member] += avg.mass(m.cube);
    for (std::size_t n = 0; n < F.size(); ++n)
      worst_mass_ratio = std::max(worst_mass_ratio, child[n] / avg.mass(F.members()[n].cube));
    // Termination bound: doubling chains start at a positive average and never exceed max f.
    double max_f = 0.0, min_start = INFINITY;
    for (double x : f.values()) max_f = std::max(max_f, x);
    for (const auto& m : F.members())
      if (m.generation == 0 && m.average > 0.0) min_start = std::min(min_start, m.average);
    const double cap = std::isfinite(min_start) ? std::log2(max_f / min_start) + cfg.finest_level * cfg.dimension
                                                : 0.0;
    if (F.generations() - 1 > cap + 1e-9) r.fail("generation count above the finite-grid bound");
    max_generations = std::max(max_generations, F.generations());
  }
  r.metrics["instances"] = instances;
  r.metrics["max_sum_over_bound"] = worst_sum_ratio;
  r.metrics["max_child_mass_fraction"] = worst_mass_ratio;
  r.metrics["max_generations"] = max_generations;
  return r;
}

[[nodiscard]] inline CheckResult check_bilinear_split(std::uint64_t seed, int instances = 100) {
  CheckResult r("bilinear_split");
  auto rng = check_rng(seed, 42);
  double worst = 0.0, max_i2_share = 0.0;
  for (int t = 0; t < instances; ++t) {
    const GridConfig cfg(1, 4 + static_cast<int>(rng() % 5));
    const SparseFamily S = generate_sparse(cfg, rng());
    const auto maximal = S.maximal_cubes();
    const DyadicCube qt = maximal[rng() % maximal.size()];
    const SparseFamily Sp = restrict(S, qt);
    const ExponentTuple P = pick_exponents(rng);
    const Weight w1 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.0));
    const Weight w2 = random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.0));
    const WeightBundle W(w1, w2, P);
    const GridFunction f2 = restrict_to(random_sparse_values(rng, cfg), qt);
    const GridFunction h = random_sparse_values(rng, cfg);
    const auto b = bilinear_form_decompose(Sp, f2, h, W.sigma2, W.v, W.sigma1);
    const double err = b.total == 0.0 ? std::abs(b.I1 + b.I2) : std::abs(b.I1 + b.I2 - b.total) / b.total;
    worst = std::max(worst, err);
    if (b.total > 0.0) max_i2_share = std::max(max_i2_share, b.I2 / b.total);
  }
  if (worst > 1e-12) r.fail("I1 + I2 differs from the total");
  r.metrics["instances"] = instances;
  r.metrics["max_relative_error"] = worst;
  r.metrics["max_I2_share"] = max_i2_share;
  return r;
}

// ---------------------------------------------------------------- testing conditions

[[nodiscard]] inline CheckResult check_local_global(std::uint64_t seed, int instances = 20) {
  CheckResult r("local_global_direction");
  auto rng = check_rng(seed, 51);
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const GridConfig cfg(1, 4 + static_cast<int>(rng() % 3));
    const SparseFamily S = generate_sparse(cfg, rng());
    const ExponentTuple P = pick_exponents(rng);
    const WeightBundle W(random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.0)),
                         random_ap_weight(cfg, rng(), uniform_in(rng, 0.2, 2.0)), P);
    // Strictly positive test functions, so every restriction is nonzero.
    std::vector<GridFunction> tests;
    for (int i = 0; i < 3; ++i)
      tests.push_back(map_cells(random_nonnegative(cfg, rng()), [](double x) { return x + 1e-3; }));
    tests.push_back(GridFunction::constant(cfg, 1.0));
    double global = 0.0, local = 0.0;
    for (const auto& f1 : tests) {
      for (const auto& f2 : tests) {
        for (const auto& q : S.cubes()) {
          global = std::max(global, global_quantities(S, W, P, restrict_to(f1, q), restrict_to(f2, q)).weak);
          local = std::max(local, local_testing_quantity(S, W, P, f1, f2, q));
        }
        global = std::max(global, global_quantities(S, W, P, f1, f2).weak);
      }
    }
    const double ratio = local / (testing_comparison_factor(P) * global);
    worst = std::max(worst, ratio);
    if (ratio > 1.0 + 1e-12) r.fail("local testing constant exceeds p' times the global constant");
  }
  r.metrics["instances"] = instances;
  r.metrics["max_local_over_factor_global"] = worst;
  return r;
}

/// Localized sum ratios along a power family: for each delta, the max over
/// Qt in the tower and f2 in {indicators of tower cubes inside Qt, seeded
/// random functions restricted to Qt}.
struct RatioFamily {
  std::vector<double> apvec;
  std::vector<double> max_ratio;
  double slope;
};

[[nodiscard]] inline RatioFamily localized_sum_family(const ExponentTuple& P, const GridConfig& cfg,
                                                const std::vector<double>& deltas, std::uint64_t seed) {
  WeightFamilySpec spec;
  spec.deltas = deltas;
  const SparseFamily S = tower_family(cfg);
  RatioFamily out;
  out.apvec.resize(deltas.size());
  out.max_ratio.resize(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    const auto m = family_member(spec, P, cfg, deltas[i]);
    const WeightBundle W(m.w1, m.w2, P);
    const AinftyBundle A(W);
    double best = 0.0;
    for (int k = 0; k <= cfg.finest_level; k += 2) {
      const DyadicCube qt{k, {0, 0}};
      std::vector<GridFunction> f2s;
      for (int j = k; j <= cfg.finest_level; j += 3) f2s.push_back(GridFunction::indicator(cfg, {j, {0, 0}}));
      for (int s = 0; s < 2; ++s) f2s.push_back(restrict_to(random_nonnegative(cfg, seed + 100 * k + s), qt));
      for (const auto& f2 : f2s) best = std::max(best, localized_sum_ratio(S, W, A, m.apvec, P, f2, qt).ratio);
    }
    out.apvec[i] = m.apvec;
    out.max_ratio[i] = best;
  });
  out.slope = log_log_slope(out.apvec, out.max_ratio);
  return out;
}

struct SplitTermFamily {
  std::vector<double> apvec, first, second;
  double slope_first, slope_second;
};

[[nodiscard]] inline SplitTermFamily split_term_family(const ExponentTuple& P, const GridConfig& cfg,
                                                  const std::vector<double>& deltas) {
  WeightFamilySpec spec;
  spec.deltas = deltas;
  const SparseFamily S = tower_family(cfg);
  SplitTermFamily out;
  out.apvec.resize(deltas.size());
  out.first.resize(deltas.size());
  out.second.resize(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    const auto m = family_member(spec, P, cfg, deltas[i]);
    const auto r = split_term_ratios(S, WeightBundle(m.w1, m.w2, P), m.apvec, P);
    out.apvec[i] = m.apvec;
    out.first[i] = r.r1.ratio;
    out.second[i] = r.r2.ratio;
  });
  out.slope_first = log_log_slope(out.apvec, out.first);
  out.slope_second = log_log_slope(out.apvec, out.second);
  return out;
}

/// Pinned ratio-family configuration.
inline const GridConfig ratio_grid{1, 12};
inline constexpr int ratio_delta_first = 2, ratio_delta_last = 9;
inline constexpr double ratio_slope_limit = 0.05;

[[nodiscard]] inline std::vector<ExponentTuple> ratio_exponents() { return {{6.0, 6.0}, {2.0, 3.0}}; }

[[nodiscard]] inline CheckResult check_localized_sum_ratios(std::uint64_t seed) {
  CheckResult r("localized_sum_ratios");
  json fams = json::array();
  const auto deltas = dyadic_deltas(ratio_delta_first, ratio_delta_last);
  // The pinned maxima use seed 1; other seeds only move the random test functions.
  for (const auto& P : ratio_exponents()) {
    const auto fam = localized_sum_family(P, ratio_grid, deltas, seed);
    if (fam.slope > ratio_slope_limit) r.fail("localized sum ratio grows with the A_P constant");
    for (double x : fam.max_ratio)
      if (!(std::isfinite(x) && x > 0.0)) r.fail("localized sum ratio not finite and positive");
    fams.push_back({{"p1", P.p1}, {"p2", P.p2}, {"slope", fam.slope},
                    {"max_ratio", *std::max_element(fam.max_ratio.begin(), fam.max_ratio.end())}});
  }
  r.metrics["families"] = fams;
  return r;
}

[[nodiscard]] inline CheckResult check_split_term_ratios(std::uint64_t seed) {
  CheckResult r("split_term_ratios");
  json fams = json::array();
  const auto deltas = dyadic_deltas(ratio_delta_first, ratio_delta_last);
  for (const auto& P : ratio_exponents()) {
    const auto fam = split_term_family(P, ratio_grid, deltas);
    if (fam.slope_first > ratio_slope_limit || fam.slope_second > ratio_slope_limit)
      r.fail("split term ratio grows with the A_P constant");
    fams.push_back({{"p1", P.p1},
                    {"p2", P.p2},
                    {"slope_first", fam.slope_first},
                    {"slope_second", fam.slope_second},
                    {"max_first", *std::max_element(fam.first.begin(), fam.first.end())},
                    {"max_second", *std::max_element(fam.second.begin(), fam.second.end())}});
  }
  // Random sparse families at fixed weights.
  auto rng = check_rng(seed, 52);
  const GridConfig cfg(1, 8);
  const ExponentTuple P(3.0, 3.0);
  const Weight w1 = random_ap_weight(cfg, 7, 1.0), w2 = random_ap_weight(cfg, 8, 1.0);
  const WeightBundle W(w1, w2, P);
  const double apvec = apvec_constant(w1, w2, P).value;
  double m1 = 0.0, m2 = 0.0;
  for (int t = 0; t < 30; ++t) {
    const auto rr = split_term_ratios(generate_sparse(cfg, rng()), W, apvec, P);
    if (!(rr.r1.defined && rr.r2.defined)) r.fail("split term ratio undefined");
    m1 = std::max(m1, rr.r1.ratio);
    m2 = std::max(m2, rr.r2.ratio);
  }
  r.metrics["families"] = fams;
  r.metrics["random_sparse_max_first"] = m1;
  r.metrics["random_sparse_max_second"] = m2;
  return r;
}

// ---------------------------------------------------------------- theory and harness

[[nodiscard]] inline CheckResult check_exponent_examples() {
  CheckResult r("exponent_examples");
  struct Case {
    double p1, p2, beta, gamma, alpha;
  };
  for (const Case c : {Case{2, 3, 1.5, 5.0 / 3.0, 1.5}, Case{6, 6, 2.0 / 3.0, 1.0, 2.0 / 3.0},
                       Case{4, 4, 1.0, 1.0, 1.0}}) {
    const auto e = alpha(ExponentTuple(c.p1, c.p2));
    if (std::abs(e.beta - c.beta) > 1e-12 || std::abs(e.gamma - c.gamma) > 1e-12 ||
        std::abs(e.alpha - c.alpha) > 1e-12)
      r.fail("exponent formula mismatch");
  }
  return r;
}

[[nodiscard]] inline CheckResult check_region(int resolution = 200) {
  CheckResult r("region_claims");
  const auto t = region_map(resolution);
  std::size_t golden = 0, min4 = 0, bad = 0;
  for (const auto& row : t.rows) {
    if (row.alpha > row.beta || row.alpha > row.gamma) r.fail("alpha exceeds beta or gamma");
    if (!(row.beta < 1.0 + 1.0 / row.p)) r.fail("beta not below 1 + 1/p");
    if (row.p_ge_golden) {
      ++golden;
      if (!row.alpha_lt_1) ++bad;
    }
    if (row.min_gt_4) {
      ++min4;
      if (!row.alpha_lt_1) ++bad;
    }
  }
  if (bad > 0) r.fail("region claim has exceptions");
  r.metrics["points"] = t.rows.size();
  r.metrics["p_ge_golden_points"] = golden;
  r.metrics["min_gt_4_points"] = min4;
  r.metrics["exceptions"] = bad;
  return r;
}

/// The pinned headline configuration: P = (6,6), tower family, K = 14,
/// delta in {2^-2, ..., 2^-9}.
struct SlopeCheckConfig {
  ExponentTuple P{6.0, 6.0};
  GridConfig grid{1, 14};
  std::vector<double> deltas = dyadic_deltas(2, 9);
  double alpha_margin = 0.15;
  double strong_margin = 0.05;
};

[[nodiscard]] inline CheckResult check_slope(std::uint64_t seed, const SlopeCheckConfig& c = {}) {
  CheckResult r("slope_experiment");
  WeightFamilySpec spec;
  spec.deltas = c.deltas;
  const auto res = slope_experiment(spec, c.P, c.grid, tower_family(c.grid),
                                    default_test_functions(c.grid, seed));
  const double a = alpha(c.P).alpha;
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    if (!(res.rows[i].apvec_constant > res.rows[i - 1].apvec_constant))
      r.fail("A_P constant not increasing as delta decreases");
  if (!(res.weak_slope <= a + c.alpha_margin)) r.fail("weak slope above alpha + margin");
  if (!(res.weak_slope <= res.strong_slope + c.strong_margin)) r.fail("weak slope above strong slope + margin");
  r.metrics["alpha"] = a;
  r.metrics["weak_slope"] = res.weak_slope;
  r.metrics["strong_slope"] = res.strong_slope;
  r.metrics["weak_limit"] = a + c.alpha_margin;
  return r;
}

// ---------------------------------------------------------------- suites

enum class Suite { all, dyadic, lemmas, stopping };

[[nodiscard]] inline json run_suite(Suite suite, std::uint64_t seed) {
  std::vector<std::function<CheckResult()>> checks;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::dyadic) {
    checks.emplace_back([] { return check_dyadic_exhaustive(); });
  }
  if (all) {
    checks.emplace_back([=] { return check_measure_properties(seed); });
    checks.emplace_back([=] { return check_sparsity(seed); });
    checks.emplace_back([] { return check_exponent_examples(); });
    checks.emplace_back([] { return check_region(); });
  }
  if (all || suite == Suite::lemmas) {
    checks.emplace_back([=] { return check_exponent_change(seed); });
    checks.emplace_back([=] { return check_weight_bounds(seed); });
    checks.emplace_back([=] { return check_local_global(seed); });
    checks.emplace_back([=] { return check_localized_sum_ratios(seed); });
    checks.emplace_back([=] { return check_split_term_ratios(seed); });
    checks.emplace_back([=] { return check_kolmogorov(seed); });
    checks.emplace_back([=] { return check_reverse_holder(seed); });
  }
  if (all || suite == Suite::stopping) {
    checks.emplace_back([=] { return check_stopping(seed); });
    checks.emplace_back([=] { return check_bilinear_split(seed); });
  }
  if (all) checks.emplace_back([=] { return check_slope(seed); });

  json report;
  report["seed"] = seed;
  json items = json::array();
  bool pass = true;
  for (const auto& c : checks) {
    const CheckResult res = c();
    pass = pass && res.pass;
    items.push_back(res.to_json());
  }
  report["checks"] = items;
  report["pass"] = pass;
  return report;
}

}  // namespace wsl
