// Sparse families of dyadic cubes and bilinear sparse operators
//   A_S(f1, f2) = sum_{Q in S} <f1>_Q <f2>_Q chi_Q.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wsl/dyadic.hpp"
#include "wsl/measure.hpp"

namespace wsl {

/// Per-level membership table for a set of cubes; find() is O(1).
class CubeIndex {
 public:
  CubeIndex() = default;
  CubeIndex(const GridConfig& cfg, const std::vector<DyadicCube>& cubes) : cfg_(cfg) {
    slot_.resize(static_cast<std::size_t>(cfg.finest_level) + 1);
    for (std::size_t n = 0; n < cubes.size(); ++n) {
      const auto& q = cubes[n];
      auto& level = slot_[q.level];
      if (level.empty()) level.assign(cfg.cubes_at(q.level), npos);
      level[linear_index(cfg, q)] = n;
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  [[nodiscard]] std::size_t find(int level, std::size_t index) const {
    const auto& l = slot_[level];
    return l.empty() ? npos : l[index];
  }
  [[nodiscard]] std::size_t find(const DyadicCube& q) const {
    return find(q.level, linear_index(cfg_, q));
  }
  [[nodiscard]] bool contains(const DyadicCube& q) const { return find(q) != npos; }

  /// Position of the smallest member containing q (q itself included), or npos.
  [[nodiscard]] std::size_t smallest_containing(const DyadicCube& q) const {
    for (int k = q.level; k >= 0; --k) {
      const std::size_t n = find(ancestor(q, k));
      if (n != npos) return n;
    }
    return npos;
  }
  /// Same, excluding q itself.
  [[nodiscard]] std::size_t smallest_strict_container(const DyadicCube& q) const {
    return q.level == 0 ? npos : smallest_containing(parent(q));
  }

 private:
  GridConfig cfg_;
  std::vector<std::vector<std::size_t>> slot_;
};

/// A finite set of cubes on one grid, kept sorted in enumeration order.
/// `witness` holds E_Q (finest-cell indices) once verify_sparse succeeds.
class SparseFamily {
 public:
  SparseFamily() = default;
  SparseFamily(GridConfig cfg, std::vector<DyadicCube> cubes) : cfg_(cfg), cubes_(std::move(cubes)) {
    for (const auto& q : cubes_) require_valid(cfg_, q);
    std::sort(cubes_.begin(), cubes_.end(), [](const DyadicCube& a, const DyadicCube& b) {
      return a.level != b.level ? a.level < b.level : a.coords < b.coords;
    });
    cubes_.erase(std::unique(cubes_.begin(), cubes_.end()), cubes_.end());
    index_ = CubeIndex(cfg_, cubes_);
  }

  [[nodiscard]] const GridConfig& config() const { return cfg_; }
  [[nodiscard]] const std::vector<DyadicCube>& cubes() const { return cubes_; }
  [[nodiscard]] std::size_t size() const { return cubes_.size(); }
  [[nodiscard]] bool empty() const { return cubes_.empty(); }
  [[nodiscard]] const CubeIndex& index() const { return index_; }
  [[nodiscard]] bool contains(const DyadicCube& q) const { return index_.contains(q); }

  /// Cubes with no strict superset in the family.
  [[nodiscard]] std::vector<DyadicCube> maximal_cubes() const {
    std::vector<DyadicCube> out;
    for (const auto& q : cubes_)
      if (index_.smallest_strict_container(q) == CubeIndex::npos) out.push_back(q);
    return out;
  }

  /// For each cube (by position), positions of its maximal strict subcubes in the family.
  [[nodiscard]] std::vector<std::vector<std::size_t>> child_lists() const {
    std::vector<std::vector<std::size_t>> out(cubes_.size());
    for (std::size_t n = 0; n < cubes_.size(); ++n) {
      const std::size_t up = index_.smallest_strict_container(cubes_[n]);
      if (up != CubeIndex::npos) out[up].push_back(n);
    }
    return out;
  }

  std::vector<std::vector<std::size_t>> witness;

 private:
  GridConfig cfg_;
  std::vector<DyadicCube> cubes_;
  CubeIndex index_;
};

struct SparseVerdict {
  bool pass;
  std::optional<DyadicCube> counterexample;
};

/// For each finest cell, position of the smallest family cube containing it.
[[nodiscard]] inline std::vector<std::size_t> deepest_owner(const SparseFamily& S) {
  const GridConfig& cfg = S.config();
  std::vector<std::size_t> owner(cfg.cell_count(), CubeIndex::npos);
  for (std::size_t c = 0; c < owner.size(); ++c) owner[c] = S.index().smallest_containing(cell_cube(cfg, c));
  return owner;
}

/// Canonical witness E_Q = Q minus the union of the maximal strict subcubes of Q
/// in the family; passes when every |E_Q| >= |Q|/2. On success the witness is
/// stored in S. Rejection means "not canonically sparse".
[[nodiscard]] inline SparseVerdict verify_sparse(SparseFamily& S) {
  const GridConfig& cfg = S.config();
  const auto owner = deepest_owner(S);
  std::vector<std::vector<std::size_t>> witness(S.size());
  for (std::size_t c = 0; c < owner.size(); ++c)
    if (owner[c] != CubeIndex::npos) witness[owner[c]].push_back(c);
  for (std::size_t n = 0; n < S.size(); ++n) {
    if (2 * witness[n].size() < cfg.cells_per_cube(S.cubes()[n].level)) {
      S.witness.clear();
      return {false, S.cubes()[n]};
    }
  }
  S.witness = std::move(witness);
  return {true, std::nullopt};
}

[[nodiscard]] inline SparseVerdict verify_sparse(const SparseFamily& S) {
  SparseFamily copy = S;
  return verify_sparse(copy);
}

/// Seeded top-down generator. Cubes are visited in enumeration order and each
/// is proposed with probability 1/2. A proposed cube R is admitted when it has
/// no selected ancestor, or when the selected maximal strict subcubes of its
/// smallest selected ancestor A, together with R, cover at most budget * |A|.
/// With budget <= 1/2 every output is canonically sparse.
[[nodiscard]] inline SparseFamily generate_sparse(const GridConfig& cfg, std::uint64_t seed,
                                                  double budget = 0.5) {
  if (!(budget > 0.0 && budget <= 0.5)) throw std::invalid_argument("budget must lie in (0, 1/2]");
  std::mt19937_64 rng(seed);
  std::vector<DyadicCube> kept;
  std::vector<std::size_t> covered;  // cells covered by maximal strict subcubes, per kept cube
  std::vector<std::vector<std::size_t>> slot(static_cast<std::size_t>(cfg.finest_level) + 1);
  const auto owner_of = [&](const DyadicCube& q) -> std::size_t {
    for (int k = q.level - 1; k >= 0; --k) {
      const auto& l = slot[k];
      if (l.empty()) continue;
      const std::size_t n = l[linear_index(cfg, ancestor(q, k))];
      if (n != CubeIndex::npos) return n;
    }
    return CubeIndex::npos;
  };
  for (int k = 0; k <= cfg.finest_level; ++k) {
    for (std::size_t i = 0, n = cfg.cubes_at(k); i < n; ++i) {
      if ((rng() >> 63) == 0) continue;
      const DyadicCube q = cube_at(cfg, k, i);
      const std::size_t a = owner_of(q);
      const std::size_t size = cfg.cells_per_cube(k);
      if (a != CubeIndex::npos) {
        const double cap = budget * static_cast<double>(cfg.cells_per_cube(kept[a].level));
        if (static_cast<double>(covered[a] + size) > cap) continue;
        covered[a] += size;
      }
      if (slot[k].empty()) slot[k].assign(cfg.cubes_at(k), CubeIndex::npos);
      slot[k][i] = kept.size();
      kept.push_back(q);
      covered.push_back(0);
    }
  }
  SparseFamily S(cfg, std::move(kept));
  (void)verify_sparse(S);
  return S;
}

/// {[0, 2^-k) : 0 <= k <= K} in 1D (the corner tower in 2D).
[[nodiscard]] inline SparseFamily tower_family(const GridConfig& cfg) {
  std::vector<DyadicCube> cubes;
  for (int k = 0; k <= cfg.finest_level; ++k) cubes.push_back({k, {0, 0}});
  return {cfg, std::move(cubes)};
}

/// Every cube with level <= depth.
[[nodiscard]] inline SparseFamily full_tree(const GridConfig& cfg, int depth) {
  std::vector<DyadicCube> cubes;
  for (int k = 0; k <= std::min(depth, cfg.finest_level); ++k)
    for (std::size_t i = 0, n = cfg.cubes_at(k); i < n; ++i) cubes.push_back(cube_at(cfg, k, i));
  return {cfg, std::move(cubes)};
}

/// Adds coefficient[n] on every cell of cube n and returns the resulting function.
/// Cells accumulate their cubes in enumeration order (coarse to fine).
[[nodiscard]] inline GridFunction spread_coefficients(const GridConfig& cfg,
                                                      const std::vector<DyadicCube>& cubes,
                                                      const std::vector<double>& coefficient) {
  const int K = cfg.finest_level;
  std::vector<std::vector<double>> level(static_cast<std::size_t>(K) + 1);
  for (std::size_t n = 0; n < cubes.size(); ++n) {
    auto& l = level[cubes[n].level];
    if (l.empty()) l.assign(cfg.cubes_at(cubes[n].level), 0.0);
    l[linear_index(cfg, cubes[n])] += coefficient[n];
  }
  std::vector<double> acc(1, 0.0), next;
  if (!level[0].empty()) acc[0] = level[0][0];
  for (int k = 1; k <= K; ++k) {
    next.resize(cfg.cubes_at(k));
    const auto& l = level[k];
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = acc[parent_index(cfg, k, i)];
      if (!l.empty()) next[i] += l[i];
    }
    acc.swap(next);
  }
  return {cfg, std::move(acc)};
}

[[nodiscard]] inline GridFunction sparse_eval(const SparseFamily& S, const GridFunction& f1,
                                              const GridFunction& f2) {
  require_same_grid(S.config(), f1.config());
  require_same_grid(S.config(), f2.config());
  const LevelSums a(f1), b(f2);
  std::vector<double> coeff(S.size());
  for (std::size_t n = 0; n < S.size(); ++n) coeff[n] = a.mean(S.cubes()[n]) * b.mean(S.cubes()[n]);
  return spread_coefficients(S.config(), S.cubes(), coeff);
}

struct SplitEval {
  GridFunction A1;  // cubes Q containing Qt (Q == Qt included), factor <f1 chi_Qt>_Q
  GridFunction A2;  // cubes Q strictly inside Qt
};

[[nodiscard]] inline SplitEval sparse_split_eval(const SparseFamily& S, const DyadicCube& Qt,
                                                 const GridFunction& f1, const GridFunction& f2) {
  const GridConfig& cfg = S.config();
  require_same_grid(cfg, f1.config());
  require_same_grid(cfg, f2.config());
  require_valid(cfg, Qt);
  std::vector<char> inside(cfg.cell_count(), 0);
  for (std::size_t c : cells_of(Qt, cfg)) inside[c] = 1;
  for (std::size_t c = 0; c < f2.size(); ++c)
    if (!inside[c] && f2[c] != 0.0) throw std::invalid_argument("localization hypothesis violated");
  const GridFunction f1_local = restrict_to(f1, Qt);
  const LevelSums a_local(f1_local), a(f1), b(f2);
  std::vector<DyadicCube> outer, inner;
  std::vector<double> c_outer, c_inner;
  for (const auto& q : S.cubes()) {
    const Relation r = relation(Qt, q);
    if (r == Relation::equal || r == Relation::q_inside_r) {
      outer.push_back(q);
      c_outer.push_back(a_local.mean(q) * b.mean(q));
    } else if (r == Relation::r_inside_q) {
      inner.push_back(q);
      c_inner.push_back(a.mean(q) * b.mean(q));
    }
  }
  return {spread_coefficients(cfg, outer, c_outer), spread_coefficients(cfg, inner, c_inner)};
}

/// Cubes of S contained in Qt; the inherited witness stays valid.
[[nodiscard]] inline SparseFamily restrict(const SparseFamily& S, const DyadicCube& Qt) {
  std::vector<DyadicCube> kept;
  std::vector<std::vector<std::size_t>> witness;
  for (std::size_t n = 0; n < S.size(); ++n) {
    if (contained_in(S.cubes()[n], Qt)) {
      kept.push_back(S.cubes()[n]);
      if (!S.witness.empty()) witness.push_back(S.witness[n]);
    }
  }
  SparseFamily out(S.config(), std::move(kept));
  out.witness = std::move(witness);
  return out;
}

/// sum_{Q in S} |Q| and |union E_Q| for a verified family.
struct CarlesonPacking {
  double total_measure;
  double witness_measure;
};

[[nodiscard]] inline CarlesonPacking carleson_packing(const SparseFamily& S) {
  const GridConfig& cfg = S.config();
  CarlesonPacking r{0.0, 0.0};
  for (const auto& q : S.cubes()) r.total_measure += measure(cfg, q);
  std::size_t cells = 0;
  for (const auto& e : S.witness) cells += e.size();
  r.witness_measure = static_cast<double>(cells) * cfg.cell_measure();
  return r;
}

}  // namespace wsl
