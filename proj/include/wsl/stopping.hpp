// Stopping-time families built from a pair (f, w) over a sparse family, the
// Carleson-type packing bound, and the two-family split of the bilinear form
// used in the localized estimate.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsl/dyadic.hpp"
#include "wsl/measure.hpp"
#include "wsl/sparse.hpp"

namespace wsl {

/// Weighted averages <f>^w_Q = int_Q f w / w(Q) for every cube.
class WeightedAverages {
 public:
  WeightedAverages(const GridFunction& f, const Weight& w)
      : fw_(f.config(), multiply(f, w.function()).values()), w_(w) {
    require_same_grid(f.config(), w.config());
  }
  [[nodiscard]] double operator()(const DyadicCube& q) const { return fw_.sum(q) / w_.sum(q); }
  /// w(Q).
  [[nodiscard]] double mass(const DyadicCube& q) const {
    return w_.sum(q) * w_.config().cell_measure();
  }

 private:
  LevelSums fw_;
  LevelSums w_;
};

struct StoppingMember {
  DyadicCube cube;
  int generation;
  double average;             // <f>^w over the cube
  std::size_t parent_member;  // member of the previous generation containing it, npos at generation 0
};

class StoppingFamily {
 public:
  StoppingFamily() = default;
  StoppingFamily(GridConfig cfg, std::vector<StoppingMember> members, std::string source)
      : cfg_(cfg), members_(std::move(members)), source_(std::move(source)) {
    std::vector<DyadicCube> cubes;
    cubes.reserve(members_.size());
    for (const auto& m : members_) cubes.push_back(m.cube);
    index_ = CubeIndex(cfg_, cubes);
  }

  [[nodiscard]] const GridConfig& config() const { return cfg_; }
  [[nodiscard]] const std::vector<StoppingMember>& members() const { return members_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] const std::string& source() const { return source_; }
  [[nodiscard]] bool contains(const DyadicCube& q) const { return index_.contains(q); }
  [[nodiscard]] const StoppingMember& member_of(const DyadicCube& q) const {
    const std::size_t n = index_.find(q);
    if (n == CubeIndex::npos) throw std::invalid_argument("cube is not a stopping member");
    return members_[n];
  }
  [[nodiscard]] int generations() const {
    int g = 0;
    for (const auto& m : members_) g = std::max(g, m.generation + 1);
    return g;
  }

  /// Minimal member containing q.
  [[nodiscard]] const StoppingMember& parent_of(const DyadicCube& q) const {
    const std::size_t n = index_.smallest_containing(q);
    if (n == CubeIndex::npos) throw std::invalid_argument("cube lies outside every maximal cube");
    return members_[n];
  }

 private:
  GridConfig cfg_;
  std::vector<StoppingMember> members_;
  std::string source_;
  CubeIndex index_;
};

/// Generation 0: maximal cubes of S. Generation k: for each F of generation k-1,
/// the maximal F' in S strictly inside F with <f>^w_{F'} > 2 <f>^w_F.
[[nodiscard]] inline StoppingFamily build_stopping(const SparseFamily& S, const GridFunction& f,
                                                   const Weight& w, std::string source = {}) {
  if (!f.is_nonnegative()) throw std::invalid_argument("stopping construction requires nonnegative f");
  if (S.empty()) throw std::invalid_argument("stopping construction requires a nonempty family");
  require_same_grid(S.config(), f.config());
  const WeightedAverages avg(f, w);
  const auto kids = S.child_lists();
  const auto& cubes = S.cubes();

  std::vector<StoppingMember> members;
  std::vector<std::size_t> family_pos;  // position in S for each member
  for (std::size_t n = 0; n < cubes.size(); ++n) {
    if (S.index().smallest_strict_container(cubes[n]) == CubeIndex::npos) {
      members.push_back({cubes[n], 0, avg(cubes[n]), CubeIndex::npos});
      family_pos.push_back(n);
    }
  }
  std::vector<std::size_t> stack;
  for (std::size_t head = 0; head < members.size(); ++head) {
    const double threshold = 2.0 * members[head].average;
    const int gen = members[head].generation + 1;
    stack.assign(kids[family_pos[head]].rbegin(), kids[family_pos[head]].rend());
    while (!stack.empty()) {
      const std::size_t n = stack.back();
      stack.pop_back();
      const double a = avg(cubes[n]);
      if (a > threshold) {
        members.push_back({cubes[n], gen, a, head});
        family_pos.push_back(n);
      } else {
        stack.insert(stack.end(), kids[n].rbegin(), kids[n].rend());
      }
    }
  }
  return {S.config(), std::move(members), std::move(source)};
}

[[nodiscard]] inline DyadicCube stopping_parent(const StoppingFamily& F, const DyadicCube& q) {
  return F.parent_of(q).cube;
}

struct CarlesonResult {
  bool child_mass_ok;
  double sum_value;
  double bound_value;
  bool pass;
};

/// Checks sum over next-generation members F' inside F of w(F') <= w(F)/2 for
/// every F, and sum_F (<f>^w_F)^p w(F) <= 2 (p')^p ||f||^p_{L^p(w)}.
[[nodiscard]] inline CarlesonResult carleson_checks(const StoppingFamily& F, const GridFunction& f,
                                                    const Weight& w, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("carleson_checks requires p > 1");
  const WeightedAverages avg(f, w);
  const auto& m = F.members();
  std::vector<double> child_mass(m.size(), 0.0);
  double sum = 0.0;
  for (const auto& x : m) {
    const double mass = avg.mass(x.cube);
    if (x.parent_member != CubeIndex::npos) child_mass[x.parent_member] += mass;
    sum += std::pow(avg(x.cube), p) * mass;
  }
  bool ok = true;
  for (std::size_t n = 0; n < m.size(); ++n) ok = ok && child_mass[n] <= avg.mass(m[n].cube) / 2.0;
  const double bound = 2.0 * std::pow(conjugate(p), p) * std::pow(lp_norm(f, w, p), p);
  return {ok, sum, bound, sum <= bound};
}

struct BilinearSplit {
  double I1;
  double I2;
  double total;
};

/// total = sum_{Q in S'} <f2>^{sigma2}_Q <h>^v_Q lambda_Q with
/// lambda_Q = <sigma1>_Q <sigma2>_Q v(Q). With (F2, H) the stopping parents of
/// Q in the families of (f2, sigma2) and (h, v), terms with H inside F2 (equality
/// included) go to I1 and the rest (F2 strictly inside H) to I2.
[[nodiscard]] inline BilinearSplit bilinear_form_decompose(const SparseFamily& Sprime,
                                                           const GridFunction& f2,
                                                           const GridFunction& h,
                                                           const Weight& sigma2, const Weight& v,
                                                           const Weight& sigma1) {
  if (!f2.is_nonnegative() || !h.is_nonnegative())
    throw std::invalid_argument("bilinear_form_decompose requires nonnegative f2 and h");
  if (Sprime.maximal_cubes().size() != 1)
    throw std::invalid_argument("bilinear_form_decompose requires a single maximal cube");
  const StoppingFamily F2 = build_stopping(Sprime, f2, sigma2, "f2,sigma2");
  const StoppingFamily H = build_stopping(Sprime, h, v, "h,v");
  const WeightedAverages f_avg(f2, sigma2), h_avg(h, v);
  const LevelSums s1(sigma1), s2(sigma2), vs(v);
  const double cell = Sprime.config().cell_measure();
  BilinearSplit r{0.0, 0.0, 0.0};
  for (const auto& q : Sprime.cubes()) {
    const double lambda = s1.mean(q) * s2.mean(q) * vs.sum(q) * cell;
    const double term = f_avg(q) * h_avg(q) * lambda;
    r.total += term;
    const DyadicCube pf = F2.parent_of(q).cube, ph = H.parent_of(q).cube;
    if (contained_in(ph, pf))
      r.I1 += term;
    else
      r.I2 += term;
  }
  return r;
}

}  // namespace wsl
