// Dyadic cube geometry on the unit cube [0,1)^n, n in {1, 2}.
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsl {

/// Grid of finest cells with sidelength 2^-K on [0,1)^n.
struct GridConfig {
  int dimension = 1;
  int finest_level = 1;

  GridConfig() = default;
  GridConfig(int dim, int k) : dimension(dim), finest_level(k) { validate(); }

  void validate() const {
    if (dimension != 1 && dimension != 2)
      throw std::invalid_argument("grid dimension must be 1 or 2");
    const int max_level = dimension == 1 ? 24 : 12;
    if (finest_level < 1 || finest_level > max_level)
      throw std::invalid_argument("finest_level must lie in [1, " + std::to_string(max_level) +
                                  "] for dimension " + std::to_string(dimension));
  }

  /// Number of dyadic cubes at `level`.
  [[nodiscard]] std::size_t cubes_at(int level) const {
    return std::size_t{1} << (dimension * level);
  }
  [[nodiscard]] std::size_t cell_count() const { return cubes_at(finest_level); }
  /// Finest cells inside one cube of `level`.
  [[nodiscard]] std::size_t cells_per_cube(int level) const {
    return std::size_t{1} << (dimension * (finest_level - level));
  }
  [[nodiscard]] double cell_measure() const {
    return 1.0 / static_cast<double>(cell_count());
  }

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

/// Half-open cube prod_i [c_i 2^-k, (c_i+1) 2^-k). Unused coordinates are zero.
struct DyadicCube {
  int level = 0;
  std::array<std::uint32_t, 2> coords{0, 0};

  [[nodiscard]] static DyadicCube root() { return {}; }

  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

enum class Relation { equal, q_inside_r, r_inside_q, disjoint };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::q_inside_r: return "q_inside_r";
    case Relation::r_inside_q: return "r_inside_q";
    case Relation::disjoint: return "disjoint";
  }
  return "?";
}

/// Position of a cube among the cubes of its level (lexicographic coords).
[[nodiscard]] inline std::size_t linear_index(const GridConfig& cfg, const DyadicCube& q) {
  if (cfg.dimension == 1) return q.coords[0];
  return (static_cast<std::size_t>(q.coords[0]) << q.level) | q.coords[1];
}

[[nodiscard]] inline DyadicCube cube_at(const GridConfig& cfg, int level, std::size_t index) {
  DyadicCube q;
  q.level = level;
  if (cfg.dimension == 1) {
    q.coords[0] = static_cast<std::uint32_t>(index);
  } else {
    q.coords[0] = static_cast<std::uint32_t>(index >> level);
    q.coords[1] = static_cast<std::uint32_t>(index & ((std::size_t{1} << level) - 1));
  }
  return q;
}

[[nodiscard]] inline bool is_valid(const GridConfig& cfg, const DyadicCube& q) {
  if (q.level < 0 || q.level > cfg.finest_level) return false;
  const std::uint64_t side = std::uint64_t{1} << q.level;
  for (int i = 0; i < 2; ++i) {
    if (i < cfg.dimension ? q.coords[i] >= side : q.coords[i] != 0) return false;
  }
  return true;
}

inline void require_valid(const GridConfig& cfg, const DyadicCube& q) {
  if (!is_valid(cfg, q)) throw std::invalid_argument("cube does not belong to the grid");
}

[[nodiscard]] inline DyadicCube parent(const DyadicCube& q) {
  if (q.level < 1) throw std::invalid_argument("root has no parent");
  return {q.level - 1, {q.coords[0] >> 1, q.coords[1] >> 1}};
}

/// Ancestor of `q` at `level` (level <= q.level).
[[nodiscard]] inline DyadicCube ancestor(const DyadicCube& q, int level) {
  const int shift = q.level - level;
  if (shift < 0) throw std::invalid_argument("ancestor level below cube level");
  return {level, {q.coords[0] >> shift, q.coords[1] >> shift}};
}

[[nodiscard]] inline std::vector<DyadicCube> children(const GridConfig& cfg, const DyadicCube& q) {
  if (q.level >= cfg.finest_level) return {};
  std::vector<DyadicCube> out;
  const std::uint32_t x = q.coords[0] << 1, y = q.coords[1] << 1;
  if (cfg.dimension == 1) {
    out.push_back({q.level + 1, {x, 0}});
    out.push_back({q.level + 1, {x + 1, 0}});
  } else {
    for (std::uint32_t a = 0; a < 2; ++a)
      for (std::uint32_t b = 0; b < 2; ++b) out.push_back({q.level + 1, {x + a, y + b}});
  }
  return out;
}

/// True when q is contained in r (q == r included).
[[nodiscard]] inline bool contained_in(const DyadicCube& q, const DyadicCube& r) {
  return q.level >= r.level && ancestor(q, r.level) == r;
}

[[nodiscard]] inline Relation relation(const DyadicCube& q, const DyadicCube& r) {
  if (q == r) return Relation::equal;
  if (q.level > r.level && ancestor(q, r.level) == r) return Relation::q_inside_r;
  if (r.level > q.level && ancestor(r, q.level) == q) return Relation::r_inside_q;
  return Relation::disjoint;
}

[[nodiscard]] inline double measure(const GridConfig& cfg, const DyadicCube& q) {
  return static_cast<double>(cfg.cells_per_cube(q.level)) * cfg.cell_measure();
}

/// Every cube with level in [0, K], level-major then lexicographic.
[[nodiscard]] inline std::vector<DyadicCube> all_cubes(const GridConfig& cfg) {
  std::vector<DyadicCube> out;
  for (int k = 0; k <= cfg.finest_level; ++k)
    for (std::size_t i = 0, n = cfg.cubes_at(k); i < n; ++i) out.push_back(cube_at(cfg, k, i));
  return out;
}

/// Finest-cell indices of `q`, ascending. In 1D the result is a contiguous range.
[[nodiscard]] inline std::vector<std::size_t> cells_of(const DyadicCube& q, const GridConfig& cfg) {
  require_valid(cfg, q);
  const int shift = cfg.finest_level - q.level;
  const std::size_t span = std::size_t{1} << shift;
  std::vector<std::size_t> out;
  out.reserve(cfg.cells_per_cube(q.level));
  if (cfg.dimension == 1) {
    const std::size_t first = static_cast<std::size_t>(q.coords[0]) << shift;
    for (std::size_t i = 0; i < span; ++i) out.push_back(first + i);
  } else {
    const std::size_t x0 = static_cast<std::size_t>(q.coords[0]) << shift;
    const std::size_t y0 = static_cast<std::size_t>(q.coords[1]) << shift;
    for (std::size_t x = x0; x < x0 + span; ++x)
      for (std::size_t y = y0; y < y0 + span; ++y) out.push_back((x << cfg.finest_level) | y);
  }
  return out;
}

/// Finest cube containing the cell.
[[nodiscard]] inline DyadicCube cell_cube(const GridConfig& cfg, std::size_t cell) {
  return cube_at(cfg, cfg.finest_level, cell);
}

/// Linear index, at `level`, of the cube containing the level-(level+1) cube `child_index`.
[[nodiscard]] inline std::size_t parent_index(const GridConfig& cfg, int child_level,
                                              std::size_t child_index) {
  if (cfg.dimension == 1) return child_index >> 1;
  const std::size_t row_bits = static_cast<std::size_t>(child_level);
  const std::size_t x = child_index >> row_bits;
  const std::size_t y = child_index & ((std::size_t{1} << row_bits) - 1);
  return ((x >> 1) << (row_bits - 1)) | (y >> 1);
}

}  // namespace wsl
