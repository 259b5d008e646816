// JSON file formats for grid functions, weights and sparse families.
#pragma once

#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsl/measure.hpp"
#include "wsl/sparse.hpp"

namespace wsl {

using json = nlohmann::json;

/// Failure reading or writing a file; the message names the file and, for
/// parse failures, the byte offset.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

[[nodiscard]] inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(origin + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

[[nodiscard]] inline json function_to_json(const GridFunction& f) {
  json j;
  j["dimension"] = f.config().dimension;
  j["finest_level"] = f.config().finest_level;
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  return j;
}

[[nodiscard]] inline GridFunction function_from_json(const json& j, const std::string& origin) {
  try {
    const GridConfig cfg(j.at("dimension").get<int>(), j.at("finest_level").get<int>());
    return {cfg, j.at("values").get<std::vector<double>>()};
  } catch (const json::exception& e) {
    throw IoError(origin + ": invalid grid function: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(origin + ": invalid grid function: " + e.what());
  }
}

[[nodiscard]] inline GridFunction load_function(const std::string& path) {
  return function_from_json(parse_json_text(read_file(path), path), path);
}

[[nodiscard]] inline Weight load_weight(const std::string& path) {
  GridFunction f = load_function(path);
  try {
    return Weight(std::move(f));
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
}

/// Compact dump; doubles are printed with round-trip precision.
[[nodiscard]] inline std::string dump(const json& j) { return j.dump() + "\n"; }

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << dump(j);
  if (!out) throw IoError(path + ": write failed");
}

inline void save_function(const std::string& path, const GridFunction& f) {
  save_json(path, function_to_json(f));
}

[[nodiscard]] inline json family_to_json(const SparseFamily& S) {
  json arr = json::array();
  for (const auto& q : S.cubes()) {
    json c;
    c["level"] = q.level;
    std::vector<std::uint32_t> coords(q.coords.begin(), q.coords.begin() + S.config().dimension);
    c["coords"] = coords;
    arr.push_back(std::move(c));
  }
  return arr;
}

/// The family file is an array of {level, coords}; the grid comes from the
/// functions it is evaluated against.
[[nodiscard]] inline SparseFamily family_from_json(const json& j, const GridConfig& cfg,
                                                   const std::string& origin) {
  try {
    if (!j.is_array()) throw IoError(origin + ": sparse family must be a JSON array");
    std::vector<DyadicCube> cubes;
    for (const auto& c : j) {
      DyadicCube q;
      q.level = c.at("level").get<int>();
      const auto coords = c.at("coords").get<std::vector<std::uint32_t>>();
      if (coords.size() != static_cast<std::size_t>(cfg.dimension))
        throw IoError(origin + ": cube coordinate count does not match grid dimension");
      for (std::size_t i = 0; i < coords.size(); ++i) q.coords[i] = coords[i];
      if (!is_valid(cfg, q)) throw IoError(origin + ": cube outside the grid");
      cubes.push_back(q);
    }
    return {cfg, std::move(cubes)};
  } catch (const json::exception& e) {
    throw IoError(origin + ": invalid sparse family: " + e.what());
  }
}

[[nodiscard]] inline SparseFamily load_family(const std::string& path, const GridConfig& cfg) {
  return family_from_json(parse_json_text(read_file(path), path), cfg, path);
}

}  // namespace wsl
