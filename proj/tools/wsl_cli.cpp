// Command-line front end for the weighted sparse lab.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsl/constants.hpp"
#include "wsl/harness.hpp"
#include "wsl/io.hpp"
#include "wsl/sparse.hpp"
#include "wsl/theory.hpp"
#include "wsl/verify.hpp"

namespace {

using wsl::json;

json exponent_json(const wsl::ExponentReport& e) {
  return {{"p1", e.p1},
          {"p2", e.p2},
          {"p", e.p},
          {"beta", e.beta},
          {"gamma", e.gamma},
          {"alpha", e.alpha},
          {"weak_strictly_better", e.weak_strictly_better},
          {"alpha_lt_1", e.alpha_lt_1}};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> parse_deltas(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_commas(s)) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad delta: " + item);
    out.push_back(v);
  }
  return out;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    wsl::write_text_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted sparse lab: dyadic A_P constants, sparse operators and weak-type exponents"};
  app.require_subcommand(1);

  // exponents
  double e_p1 = 0, e_p2 = 0;
  auto* exponents = app.add_subcommand("exponents", "Print beta, gamma and alpha for (p1, p2) as JSON");
  exponents->add_option("--p1", e_p1)->required();
  exponents->add_option("--p2", e_p2)->required();

  // region
  int resolution = 200;
  std::string csv_path, svg_path;
  auto* region = app.add_subcommand("region", "Tabulate alpha over the exponent triangle");
  region->add_option("--resolution", resolution)->check(CLI::Range(2, 100000));
  region->add_option("--csv", csv_path, "CSV output path");
  region->add_option("--svg", svg_path, "SVG output path");

  // constants
  std::string weight_list;
  double c_p1 = 0, c_p2 = 0;
  auto* constants = app.add_subcommand("constants", "A_P and A_infinity constants of a weight pair");
  constants->add_option("--weights", weight_list, "w1.json,w2.json")->required();
  constants->add_option("--p1", c_p1)->required();
  constants->add_option("--p2", c_p2)->required();

  // sparse-eval
  std::string family_path, f1_path, f2_path, out_path;
  auto* sparse_eval = app.add_subcommand("sparse-eval", "Evaluate the bilinear sparse operator");
  sparse_eval->add_option("--family", family_path)->required()->check(CLI::ExistingFile);
  sparse_eval->add_option("--f1", f1_path)->required()->check(CLI::ExistingFile);
  sparse_eval->add_option("--f2", f2_path)->required()->check(CLI::ExistingFile);
  sparse_eval->add_option("--out", out_path, "output function JSON (stdout when omitted)");

  // verify
  std::string suite_name = "all";
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run verification suites; nonzero exit on any failure");
  verify->add_option("--suite", suite_name)->check(CLI::IsMember({"all", "dyadic", "lemmas", "stopping"}));
  verify->add_option("--seed", seed);

  // experiment slope
  auto* experiment = app.add_subcommand("experiment", "Empirical experiments");
  experiment->require_subcommand(1);
  double s_p1 = 6, s_p2 = 6;
  int finest_level = 14;
  std::string deltas_text, family_kind = "power", rows_path, sparse_path;
  double roughness = 0.25;
  std::uint64_t exp_seed = 1;
  auto* slope = experiment->add_subcommand("slope", "Fit log weak/strong quantities against log [w]_{A_P}");
  slope->add_option("--p1", s_p1);
  slope->add_option("--p2", s_p2);
  slope->add_option("--finest-level", finest_level)->check(CLI::Range(1, 24));
  slope->add_option("--deltas", deltas_text, "comma-separated deltas (default 2^-2,...,2^-9)");
  slope->add_option("--family", family_kind)->check(CLI::IsMember({"power", "random_ap"}));
  slope->add_option("--roughness", roughness, "random_ap roughness per halving of delta");
  slope->add_option("--seed", exp_seed);
  slope->add_option("--sparse", sparse_path, "sparse family JSON (default: tower)");
  slope->add_option("--out", rows_path, "CSV output (stdout when omitted)");

  // weight generator
  std::string w_kind = "power", w_out;
  double w_a = 0.0;
  int w_dim = 1, w_level = 8;
  std::uint64_t w_seed = 1;
  auto* weight = app.add_subcommand("weight", "Write a generated weight as JSON");
  weight->add_option("--kind", w_kind)->check(CLI::IsMember({"power", "random_ap"}));
  weight->add_option("--a", w_a, "power exponent, or roughness for random_ap");
  weight->add_option("--dimension", w_dim);
  weight->add_option("--finest-level", w_level);
  weight->add_option("--seed", w_seed);
  weight->add_option("--out", w_out);

  // sparse family generator
  int g_dim = 1, g_level = 6;
  std::uint64_t g_seed = 1;
  double g_budget = 0.5;
  std::string g_kind = "random", g_out;
  auto* sparse_gen = app.add_subcommand("sparse-gen", "Write a sparse family as JSON");
  sparse_gen->add_option("--kind", g_kind)->check(CLI::IsMember({"random", "tower"}));
  sparse_gen->add_option("--dimension", g_dim);
  sparse_gen->add_option("--finest-level", g_level);
  sparse_gen->add_option("--seed", g_seed);
  sparse_gen->add_option("--budget", g_budget);
  sparse_gen->add_option("--out", g_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*exponents) {
      std::cout << wsl::dump(exponent_json(wsl::alpha(wsl::ExponentTuple(e_p1, e_p2))));
    } else if (*region) {
      const auto table = wsl::region_map(resolution);
      if (!csv_path.empty()) {
        std::ostringstream s;
        wsl::write_region_csv(table, s);
        write_or_print(csv_path, s.str());
      }
      if (!svg_path.empty()) write_or_print(svg_path, wsl::region_svg(table));
      if (csv_path.empty() && svg_path.empty()) wsl::write_region_csv(table, std::cout);
    } else if (*constants) {
      const auto paths = split_commas(weight_list);
      if (paths.size() != 2) throw std::invalid_argument("--weights expects two comma-separated files");
      const wsl::Weight w1 = wsl::load_weight(paths[0]), w2 = wsl::load_weight(paths[1]);
      const wsl::ExponentTuple P(c_p1, c_p2);
      const auto eq = wsl::check_constant_inequalities(w1, w2, P);
      json j;
      j["apvec"] = eq.apvec;
      j["ainfty_v"] = wsl::ainfty_constant(wsl::joint_weight(w1, w2, P)).value;
      j["ainfty_sigma1"] = wsl::ainfty_constant(wsl::dual_weight(w1, P.p1)).value;
      j["ainfty_sigma2"] = wsl::ainfty_constant(wsl::dual_weight(w2, P.p2)).value;
      j["weight_bounds_pass"] = eq.pass;
      std::cout << wsl::dump(j);
    } else if (*sparse_eval) {
      const auto f1 = wsl::load_function(f1_path), f2 = wsl::load_function(f2_path);
      const auto S = wsl::load_family(family_path, f1.config());
      write_or_print(out_path, wsl::dump(wsl::function_to_json(wsl::sparse_eval(S, f1, f2))));
    } else if (*verify) {
      const wsl::Suite suite = suite_name == "dyadic"     ? wsl::Suite::dyadic
                               : suite_name == "lemmas"   ? wsl::Suite::lemmas
                               : suite_name == "stopping" ? wsl::Suite::stopping
                                                          : wsl::Suite::all;
      json report = wsl::run_suite(suite, seed);
      report["suite"] = suite_name;
      std::cout << report.dump(2) << "\n";
      return report["pass"].get<bool>() ? 0 : 1;
    } else if (*slope) {
      const wsl::GridConfig cfg(1, finest_level);
      const wsl::ExponentTuple P(s_p1, s_p2);
      wsl::WeightFamilySpec spec;
      spec.kind = family_kind == "power" ? wsl::FamilyKind::power : wsl::FamilyKind::random_ap;
      spec.deltas = deltas_text.empty() ? wsl::dyadic_deltas(2, 9) : parse_deltas(deltas_text);
      spec.seed = exp_seed;
      spec.roughness = roughness;
      const auto S = sparse_path.empty() ? wsl::tower_family(cfg) : wsl::load_family(sparse_path, cfg);
      const auto res = wsl::slope_experiment(spec, P, cfg, S, wsl::default_test_functions(cfg, exp_seed));
      std::ostringstream s;
      wsl::write_experiment_csv(res.rows, s);
      write_or_print(rows_path, s.str());
      json summary{{"alpha", wsl::alpha(P).alpha},
                   {"weak_slope", res.weak_slope},
                   {"strong_slope", res.strong_slope}};
      std::cerr << wsl::dump(summary);
    } else if (*weight) {
      const wsl::GridConfig cfg(w_dim, w_level);
      const wsl::Weight w = w_kind == "power" ? wsl::power_weight(w_a, cfg)
                                              : wsl::random_ap_weight(cfg, w_seed, w_a);
      write_or_print(w_out, wsl::dump(wsl::function_to_json(w.function())));
    } else if (*sparse_gen) {
      const wsl::GridConfig cfg(g_dim, g_level);
      const auto S = g_kind == "tower" ? wsl::tower_family(cfg) : wsl::generate_sparse(cfg, g_seed, g_budget);
      write_or_print(g_out, wsl::dump(wsl::family_to_json(S)));
    }
  } catch (const wsl::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
