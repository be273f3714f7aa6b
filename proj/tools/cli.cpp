#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ssfractal/cantor.hpp"
#include "ssfractal/dimension.hpp"
#include "ssfractal/errors.hpp"
#include "ssfractal/ifs.hpp"
#include "ssfractal/index_tree.hpp"
#include "ssfractal/interval_set.hpp"
#include "ssfractal/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssf::cli {

namespace {

using io::json;

struct Globals {
  int threads = 0;
  bool serial = false;

  Execution execution() const { return serial ? Execution::serial : Execution::parallel; }
};

io::SystemDefinition load_system(const std::string& source) {
  if (source == "cantor") return {SimilitudeSystem::cantor(), Schedule::full(2)};
  return io::system_from_json(io::read_json_file(source));
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

std::vector<std::uint8_t> parse_digit_list(const std::string& text) {
  std::vector<std::uint8_t> out;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c < '0' || c > '2') throw Error(ErrorKind::invalid_input, "digits must be 0, 1 or 2");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (out.empty()) throw Error(ErrorKind::invalid_input, "empty digit list");
  return out;
}

void write_artifact(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::invalid_input, "cannot write '" + path + "'");
  file << content;
}

json schedule_prefix_json(const Schedule& sched, std::size_t k) {
  json list = json::array();
  for (const auto& s : sched.prefix(k)) list.push_back(s);
  return list;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ambiguous_expansion: return exit_ambiguous;
    case ErrorKind::depth_overflow: return exit_depth_overflow;
    default: return exit_invalid;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistically self-similar sets: construction, dimension, Cantor intersections", "ssf"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--threads", globals.threads, "OpenMP thread count (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--serial", globals.serial, "Use the serial reference kernels");

  std::function<void()> action;

  // construct
  auto* construct = app.add_subcommand("construct", "Iterate a system from [0,1] and emit the level set");
  std::string construct_system, construct_format = "json", construct_output;
  std::size_t construct_depth = 0;
  construct->add_option("--system", construct_system, "System JSON path or 'cantor'")->required();
  construct->add_option("--depth", construct_depth, "Iteration depth K")->required();
  construct->add_option("--out", construct_format, "Output format")->check(CLI::IsMember({"json", "svg"}));
  construct->add_option("-o,--output", construct_output, "Write the artifact here instead of standard output");
  construct->callback([&] {
    action = [&] {
      const auto def = load_system(construct_system);
      IterateOptions options;
      options.execution = globals.execution();
      const IntervalSet seed = IntervalSet::closed(0, 1);
      if (construct_format == "svg") {
        std::vector<IntervalSet> levels;
        for (std::size_t k = 0; k <= construct_depth; ++k) levels.push_back(iterate(def.system, def.schedule, k, seed, options));
        write_artifact(construct_output, io::render_levels_svg(levels), out);
        return;
      }
      json doc = io::to_json(iterate(def.system, def.schedule, construct_depth, seed, options));
      doc["config"] = json{{"command", "construct"}, {"system", construct_system}, {"depth", construct_depth}};
      write_artifact(construct_output, io::dump(doc), out);
    };
  });

  // reemit
  auto* reemit = app.add_subcommand("reemit", "Re-read an interval-set JSON file and emit it canonically");
  std::string reemit_file;
  reemit->add_option("--file", reemit_file, "Interval-set JSON")->required();
  reemit->callback([&] {
    action = [&] {
      const json input = io::read_json_file(reemit_file);
      json doc = io::to_json(io::interval_set_from_json(input));
      if (input.contains("config")) doc["config"] = input.at("config");
      out << io::dump(doc);
    };
  });

  // dimension
  auto* dimension = app.add_subcommand("dimension", "Estimate the dimension threshold of a system and schedule");
  std::string dimension_system;
  std::size_t dimension_depth = 200;
  double dimension_window = default_window_fraction, dimension_tol = default_dimension_tol;
  dimension->add_option("--system", dimension_system, "System JSON path or 'cantor'")->required();
  dimension->add_option("--max-depth", dimension_depth, "Horizon K")->capture_default_str();
  dimension->add_option("--window", dimension_window, "Window fraction of the horizon")->capture_default_str();
  dimension->add_option("--tol", dimension_tol, "Bisection tolerance")->capture_default_str();
  dimension->callback([&] {
    action = [&] {
      const auto def = load_system(dimension_system);
      json doc = io::to_json(estimate_dimension(def.system, def.schedule, dimension_depth, dimension_window, dimension_tol));
      doc["config"] = json{{"command", "dimension"},
                           {"system", dimension_system},
                           {"max_depth", dimension_depth},
                           {"window", dimension_window},
                           {"tol", dimension_tol}};
      out << io::dump(doc);
    };
  });

  // cantor intersect / montecarlo
  auto* cantor_cmd = app.add_subcommand("cantor", "Intersections of the Cantor set with its translates");
  cantor_cmd->require_subcommand(1);

  auto* intersect_cmd = cantor_cmd->add_subcommand("intersect", "Level-K intersection K_K and K_K + a");
  std::string intersect_a, intersect_digits;
  std::size_t intersect_depth = 0;
  auto* a_opt = intersect_cmd->add_option("--a", intersect_a, "Translation a = p/q in [0,1]");
  auto* digits_opt = intersect_cmd->add_option("--digits", intersect_digits, "Triadic digits of a, e.g. 0202");
  a_opt->excludes(digits_opt);
  intersect_cmd->add_option("--depth", intersect_depth, "Depth K")->required()->check(CLI::PositiveNumber);
  intersect_cmd->callback([&] {
    action = [&] {
      if (intersect_a.empty() == intersect_digits.empty()) {
        throw Error(ErrorKind::invalid_input, "give exactly one of --a or --digits");
      }
      const cantor::DigitStream stream = intersect_a.empty()
                                             ? cantor::DigitStream::from_digits(parse_digit_list(intersect_digits))
                                             : cantor::DigitStream::from_rational(parse_rational(intersect_a));
      const std::size_t k = intersect_depth;
      const std::size_t f = cantor::f_count(stream, k);
      const double at_depth = cantor::closed_form_dimension(f, k);
      const auto limit = cantor::limit_branching_frequency(stream);
      const auto sandwich = cantor::check_sandwich(stream, k, globals.execution());

      json doc = io::to_json(cantor::intersection_oracle(stream, k));
      doc["schedule"] = schedule_prefix_json(cantor::digit_schedule(stream), k);
      doc["f"] = f;
      doc["s_hat_at_depth"] = io::sig9(at_depth);
      doc["s_hat"] = io::sig9(limit ? limit->get_d() * cantor::cantor_dimension() : at_depth);
      if (limit) doc["limit_f_over_k"] = to_string(*limit);
      doc["sandwich"] = json{{"oracle_inside_iterate", sandwich.oracle_inside_iterate},
                             {"iterate_inside_body", sandwich.iterate_inside_body},
                             {"holds", sandwich.holds()}};
      json config{{"command", "cantor intersect"}, {"depth", k}};
      if (!intersect_a.empty()) config["a"] = intersect_a;
      if (!intersect_digits.empty()) config["digits"] = intersect_digits;
      doc["config"] = config;
      out << io::dump(doc);
      if (!sandwich.holds()) err << "warning: sandwich inclusions fail at depth " << k << "\n";
    };
  });

  auto* mc_cmd = cantor_cmd->add_subcommand("montecarlo", "Monte Carlo over random translations a");
  cantor::MonteCarloConfig mc;
  std::string mc_csv;
  mc_cmd->add_option("--samples", mc.samples, "Number of random a")->capture_default_str()->check(CLI::PositiveNumber);
  mc_cmd->add_option("--depth", mc.depth, "Digits per sample")->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed, "Base seed; sample i uses seed + i")->capture_default_str();
  mc_cmd->add_option("--csv", mc_csv, "Per-sample CSV output path");
  mc_cmd->callback([&] {
    action = [&] {
      mc.execution = globals.execution();
      const auto summary = cantor::monte_carlo_dimension(mc);
      if (!mc_csv.empty()) {
        std::ostringstream csv;
        io::write_csv(csv, summary);
        write_artifact(mc_csv, csv.str(), out);
      }
      json doc = io::summary_to_json(summary);
      doc["config"] = json{{"command", "cantor montecarlo"},
                           {"samples", mc.samples},
                           {"depth", mc.depth},
                           {"seed", mc.seed},
                           {"csv", mc_csv}};
      out << io::dump(doc);
      err << "mean s_hat " << io::format_sig9(summary.s_hat.mean) << "; almost-sure value ln2/(3 ln3) = "
          << io::format_sig9(cantor::intersection_dimension()) << " differs from the codimension-additivity prediction "
          << "ln4/ln3 - 1 = " << io::format_sig9(cantor::codimension_prediction()) << "\n";
    };
  });

  // hausdorff
  auto* hausdorff = app.add_subcommand("hausdorff", "Exact Hausdorff distance between two interval-set files");
  std::string hausdorff_a, hausdorff_b;
  hausdorff->add_option("--a", hausdorff_a, "First interval-set JSON")->required();
  hausdorff->add_option("--b", hausdorff_b, "Second interval-set JSON")->required();
  hausdorff->callback([&] {
    action = [&] {
      const auto e = io::interval_set_from_json(io::read_json_file(hausdorff_a));
      const auto f = io::interval_set_from_json(io::read_json_file(hausdorff_b));
      out << to_string(hausdorff_distance(e, f)) << "\n";
    };
  });

  // tree check / stop
  auto* tree_cmd = app.add_subcommand("tree", "Index trees over a schedule");
  tree_cmd->require_subcommand(1);
  auto* check_cmd = tree_cmd->add_subcommand("check", "Validate a tree and test the tree-sum bound");
  std::string tree_file, tree_system = "cantor", tree_weights;
  check_cmd->add_option("--file", tree_file, "Tree JSON")->required();
  check_cmd->add_option("--system", tree_system, "System JSON path or 'cantor'")->capture_default_str();
  check_cmd->add_option("--weights", tree_weights, "Comma-separated non-negative weights (default: the ratios)");
  check_cmd->callback([&] {
    action = [&] {
      const auto def = load_system(tree_system);
      const json input = io::read_json_file(tree_file);
      const auto branches = io::branches_from_json(input);
      std::vector<Rational> weights;
      if (!tree_weights.empty()) {
        weights = parse_rational_list(tree_weights);
      } else if (input.contains("weights")) {
        for (const auto& w : input.at("weights")) {
          weights.push_back(w.is_string() ? parse_rational(w.get<std::string>()) : Rational(w.get<long>()));
        }
      } else {
        for (const auto& s : def.system.maps()) weights.push_back(s.ratio);
      }
      json doc{{"valid", validate_tree(branches, def.schedule)}};
      if (doc["valid"].get<bool>()) {
        const auto tree = IndexTree::from_branches(branches, def.schedule);
        const auto bound = check_tree_sum_bound(tree, def.schedule, weights);
        doc["p"] = bound.bounds.shortest;
        doc["q"] = bound.bounds.longest;
        json ws = json::array();
        for (const auto& w : weights) ws.push_back(to_string(w));
        doc["tree_sum_bound"] = json{{"weights", ws},
                                     {"tree_sum", to_string(bound.tree_total)},
                                     {"min_level_sum", to_string(bound.min_level_total)},
                                     {"argmin_level", bound.argmin_level},
                                     {"holds", bound.holds()}};
      }
      doc["config"] = json{{"command", "tree check"}, {"file", tree_file}, {"system", tree_system}, {"weights", tree_weights}};
      out << io::dump(doc);
    };
  });

  auto* stop_cmd = tree_cmd->add_subcommand("stop", "Stopping-rule tree: cut each branch once its ratio product reaches rho");
  std::string stop_system = "cantor", stop_rho;
  stop_cmd->add_option("--system", stop_system, "System JSON path or 'cantor'")->capture_default_str();
  stop_cmd->add_option("--rho", stop_rho, "Scale rho in (0,1), as p/q")->required();
  stop_cmd->callback([&] {
    action = [&] {
      const auto def = load_system(stop_system);
      const auto tree = stopping_tree(def.system, def.schedule, parse_rational(stop_rho));
      json doc = io::to_json(tree);
      const auto bounds = branch_bounds(tree);
      doc["p"] = bounds.shortest;
      doc["q"] = bounds.longest;
      doc["config"] = json{{"command", "tree stop"}, {"system", stop_system}, {"rho", stop_rho}};
      out << io::dump(doc);
    };
  });

  std::vector<const char*> argv{"ssf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return exit_ok;
    }
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }

#ifdef _OPENMP
  if (globals.threads > 0) omp_set_num_threads(globals.threads);
#endif

  try {
    if (action) action();
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
}

}  // namespace ssf::cli
