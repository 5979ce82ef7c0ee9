// cantor-density: measures, traces, classifications and verification suites from the command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cantor/errors.hpp"
#include "cantor/oracle.hpp"
#include "cantor/setspec.hpp"
#include "cantor/verify.hpp"

using namespace cantor;
using nlohmann::json;

namespace {

// A path, or inline JSON when the argument starts with '{' or '"'.
json read_arg(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '"')) {
    try {
      return json::parse(arg);
    } catch (const json::exception& e) {
      throw SpecError(std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  return out;
}

void emit(const json& spec, const std::string& out) {
  load_set(spec);
  if (out.empty() || out == "-") {
    std::cout << spec.dump() << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw SpecError("cannot write \"" + out + "\"");
  f << spec.dump(2) << "\n";
}

json label_object(const std::vector<std::string>& items) {
  json labels = json::object();
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw SpecError("label \"" + item + "\" must look like WORD=p/q");
    auto word = item.substr(0, eq);
    BitWord::parse(word);
    labels[word] = to_string(parse_rational(item.substr(eq + 1)));
  }
  return labels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact density computations on Cantor space"};
  app.require_subcommand(1);

  std::string set_arg, branch_arg, prefix, eps_text = "1/256", out;
  unsigned budget = kDefaultBudget;
  std::size_t steps = 32, max_depth = 120;

  auto* measure = app.add_subcommand("measure", "Certified bounds on mu(A|prefix)");
  measure->add_option("--set", set_arg, "Set spec (file or inline JSON)")->required();
  measure->add_option("--prefix", prefix, "Bit word to localize at");
  measure->add_option("--budget", budget, "Exploration budget");

  auto* tr = app.add_subcommand("trace", "Density trace along a branch, one JSON line per depth");
  tr->add_option("--set", set_arg, "Set spec")->required();
  tr->add_option("--branch", branch_arg, "Branch (file or inline JSON)")->required();
  tr->add_option("--steps", steps, "Number of depths")->required();
  tr->add_option("--budget", budget, "Exploration budget");

  auto* cl = app.add_subcommand("classify", "Converges, blurry or undetermined at a branch");
  cl->add_option("--set", set_arg, "Set spec")->required();
  cl->add_option("--branch", branch_arg, "Branch")->required();
  cl->add_option("--eps", eps_text, "Target width of a converging verdict");
  cl->add_option("--max-depth", max_depth, "Deepest trace point examined");
  cl->add_option("--budget", budget, "Exploration budget");

  auto* build = app.add_subcommand("build", "Write a set spec");
  build->require_subcommand(1);
  build->fallthrough();
  build->add_option("-o,--output", out, "Output file (stdout when omitted)");

  std::string measure_text;
  auto* b_dual = build->add_subcommand("dualistic", "Dualistic set of a given measure");
  b_dual->add_option("--measure", measure_text, "Measure in (0;1)")->required();

  std::string values_text;
  auto* b_count = build->add_subcommand("countable-range", "Solid set with prescribed countable range");
  b_count->add_option("--values", values_text, "Comma-separated values in (0;1)")->required();

  std::string tree_arg = "full", default_label = "1/2", variant = "closed", prune_arg;
  std::vector<std::string> labels;
  auto* b_off = build->add_subcommand("offspring", "Offspring of a tree with explicit labels");
  b_off->add_option("--tree", tree_arg, "Tree file, inline JSON, \"full\" or \"zeros\"");
  b_off->add_option("--label", labels, "WORD=p/q, repeatable (empty WORD for the root)");
  b_off->add_option("--default-label", default_label, "Label of unlabelled nodes");
  b_off->add_option("--variant", variant, "closed or open");
  b_off->add_option("--prune", prune_arg, "Subtree to prune to");

  std::string which, function_arg;
  auto* b_red = build->add_subcommand("reduction", "One of the three tree reductions");
  b_red->add_option("--which", which, "first, second or third")->required();
  b_red->add_option("--function", function_arg, "Function presentation (file or inline JSON)");
  b_red->add_option("--tree", tree_arg, "Tree file, inline JSON, \"full\" or \"zeros\"");
  b_red->add_option("--variant", variant, "closed or open");

  std::string suite;
  std::uint64_t seed = 1;
  std::size_t cases = 0;
  auto* ver = app.add_subcommand("verify", "Run a seeded property suite");
  ver->add_option("suite", suite, "Suite name, or \"all\"")->required();
  ver->add_option("--seed", seed, "Random seed");
  ver->add_option("--cases", cases, "Case count (0 for the suite default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*measure) {
      auto a = load_set(read_arg(set_arg));
      std::cout << interval_json(a->local_bounds(BitWord::parse(prefix), budget)).dump() << "\n";
    } else if (*tr) {
      auto a = load_set(read_arg(set_arg));
      auto z = Branch::from_json(read_arg(branch_arg));
      for (const auto& p : trace(*a, z, steps, budget)) {
        json line{{"n", p.n}, {"lo", to_string(p.bounds.lo)}, {"hi", to_string(p.bounds.hi)}};
        std::cout << line.dump() << "\n";
      }
    } else if (*cl) {
      auto a = load_set(read_arg(set_arg));
      auto z = Branch::from_json(read_arg(branch_arg));
      Rational eps = parse_rational(eps_text);
      if (eps <= 0) throw SpecError("--eps must be positive");
      std::cout << classify(*a, z, eps, max_depth, budget).to_json().dump() << "\n";
    } else if (*build) {
      json tree = tree_arg == "full" || tree_arg == "zeros" ? json(tree_arg) : read_arg(tree_arg);
      if (*b_dual) {
        emit(json{{"kind", "dualistic"}, {"measure", to_string(parse_rational(measure_text))}}, out);
      } else if (*b_count) {
        json values = json::array();
        for (const auto& r : parse_list(values_text)) values.push_back(to_string(r));
        emit(json{{"kind", "countable-range"}, {"values", values}}, out);
      } else if (*b_off) {
        json spec{{"kind", "offspring"},
                  {"tree", tree},
                  {"labels", label_object(labels)},
                  {"default_label", to_string(parse_rational(default_label))},
                  {"variant", variant}};
        if (!prune_arg.empty()) spec["prune"] = prune_arg == "full" || prune_arg == "zeros" ? json(prune_arg) : read_arg(prune_arg);
        emit(spec, out);
      } else if (*b_red) {
        json spec{{"kind", "reduction"}, {"which", which}, {"tree", tree}, {"variant", variant}};
        if (which != "second") {
          if (function_arg.empty()) throw SpecError("--function is required for the " + which + " reduction");
          spec["function"] = read_arg(function_arg);
        }
        emit(spec, out);
      }
    } else if (*ver) {
      std::vector<std::string> names;
      if (suite == "all") {
        for (const auto& s : suites()) names.push_back(s.name);
      } else if (has_suite(suite)) {
        names.push_back(suite);
      } else {
        std::cerr << "error: unknown suite \"" << suite << "\"; available:";
        for (const auto& s : suites()) std::cerr << " " << s.name;
        std::cerr << "\n" << ver->help();
        return 2;
      }
      bool all_ok = true;
      for (const auto& n : names) {
        auto r = run_suite(n, seed, cases);
        all_ok = all_ok && r.ok();
        std::cout << r.to_json().dump() << "\n";
        std::cout << r.name << ": " << r.passed << "/" << r.cases << " pass\n";
      }
      return all_ok ? 0 : 1;
    }
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
