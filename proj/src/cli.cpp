#include "wcasc/cli.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "wcasc/format.hpp"
#include "wcasc/generate.hpp"
#include "wcasc/verify.hpp"

namespace wcasc {

namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(12) << std::showpoint << value;
  return out.str();
}

std::string bool_name(bool value) { return value ? "true" : "false"; }

struct Options {
  std::string command;
  std::vector<std::string> positional;
  std::map<std::string, std::string> flags;

  bool has(const std::string& name) const { return flags.count(name) > 0; }

  const std::string& get(const std::string& name) const {
    auto it = flags.find(name);
    if (it == flags.end()) {
      throw InputError("missing required flag --" + name);
    }
    return it->second;
  }

  Rational get_rational(const std::string& name) const {
    auto value = try_parse_rational(get(name));
    if (!value) {
      throw InputError("flag --" + name + " needs a rational value");
    }
    return *value;
  }

  long long get_int(const std::string& name, long long fallback) const {
    auto it = flags.find(name);
    if (it == flags.end()) {
      return fallback;
    }
    try {
      return std::stoll(it->second);
    } catch (const std::exception&) {
      throw InputError("flag --" + name + " needs an integer value");
    }
  }
};

Options parse_options(const std::vector<std::string>& args) {
  Options options;
  if (args.empty()) {
    throw InputError("missing subcommand");
  }
  options.command = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg == "-o" || arg.rfind("--", 0) == 0) {
      std::string name = arg == "-o" ? "out" : arg.substr(2);
      if (i + 1 >= args.size()) {
        throw InputError("flag " + arg + " needs a value");
      }
      if (!options.flags.emplace(name, args[++i]).second) {
        throw InputError("flag " + arg + " given twice");
      }
    } else {
      options.positional.push_back(arg);
    }
  }
  return options;
}

Instance load_instance(const Options& options) {
  if (options.positional.size() != 1) {
    throw InputError("expected exactly one instance file argument");
  }
  std::ifstream file(options.positional[0]);
  if (!file) {
    throw InputError("cannot open " + options.positional[0]);
  }
  std::ostringstream text;
  text << file.rdbuf();
  return parse_instance(text.str());
}

bool use_csv(const Options& options) {
  if (!options.has("format")) {
    return false;
  }
  const std::string& format = options.get("format");
  if (format != "text" && format != "csv") {
    throw InputError("--format must be text or csv");
  }
  return format == "csv";
}

void emit_csv(const RunReport& report, std::ostream& out) {
  out << "key,value\n";
  for (const auto& [key, value] : report.rows) {
    out << key << "," << value << "\n";
  }
}

void digest_rows(const Instance& instance, Rows& rows) {
  rows.emplace_back("items", std::to_string(instance.item_count()));
  rows.emplace_back("realizations", std::to_string(instance.realization_count()));
}

void witness_rows(const Instance& instance, const std::string& prefix,
                  const PropertyReport& report, Rows& rows) {
  rows.emplace_back(prefix + ".passed", bool_name(report.passed));
  rows.emplace_back(prefix + ".checked", std::to_string(report.checked_count));
  if (report.witness) {
    const PropertyWitness& w = *report.witness;
    rows.emplace_back(prefix + ".witness.psi", render_observations(instance, w.psi));
    rows.emplace_back(prefix + ".witness.psi2", render_observations(instance, w.psi2));
    if (w.item >= 0) {
      rows.emplace_back(prefix + ".witness.item", instance.item(w.item).id);
    }
    if (w.realization >= 0) {
      rows.emplace_back(prefix + ".witness.realization",
                        instance.realization(w.realization).id);
    }
    rows.emplace_back(prefix + ".witness.lhs", to_string(w.lhs));
    rows.emplace_back(prefix + ".witness.rhs", to_string(w.rhs));
  }
}

void witness_text(const Instance& instance, const PropertyReport& report,
                  std::ostream& out) {
  out << property_name(report.property) << ": " << (report.passed ? "PASS" : "FAIL")
      << " (checked " << report.checked_count << ")\n";
  if (report.witness) {
    const PropertyWitness& w = *report.witness;
    out << "  witness: psi=" << render_observations(instance, w.psi)
        << " psi2=" << render_observations(instance, w.psi2);
    if (w.item >= 0) {
      out << " item=" << instance.item(w.item).id;
    }
    if (w.realization >= 0) {
      out << " realization=" << instance.realization(w.realization).id;
    }
    out << " lhs=" << to_string(w.lhs) << " rhs=" << to_string(w.rhs) << "\n";
  }
}

int cmd_check(const Options& options, std::ostream& out) {
  Instance instance = load_instance(options);
  std::vector<PropertyReport> reports = {
      check_worst_case_monotone(instance),
      check_worst_case_submodular(instance),
      check_minimal_dependency(instance),
      check_pointwise_submodular(instance),
  };
  bool all_passed = true;
  for (const PropertyReport& report : reports) {
    all_passed &= report.passed;
  }
  if (use_csv(options)) {
    RunReport report{.exit_status = all_passed ? 0 : 1};
    report.rows.emplace_back("command", "check");
    digest_rows(instance, report.rows);
    const char* prefixes[] = {"monotone", "submodular", "minimal_dependency",
                              "pointwise"};
    for (std::size_t i = 0; i < reports.size(); ++i) {
      witness_rows(instance, prefixes[i], reports[i], report.rows);
    }
    emit_csv(report, out);
  } else {
    out << "instance: " << instance.item_count() << " items, "
        << instance.realization_count() << " realizations\n";
    for (const PropertyReport& report : reports) {
      witness_text(instance, report, out);
    }
  }
  return all_passed ? 0 : 1;
}

int cmd_cover(const Options& options, std::ostream& out, bool oracle) {
  Instance instance = load_instance(options);
  Rational goal = options.get_rational("goal");
  PolicyTree tree;
  Rational cost;
  if (oracle) {
    OracleResult result = optimal_cover_cost(instance, goal);
    tree = std::move(result.tree);
    cost = result.value;
  } else {
    tree = cover_greedy(instance, goal);
    cost = worst_case_cost(instance, tree);
  }
  Rational value = worst_case_value(instance, tree).first;
  if (use_csv(options)) {
    RunReport report;
    report.rows.emplace_back("command", oracle ? "oracle-cover" : "cover");
    digest_rows(instance, report.rows);
    report.rows.emplace_back("goal", to_string(goal));
    report.rows.emplace_back("worst_case_cost", to_string(cost));
    report.rows.emplace_back("worst_case_value", to_string(value));
    report.rows.emplace_back("tree", render_tree(instance, tree));
    emit_csv(report, out);
  } else {
    out << "instance: " << instance.item_count() << " items, "
        << instance.realization_count() << " realizations\n";
    out << "goal: " << to_string(goal) << "\n";
    out << "policy:\n" << render_tree_indented(instance, tree);
    out << "worst-case cost: " << to_string(cost) << "\n";
    out << "worst-case value: " << to_string(value) << "\n";
  }
  return 0;
}

int cmd_maximize(const Options& options, std::ostream& out) {
  Instance instance = load_instance(options);
  Rational budget = options.get_rational("budget");
  MaximizeResult result = combined_max_policy(instance, budget);
  if (use_csv(options)) {
    RunReport report;
    report.rows.emplace_back("command", "maximize");
    digest_rows(instance, report.rows);
    report.rows.emplace_back("budget", to_string(budget));
    std::string pruned;
    for (const std::string& id : result.pruned_ids) {
      pruned += (pruned.empty() ? "" : " ") + id;
    }
    report.rows.emplace_back("pruned", pruned);
    report.rows.emplace_back("greedy_value", to_string(result.greedy_value));
    report.rows.emplace_back("relaxed_value", to_string(result.relaxed_value));
    report.rows.emplace_back("singleton", result.singleton_id);
    report.rows.emplace_back("singleton_marginal", to_string(result.singleton_value));
    report.rows.emplace_back("combined_value", to_string(result.combined_value));
    report.rows.emplace_back("greedy_tree",
                             render_tree(result.pruned, result.greedy_tree));
    report.rows.emplace_back("relaxed_tree",
                             render_tree(result.pruned, result.relaxed_tree));
    emit_csv(report, out);
  } else {
    out << "instance: " << instance.item_count() << " items, "
        << instance.realization_count() << " realizations\n";
    out << "budget: " << to_string(budget) << "\n";
    out << "pruned (cost above budget):";
    for (const std::string& id : result.pruned_ids) {
      out << " " << id;
    }
    out << "\n";
    out << "greedy value: " << to_string(result.greedy_value) << "\n";
    out << "relaxed value: " << to_string(result.relaxed_value) << "\n";
    out << "best singleton: " << result.singleton_id << " (marginal "
        << to_string(result.singleton_value) << ")\n";
    out << "combined value: " << to_string(result.combined_value) << "\n";
    out << "greedy policy:\n"
        << render_tree_indented(result.pruned, result.greedy_tree);
  }
  return 0;
}

int cmd_oracle_max(const Options& options, std::ostream& out) {
  Instance instance = load_instance(options);
  Rational budget = options.get_rational("budget");
  OracleResult result = optimal_budgeted_value(instance, budget);
  if (use_csv(options)) {
    RunReport report;
    report.rows.emplace_back("command", "oracle-max");
    digest_rows(instance, report.rows);
    report.rows.emplace_back("budget", to_string(budget));
    report.rows.emplace_back("optimal_value", to_string(result.value));
    report.rows.emplace_back("tree", render_tree(instance, result.tree));
    emit_csv(report, out);
  } else {
    out << "instance: " << instance.item_count() << " items, "
        << instance.realization_count() << " realizations\n";
    out << "budget: " << to_string(budget) << "\n";
    out << "optimal worst-case value: " << to_string(result.value) << "\n";
    out << "policy:\n" << render_tree_indented(instance, result.tree);
  }
  return 0;
}

int cmd_report(const Options& options, std::ostream& out) {
  Instance instance = load_instance(options);
  Rational goal = options.get_rational("goal");
  RatioReport cover = cover_ratio_report(instance, goal);
  std::optional<RatioReport> max;
  if (options.has("budget")) {
    max = max_ratio_report(instance, options.get_rational("budget"));
  }

  bool ok = cover.properties_hold && cover.bound_satisfied;
  if (max) {
    ok = ok && max->bound_satisfied && max->relaxed_bound_satisfied &&
         max->singleton_inequality_holds;
  }

  if (use_csv(options)) {
    RunReport run{.exit_status = ok ? 0 : 1};
    Rows& rows = run.rows;
    rows.emplace_back("command", "report");
    digest_rows(instance, rows);
    witness_rows(instance, "monotone", cover.monotone, rows);
    witness_rows(instance, "submodular", cover.submodular, rows);
    witness_rows(instance, "minimal_dependency", cover.minimal_dependency, rows);
    rows.emplace_back("properties_hold", bool_name(cover.properties_hold));
    rows.emplace_back("cover.goal", to_string(goal));
    rows.emplace_back("cover.greedy_cost", to_string(cover.greedy_metric));
    rows.emplace_back("cover.oracle_cost", to_string(cover.oracle_metric));
    rows.emplace_back("cover.ratio", to_string(cover.ratio));
    rows.emplace_back("cover.eta", to_string(cover.eta));
    rows.emplace_back("cover.bound", format_double(cover.bound));
    rows.emplace_back("cover.bound_satisfied", bool_name(cover.bound_satisfied));
    if (max) {
      rows.emplace_back("max.budget", options.get("budget"));
      rows.emplace_back("max.combined", to_string(max->greedy_metric));
      rows.emplace_back("max.optimal", to_string(max->oracle_metric));
      rows.emplace_back("max.bound", format_double(max->bound));
      rows.emplace_back("max.bound_satisfied", bool_name(max->bound_satisfied));
      rows.emplace_back("max.relaxed", to_string(max->relaxed_value));
      rows.emplace_back("max.relaxed_bound", format_double(max->relaxed_bound));
      rows.emplace_back("max.relaxed_bound_satisfied",
                        bool_name(max->relaxed_bound_satisfied));
      rows.emplace_back("max.singleton", max->best_singleton_id);
      rows.emplace_back("max.singleton_marginal",
                        to_string(max->best_singleton_value));
      rows.emplace_back("max.extra_item", max->extra_item_id);
      rows.emplace_back("max.singleton_inequality",
                        bool_name(max->singleton_inequality_holds));
    }
    emit_csv(run, out);
  } else {
    out << "instance: " << instance.item_count() << " items, "
        << instance.realization_count() << " realizations\n";
    out << "properties: worst-case-monotone "
        << (cover.monotone.passed ? "PASS" : "FAIL") << ", worst-case-submodular "
        << (cover.submodular.passed ? "PASS" : "FAIL") << ", minimal-dependency "
        << (cover.minimal_dependency.passed ? "PASS" : "FAIL") << "\n";
    out << "cover goal " << to_string(goal) << ": greedy cost "
        << to_string(cover.greedy_metric) << ", optimal cost "
        << to_string(cover.oracle_metric) << ", ratio " << to_string(cover.ratio)
        << ", eta " << to_string(cover.eta) << ", bound "
        << format_double(cover.bound) << "\n";
    if (!cover.properties_hold) {
      out << "cover bound not applicable (property violation); greedy/optimal "
             "ratio reported as-is\n";
    } else {
      out << "cover bound " << (cover.bound_satisfied ? "satisfied" : "VIOLATED")
          << "\n";
    }
    if (max) {
      out << "maximize budget " << options.get("budget") << ": combined "
          << to_string(max->greedy_metric) << ", optimal "
          << to_string(max->oracle_metric) << ", bound "
          << format_double(max->bound) << " "
          << (max->bound_satisfied ? "satisfied" : "VIOLATED") << "\n";
      out << "relaxed " << to_string(max->relaxed_value) << ", bound "
          << format_double(max->relaxed_bound) << " "
          << (max->relaxed_bound_satisfied ? "satisfied" : "VIOLATED") << "\n";
      out << "singleton inequality "
          << (max->singleton_inequality_holds ? "holds" : "VIOLATED") << "\n";
    }
  }
  return ok ? 0 : 1;
}

int cmd_gen(const Options& options, std::ostream& out) {
  if (options.positional.size() != 1) {
    throw InputError("expected: gen <counterexample|coverage|identification|modular>");
  }
  const std::string& kind = options.positional[0];
  Instance instance = [&] {
    if (kind == "counterexample") {
      Rational eps_a = options.has("eps-a") ? options.get_rational("eps-a") : Rational(4);
      Rational eps_b = options.has("eps-b") ? options.get_rational("eps-b") : Rational(1);
      Rational goal = options.has("goal") ? options.get_rational("goal") : Rational(6);
      return counterexample_instance(eps_a, eps_b, goal);
    }
    GeneratorConfig config;
    config.seed = static_cast<std::uint64_t>(options.get_int("seed", 1));
    config.n_items = static_cast<int>(options.get_int("items", config.n_items));
    config.n_realizations =
        static_cast<int>(options.get_int("realizations", config.n_realizations));
    config.n_elements = static_cast<int>(options.get_int("elements", config.n_elements));
    config.n_states = static_cast<int>(options.get_int("states", config.n_states));
    config.cost_range = {options.get_int("cost-min", config.cost_range.first),
                         options.get_int("cost-max", config.cost_range.second)};
    config.weight_range = {options.get_int("weight-min", config.weight_range.first),
                           options.get_int("weight-max", config.weight_range.second)};
    if (kind == "coverage") {
      return random_coverage_instance(config);
    }
    if (kind == "identification") {
      return identification_instance(config);
    }
    if (kind == "modular") {
      return random_modular_instance(config);
    }
    throw InputError("unknown generator kind " + kind);
  }();

  std::string text = serialize_instance(instance);
  if (options.has("out")) {
    std::ofstream file(options.get("out"));
    if (!file) {
      throw InputError("cannot write " + options.get("out"));
    }
    file << text;
  } else {
    out << text;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    Options options = parse_options(args);
    if (options.command == "check") {
      return cmd_check(options, out);
    }
    if (options.command == "cover") {
      return cmd_cover(options, out, false);
    }
    if (options.command == "oracle-cover") {
      return cmd_cover(options, out, true);
    }
    if (options.command == "maximize") {
      return cmd_maximize(options, out);
    }
    if (options.command == "oracle-max") {
      return cmd_oracle_max(options, out);
    }
    if (options.command == "report") {
      return cmd_report(options, out);
    }
    if (options.command == "gen") {
      return cmd_gen(options, out);
    }
    throw InputError("unknown subcommand " + options.command);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const TooLarge& e) {
    err << "too large: " << e.what() << "\n";
    return 4;
  } catch (const MinimalDependencyRequired& e) {
    err << "not applicable: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wcasc
