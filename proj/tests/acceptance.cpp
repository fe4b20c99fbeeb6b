// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] may point at the CLI binary (defaults to ./wcasc); it is
// only needed for the exit-code checks of criterion 9.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wcasc/cli.hpp"
#include "wcasc/format.hpp"
#include "wcasc/generate.hpp"
#include "wcasc/verify.hpp"

using namespace wcasc;

namespace {

constexpr double kSlack = 1e-9;

int failures = 0;

void report(int criterion, bool passed, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (passed ? "PASS" : "FAIL") << " — "
            << detail << "\n";
  if (!passed) {
    ++failures;
  }
}

struct PoolEntry {
  Instance instance;
  Rational goal;
  bool is_coverage;
};

Rational min_full_value(const Instance& inst) {
  Rational best = evaluate_ground(inst, inst.all_items(), 0);
  for (int phi = 1; phi < inst.realization_count(); ++phi) {
    best = std::min(best, evaluate_ground(inst, inst.all_items(), phi));
  }
  return best;
}

GeneratorConfig coverage_config(std::uint64_t seed) {
  return GeneratorConfig{.seed = seed,
                         .n_items = 3 + static_cast<int>(seed % 4),
                         .n_realizations = 3 + static_cast<int>(seed % 6),
                         .n_elements = 3 + static_cast<int>(seed % 4),
                         .n_states = 2 + static_cast<int>(seed % 2),
                         .cost_range = {1, 4},
                         .weight_range = {1, 3}};
}

GeneratorConfig identification_config(std::uint64_t seed) {
  return GeneratorConfig{.seed = seed,
                         .n_items = 3 + static_cast<int>(seed % 4),
                         .n_realizations = 2 + static_cast<int>(seed % 7),
                         .n_elements = 2,
                         .n_states = 2 + static_cast<int>(seed % 2),
                         .cost_range = {1, 4},
                         .weight_range = {1, 3}};
}

bool passes_three_checks(const Instance& inst) {
  return check_worst_case_monotone(inst).passed &&
         check_worst_case_submodular(inst).passed &&
         check_minimal_dependency(inst).passed;
}

// Seeded coverage/identification instances that pass the three property
// checks, paired with their natural goals.
std::vector<PoolEntry> build_passing_pool(std::size_t want) {
  std::vector<PoolEntry> pool;
  for (std::uint64_t seed = 1; pool.size() < want && seed <= 20000; ++seed) {
    bool is_coverage = seed % 2 == 0;
    Instance inst = is_coverage ? random_coverage_instance(coverage_config(seed))
                                : identification_instance(identification_config(seed));
    Rational goal = is_coverage ? min_full_value(inst)
                                : Rational(inst.realization_count() - 1);
    if (goal <= 0) {
      continue;
    }
    if (!passes_three_checks(inst)) {
      continue;
    }
    pool.push_back({std::move(inst), std::move(goal), is_coverage});
  }
  return pool;
}

void criterion_1() {
  Instance inst = counterexample_instance(4, 1, 6);
  bool ok = true;
  std::string detail;

  PolicyTree greedy = cover_greedy(inst, 6);
  Rational greedy_cost = worst_case_cost(inst, greedy);
  OracleResult oracle = optimal_cover_cost(inst, 6);
  ok &= greedy_cost == 4;
  ok &= oracle.value == 2;
  ok &= greedy_cost / oracle.value == 2;  // eps_a / (2 eps_b)

  PropertyReport submodular = check_worst_case_submodular(inst);
  ok &= !submodular.passed && submodular.witness.has_value();
  if (submodular.witness) {
    const PropertyWitness& w = *submodular.witness;
    ok &= worst_case_marginal(inst, w.item, w.psi) == w.lhs;
    ok &= worst_case_marginal(inst, w.item, w.psi2) == w.rhs;
    ok &= w.lhs < w.rhs;
  }
  ok &= check_pointwise_submodular(inst).passed;
  ok &= check_worst_case_monotone(inst).passed;
  ok &= check_minimal_dependency(inst).passed;

  RatioReport ratio = cover_ratio_report(inst, 6);
  ok &= ratio.ratio == 2;
  ok &= std::abs(ratio.bound - 1.0) < 1e-12;  // ln(6/6) + 1
  ok &= !ratio.bound_satisfied && !ratio.properties_hold;

  Instance wide = counterexample_instance(100, 1, 6);
  Rational wide_ratio = worst_case_cost(wide, cover_greedy(wide, 6)) /
                        optimal_cover_cost(wide, 6).value;
  ok &= wide_ratio == 50;

  report(1, ok,
         "counterexample exact: greedy cost 4, optimal 2, ratio 2 above bound 1; "
         "pointwise holds while worst-case submodularity fails; ratio 50 at costs "
         "(100,1)");
}

void criterion_2(const std::vector<PoolEntry>& pool) {
  std::size_t coverage = 0;
  std::size_t violations = 0;
  for (const PoolEntry& entry : pool) {
    coverage += entry.is_coverage ? 1 : 0;
    Rational greedy_cost =
        worst_case_cost(entry.instance, cover_greedy(entry.instance, entry.goal));
    Rational oracle_cost = optimal_cover_cost(entry.instance, entry.goal).value;
    Rational eta = compute_eta(entry.instance, entry.goal);
    double bound = std::log(to_double(entry.goal / eta)) + 1.0;
    if (to_double(greedy_cost) > bound * to_double(oracle_cost) * (1.0 + kSlack)) {
      ++violations;
    }
  }
  std::ostringstream detail;
  detail << "logarithmic cover bound on " << pool.size() << " passing instances ("
         << coverage << " coverage, " << pool.size() - coverage
         << " identification), violations: " << violations;
  report(2, pool.size() >= 200 && coverage > 0 && coverage < pool.size() &&
             violations == 0,
         detail.str());
}

void criterion_3(const std::vector<PoolEntry>& pool) {
  std::size_t trajectory_violations = 0;
  std::size_t cost_violations = 0;
  std::size_t levels = 0;
  for (const PoolEntry& entry : pool) {
    const Instance& inst = entry.instance;
    PolicyTree tree = cover_greedy(inst, entry.goal);
    Instance capped = truncate_instance(inst, entry.goal);
    Rational oracle_cost = optimal_cover_cost(inst, entry.goal).value;
    double c_star = to_double(oracle_cost);
    double goal = to_double(entry.goal);

    RealIx worst_phi = worst_case_value(capped, tree).second;
    Trace trace = run_policy(capped, tree, worst_phi);
    long long total = static_cast<long long>(to_double(trace.total_cost));
    long long horizon =
        static_cast<long long>(to_double(worst_case_cost(inst, tree)));
    for (long long l = 1; l <= horizon; ++l) {
      Rational h = l <= total ? truncated_trace_value(trace, l).value
                              : trace.final_value;
      double lower = (1.0 - std::exp(-static_cast<double>(l) / c_star)) * goal;
      ++levels;
      if (to_double(h) < lower * (1.0 - kSlack)) {
        ++trajectory_violations;
      }
    }
    for (const TraceStep& step : trace.steps) {
      if (step.cost > oracle_cost) {
        ++cost_violations;
      }
    }
  }
  std::ostringstream detail;
  detail << "greedy trajectory dominates 1-e^(-L/c*) at " << levels
         << " levels, per-item cost <= c*; violations: "
         << trajectory_violations + cost_violations;
  report(3, trajectory_violations == 0 && cost_violations == 0, detail.str());
}

void criterion_4(const std::vector<PoolEntry>& pool) {
  std::size_t increments = 0;
  std::size_t violations = 0;
  for (const PoolEntry& entry : pool) {
    const Instance& inst = entry.instance;
    PolicyTree tree = cover_greedy(inst, entry.goal);
    Instance capped = truncate_instance(inst, entry.goal);
    for (int phi = 0; phi < inst.realization_count(); ++phi) {
      Trace trace = run_policy(capped, tree, phi);
      if (trace.steps.empty()) {
        continue;
      }
      long long total = static_cast<long long>(to_double(trace.total_cost));
      for (long long l = 2; l <= total; ++l) {
        LevelValue cur = truncated_trace_value(trace, l);
        LevelValue prev = truncated_trace_value(trace, l - 1);
        const TraceStep& step = trace.steps[cur.items_started - 1];
        Rational before = cur.items_started == 1
                              ? Rational(0)
                              : trace.steps[cur.items_started - 2].cumulative_value;
        ++increments;
        if (cur.value - prev.value != (step.cumulative_value - before) / step.cost) {
          ++violations;
        }
      }
    }
  }

  // Worked cost sequence (2, 2, 3): level 3 starts item 2, level 5 item 3.
  Trace worked;
  worked.realization = 0;
  Rational cum[3] = {4, 6, 9};
  int costs[3] = {2, 2, 3};
  for (int i = 0; i < 3; ++i) {
    worked.steps.push_back({i, 0, cum[i], Rational(costs[i])});
    worked.total_cost += costs[i];
    worked.final_value = cum[i];
  }
  bool worked_ok = truncated_trace_value(worked, 3).items_started == 2 &&
                   truncated_trace_value(worked, 5).items_started == 3 &&
                   truncated_trace_value(worked, 5).value == 7;

  std::ostringstream detail;
  detail << "level-value increments exact at " << increments
         << " slots plus the (2,2,3) example; violations: " << violations
         << (worked_ok ? "" : " (worked example failed)");
  report(4, violations == 0 && worked_ok, detail.str());
}

void criterion_5(const std::vector<PoolEntry>& pool) {
  std::size_t checked = 0;
  std::size_t violations = 0;
  const double ratio_combined = (1.0 - std::exp(-1.0)) / 2.0;
  const double ratio_relaxed = 1.0 - std::exp(-1.0);
  for (const PoolEntry& entry : pool) {
    const Instance& inst = entry.instance;
    Rational budget(numerator(inst.total_cost()) / 2);  // half, floored (integer costs)
    if (budget < inst.min_item_cost()) {
      continue;
    }
    MaximizeResult max = combined_max_policy(inst, budget);
    Rational opt = optimal_budgeted_value(inst, budget).value;
    double opt_d = to_double(opt);
    ++checked;
    if (to_double(max.combined_value) < ratio_combined * opt_d * (1.0 - kSlack)) {
      ++violations;
    }
    if (to_double(max.relaxed_value) < ratio_relaxed * opt_d * (1.0 - kSlack)) {
      ++violations;
    }

    // Exact singleton inequality with the extra item of the relaxed policy on
    // the plain greedy's worst-case branch.
    RealIx phi = worst_case_value(max.pruned, max.greedy_tree).second;
    Trace greedy_trace = run_policy(max.pruned, max.greedy_tree, phi);
    Trace relaxed_trace = run_policy(max.pruned, max.relaxed_tree, phi);
    Rational extra_marginal = 0;
    for (const TraceStep& step : relaxed_trace.steps) {
      bool shared = false;
      for (const TraceStep& gstep : greedy_trace.steps) {
        shared |= gstep.item == step.item;
      }
      if (!shared) {
        extra_marginal = worst_case_marginal(max.pruned, step.item, {});
        break;
      }
    }
    if (max.greedy_value + extra_marginal < max.relaxed_value) {
      ++violations;
    }
  }
  std::ostringstream detail;
  detail << "budgeted bounds (1-1/e)/2 and 1-1/e plus the exact singleton "
            "inequality on "
         << checked << " instances; violations: " << violations;
  report(5, checked >= 200 && violations == 0, detail.str());
}

void criterion_6() {
  std::size_t grid_checked = 0;
  std::size_t violations = 0;
  for (int c1 = 0; c1 <= 6; ++c1) {
    for (int c2 = 0; c2 <= 6; ++c2) {
      for (int c3 = 0; c3 <= 6; ++c3) {
        for (int c4 = 0; c4 <= 6; ++c4) {
          if (c1 < c2 || c3 < c4 || c1 - c2 < c3 - c4 || c2 > c4) {
            continue;
          }
          for (int x = 0; x <= 6; ++x) {
            ++grid_checked;
            if (!min_clamp_inequality(c1, c2, c3, c4, x)) {
              ++violations;
            }
          }
        }
      }
    }
  }

  SplitMix64 rng(20260811);
  auto small = [&rng] { return Rational(rng.in_range(0, 96), rng.in_range(1, 8)); };
  std::size_t random_checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Rational c2 = small();
    Rational c4 = c2 + small();
    Rational c3 = c4 + small();
    Rational c1 = c2 + (c3 - c4) + small();
    Rational x(rng.in_range(-40, 160), rng.in_range(1, 8));
    ++random_checked;
    if (!min_clamp_inequality(c1, c2, c3, c4, x)) {
      ++violations;
    }
  }
  std::ostringstream detail;
  detail << "min-clamp inequality on " << grid_checked
         << " grid tuples and " << random_checked
         << " random rational tuples; violations: " << violations;
  report(6, violations == 0 && random_checked == 10000, detail.str());
}

void criterion_7(const std::vector<PoolEntry>& pool) {
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (const PoolEntry& entry : pool) {
    for (const Rational& cap :
         {Rational(entry.goal / 4), Rational(entry.goal / 2), entry.goal}) {
      Instance capped = truncate_instance(entry.instance, cap);
      ++checked;
      if (!passes_three_checks(capped)) {
        ++violations;
      }
    }
  }
  std::ostringstream detail;
  detail << "truncation closure at quarter/half/full goal on " << checked
         << " truncated instances; violations: " << violations;
  report(7, violations == 0, detail.str());
}

void criterion_8() {
  std::size_t instances = 0;
  std::size_t violations = 0;
  for (std::uint64_t seed = 30001; instances < 50 && seed <= 30400; ++seed) {
    Instance inst = [&] {
      switch (seed % 3) {
        case 0:
          return random_coverage_instance(coverage_config(seed));
        case 1:
          return random_modular_instance(coverage_config(seed));
        default:
          return identification_instance(identification_config(seed));
      }
    }();
    Rational max_goal = min_full_value(inst);
    if (max_goal <= 0) {
      continue;
    }
    ++instances;

    Rational previous_cost = 0;
    for (int quarter = 1; quarter <= 4; ++quarter) {
      Rational goal = max_goal * quarter / 4;
      Rational oracle_cost = optimal_cover_cost(inst, goal).value;
      if (oracle_cost < previous_cost) {
        ++violations;  // c*(Q) must be nondecreasing in Q
      }
      previous_cost = oracle_cost;
      Rational greedy_cost = worst_case_cost(inst, cover_greedy(inst, goal));
      if (oracle_cost > greedy_cost) {
        ++violations;  // the greedy can never beat the oracle
      }
    }

    Rational total = inst.total_cost();
    Rational previous_value = 0;
    for (int quarter = 1; quarter <= 4; ++quarter) {
      Rational budget = total * quarter / 4;
      Rational opt = optimal_budgeted_value(inst, budget).value;
      if (opt < previous_value) {
        ++violations;  // OPT(B) must be nondecreasing in B
      }
      previous_value = opt;
      if (budget >= inst.min_item_cost()) {
        if (combined_max_policy(inst, budget).combined_value > opt) {
          ++violations;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << "oracle monotonicity and greedy-below-oracle on " << instances
         << " instances; violations: " << violations;
  report(8, instances == 50 && violations == 0, detail.str());
}

int run_command(const std::string& cli, const std::string& args) {
  std::string command = cli + " " + args + " >/dev/null 2>&1";
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

void criterion_9(const std::string& cli) {
  std::size_t round_trips = 0;
  std::size_t violations = 0;
  std::vector<Instance> fixtures = {
      counterexample_instance(4, 1, 6),
      counterexample_instance(100, 1, 6),
      counterexample_instance(2, 1, 6),
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    fixtures.push_back(random_coverage_instance(coverage_config(seed)));
    fixtures.push_back(identification_instance(identification_config(seed)));
    fixtures.push_back(random_modular_instance(coverage_config(seed + 50)));
  }
  for (const Instance& inst : fixtures) {
    std::string text = serialize_instance(inst);
    Instance reparsed = parse_instance(text);
    ++round_trips;
    if (!(reparsed == inst) || serialize_instance(reparsed) != text) {
      ++violations;
    }
  }

  const char* ce4_path = "acceptance_ce4.wcasc";
  {
    std::ofstream file(ce4_path);
    file << serialize_instance(counterexample_instance(4, 1, 6));
  }
  const char* nine_path = "acceptance_nine.wcasc";
  {
    std::ofstream file(nine_path);
    file << serialize_instance(random_modular_instance(
        GeneratorConfig{.seed = 1, .n_items = 9, .n_realizations = 2}));
  }

  struct ExitCase {
    std::string args;
    int expected;
  };
  const std::vector<ExitCase> cases = {
      {std::string("check ") + ce4_path, 1},
      {std::string("report ") + ce4_path + " --goal 6", 1},
      {"cover acceptance_missing.wcasc --goal 6", 2},
      {std::string("cover ") + ce4_path + " --goal 6", 0},
      {std::string("maximize ") + ce4_path + " --budget 2", 0},
      {std::string("oracle-cover ") + ce4_path + " --goal 6", 0},
      {std::string("cover ") + ce4_path + " --goal 13", 3},
      {std::string("oracle-cover ") + nine_path + " --goal 1", 4},
      {"gen counterexample", 0},
  };
  std::size_t exit_checks = 0;
  for (const ExitCase& c : cases) {
    ++exit_checks;
    int got = run_command(cli, c.args);
    if (got != c.expected) {
      ++violations;
      std::cout << "  exit mismatch: wcasc " << c.args << " -> " << got
                << " (expected " << c.expected << ")\n";
    }
  }
  std::remove(ce4_path);
  std::remove(nine_path);

  std::ostringstream detail;
  detail << "byte-exact round trips on " << round_trips << " fixtures and "
         << exit_checks << " CLI exit codes; violations: " << violations;
  report(9, violations == 0, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "./wcasc";

  criterion_1();
  std::vector<PoolEntry> pool = build_passing_pool(200);
  criterion_2(pool);
  criterion_3(pool);
  criterion_4(pool);
  criterion_5(pool);
  criterion_6();
  criterion_7(pool);
  criterion_8();
  criterion_9(cli);

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " acceptance criteria failed\n";
  return 1;
}
