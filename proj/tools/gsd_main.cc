#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsd/bench.h"
#include "gsd/bounds.h"
#include "gsd/design_search.h"
#include "gsd/error.h"
#include "gsd/oracle.h"
#include "gsd/pddl.h"

namespace {

using namespace gsd;

enum Exit { kOk = 0, kUnsolvable = 2, kExhausted = 3, kInputError = 4 };

constexpr const char* kPlannerEnv = "GSD_EXTERNAL_PLANNER";

struct ModelArgs {
  std::vector<std::string> files;
  std::string full_state_goal;

  void add_to(CLI::App* app) {
    app->add_option("files", files,
                    "ROBOT_DOMAIN ROBOT_PROBLEM [HUMAN_DOMAIN] HUMAN_PROBLEM; with three files "
                    "the human shares the robot domain")
        ->required()
        ->expected(3, 4);
    app->add_option("--full-state-goal", full_state_goal,
                    "file with ground atoms that replace the goal of both problems");
  }

  std::pair<GroundedModel, GroundedModel> load(const std::vector<std::string>& assume_possible = {}) const {
    const std::string& rd = files[0];
    const std::string& rp = files[1];
    const std::string& hd = files.size() == 4 ? files[2] : files[0];
    const std::string& hp = files.back();
    const auto robot_domain = pddl::parse_domain(pddl::read_file(rd));
    const auto human_domain = pddl::parse_domain(pddl::read_file(hd));
    auto robot_problem = pddl::parse_problem(pddl::read_file(rp));
    auto human_problem = pddl::parse_problem(pddl::read_file(hp));
    if (!full_state_goal.empty()) {
      const auto goal = read_goal_atoms(full_state_goal);
      robot_problem.goal = goal;
      human_problem.goal = goal;
    }
    pddl::GroundOptions opts;
    opts.assume_possible = assume_possible;
    GroundedModel robot = pddl::ground(robot_domain, robot_problem, opts);
    GroundedModel human = pddl::ground(human_domain, human_problem, opts);
    require_same_fluents(robot, human);
    return {std::move(robot), std::move(human)};
  }

  static std::vector<pddl::Literal> read_goal_atoms(const std::string& path) {
    // Reuse the problem parser on a wrapper so the atom syntax is identical.
    const std::string text = "(define (problem g) (:domain d) (:goal (and " +
                             pddl::read_file(path) + ")))";
    return pddl::parse_problem(text).goal;
  }
};

SearchOptions search_options(double time_limit) {
  SearchOptions o;
  o.budget.seconds = time_limit;
  return o;
}

void print_report(const CompiledModel& cm, const BoundsReport& r, const char* label) {
  std::cout << label << " human plan: " << format_plan(cm.human, r.human_plan) << '\n';
  std::cout << label << " robot plan: " << format_plan(cm.robot, r.robot_plan) << '\n';
  std::cout << label << " disagree: {";
  for (std::size_t i = 0; i < r.disagree.size(); ++i)
    std::cout << (i ? " " : "") << cm.robot.fluents[static_cast<std::size_t>(r.disagree[i])];
  std::cout << "}\n";
}

int exit_for(BoundStatus s) {
  switch (s) {
    case BoundStatus::kOk: return kOk;
    case BoundStatus::kNoValidPlan: return kUnsolvable;
    case BoundStatus::kResourceExhausted: return kExhausted;
  }
  return kExhausted;
}

int run_bounds(const ModelArgs& args, const std::string& restriction, bool flattened,
               bool external, bool witnesses, double time_limit) {
  const auto [robot, human] = args.load();
  const bool optimal = restriction == "optimal";
  const Ordering ordering = flattened ? Ordering::kFlattened : Ordering::kOrdered;
  if (external) {
    const char* cmd = std::getenv(kPlannerEnv);
    if (!cmd || !*cmd) throw Error(std::string(kPlannerEnv) + " is not set");
    std::int64_t values[2] = {0, 0};
    const BoundMode modes[2] = {optimal ? BoundMode::kGdDownOpt : BoundMode::kGdDown,
                                optimal ? BoundMode::kGdUpOpt : BoundMode::kGdUp};
    for (int i = 0; i < 2; ++i) {
      const auto cm = build_joint_model(robot, human, CostScheme::of(modes[i]), ordering);
      const auto text = pddl::emit_pddl(cm.model);
      const auto work = std::filesystem::temp_directory_path() / ("gsd-" + std::to_string(i));
      const auto plan_text = run_external_planner(cmd, text.domain, text.problem, work.string());
      if (!plan_text) {
        std::cout << "external planner produced no plan\n";
        return kExhausted;
      }
      const auto parts = decompose_plan(cm, parse_named_plan(cm, *plan_text));
      values[i] = static_cast<std::int64_t>(parts.disagree.size());
    }
    std::cout << "GD_down=" << values[0] << " GD_up=" << values[1]
              << " (external planner, not certified optimal)\n";
    return kOk;
  }
  const auto pair = compute_bounds_pair(robot, human, optimal, ordering, search_options(time_limit));
  if (pair.status != BoundStatus::kOk) {
    std::cout << (pair.status == BoundStatus::kNoValidPlan ? "no valid human/robot plan"
                                                           : "resource limit reached")
              << '\n';
    return exit_for(pair.status);
  }
  std::cout << "GD_down=" << pair.lower << " GD_up=" << pair.upper << '\n';
  if (witnesses) {
    const auto cm = build_joint_model(robot, human, CostScheme::of(BoundMode::kGdDown), ordering);
    print_report(cm, *pair.lower_report, "GD_down");
    print_report(cm, *pair.upper_report, "GD_up");
  }
  return kOk;
}

std::vector<std::string> assumed_adds(const std::vector<UniverseEntry>& universe) {
  std::vector<std::string> out;
  for (const auto& e : universe)
    if (e.polarity == Polarity::kAdd) out.push_back(e.fluent);
  return out;
}

DesignProblem load_design_problem(const ModelArgs& args, const std::string& universe_file, int k,
                                  int l) {
  const auto entries = load_universe(universe_file);
  auto [robot, human] = args.load(assumed_adds(entries));
  DesignProblem dp;
  dp.universe = resolve_universe(robot, entries);
  dp.robot = std::move(robot);
  dp.human = std::move(human);
  dp.upper_threshold = k;
  dp.lower_threshold = l;
  for (const auto& w : dp.check()) std::cerr << "warning: " << w << '\n';
  return dp;
}

int run_design(const ModelArgs& args, const std::string& universe_file, int k, int l,
               const std::string& method, double time_limit, bool verbose) {
  const DesignProblem dp = load_design_problem(args, universe_file, k, l);
  DesignSearchConfig cfg;
  cfg.method = parse_design_method(method);
  cfg.time_limit = time_limit;
  cfg.search = search_options(time_limit);
  const auto r = design_search(dp, cfg);
  if (verbose) {
    for (const auto& e : r.log)
      std::cout << "  [size " << e.tau << "] " << e.design.to_string(dp.robot) << ": " << e.event << '\n';
  }
  switch (r.status) {
    case DesignStatus::kFound:
      std::cout << "design: " << r.design->to_string(dp.robot) << " (size " << r.design->size() << ")\n";
      return kOk;
    case DesignStatus::kNoDesign:
      std::cout << "no design within the thresholds\n";
      return kUnsolvable;
    case DesignStatus::kUnknown:
      std::cout << "unknown: " << r.reason << '\n';
      return kExhausted;
  }
  return kExhausted;
}

BoundMode parse_mode(const std::string& mode) {
  if (mode == "gdup") return BoundMode::kGdUp;
  if (mode == "gddown") return BoundMode::kGdDown;
  if (mode == "gdup-opt") return BoundMode::kGdUpOpt;
  if (mode == "gddown-opt") return BoundMode::kGdDownOpt;
  throw Error("unknown mode " + mode);
}

int run_compile(const ModelArgs& args, const std::string& mode, const std::string& out_dir,
                bool flattened, bool forced, const std::string& universe_file, int steps, int l) {
  const Ordering ordering = flattened ? Ordering::kFlattened : Ordering::kOrdered;
  CompiledModel cm;
  if (mode == "design") {
    if (universe_file.empty()) throw Error("--mode design needs --universe");
    const DesignProblem dp = load_design_problem(args, universe_file, l, l);
    cm = build_design_model(dp, steps, {}, l, ordering);
  } else {
    const auto [robot, human] = args.load();
    cm = build_joint_model(robot, human, CostScheme::of(parse_mode(mode)), ordering);
    if (forced) cm = build_forced_disagreement(cm);
  }
  const auto text = pddl::emit_pddl(cm.model);
  std::filesystem::create_directories(out_dir);
  const auto domain = std::filesystem::path(out_dir) / "domain.pddl";
  const auto problem = std::filesystem::path(out_dir) / "problem.pddl";
  std::ofstream(domain) << text.domain;
  std::ofstream(problem) << text.problem;
  std::cout << "wrote " << domain.string() << " and " << problem.string() << " ("
            << cm.model.num_fluents() << " fluents, " << cm.model.num_actions() << " actions)\n";
  return kOk;
}

int run_oracle(const ModelArgs& args, const std::string& restriction, const std::string& universe_file,
               int k, int l) {
  if (!universe_file.empty()) {
    const DesignProblem dp = load_design_problem(args, universe_file, k, l);
    const auto r = oracle_design(dp, k, l);
    if (!r.min_size) {
      std::cout << "no design within the thresholds\n";
      return kUnsolvable;
    }
    std::cout << "minimum design size " << *r.min_size << '\n';
    for (const auto& d : r.designs) std::cout << "design: " << d.to_string(dp.robot) << '\n';
    return kOk;
  }
  const auto [robot, human] = args.load();
  const auto res = restriction == "optimal" ? Restriction::kOptimalPlans : Restriction::kAllPlans;
  if (goal_end_states(robot, res).empty() || goal_end_states(human, res).empty()) {
    std::cout << "no valid human/robot plan\n";
    return kUnsolvable;
  }
  const auto b = oracle_bounds(robot, human, res);
  std::cout << "GD_down=" << b.lower << " GD_up=" << b.upper << '\n';
  return kOk;
}

int run_bench_cmd(const std::string& config_file, int workers, const std::string& output) {
  BenchConfig cfg = load_bench_config(config_file);
  if (workers > 0) cfg.workers = workers;
  if (!output.empty()) cfg.output = output;
  const auto rows = run_bench(cfg, &std::cout);
  std::cout << "wrote " << rows.size() << " rows to " << cfg.output << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goal-state divergence bounds and environment design for human-robot model mismatch"};
  app.require_subcommand(1);

  ModelArgs bounds_args, design_args, compile_args, oracle_args;
  std::string restriction = "all", oracle_restriction = "all";
  bool flattened = false, external = false, witnesses = false;
  double time_limit = 300.0;
  auto* bounds = app.add_subcommand("bounds", "compute GD_down and GD_up");
  bounds_args.add_to(bounds);
  bounds->add_option("--restriction", restriction, "all or optimal plans")
      ->check(CLI::IsMember({"all", "optimal"}));
  bounds->add_flag("--flattened", flattened, "interleave human and robot actions");
  bounds->add_flag("--external", external,
                   std::string("solve with the external planner named by ") + kPlannerEnv);
  bounds->add_flag("--witnesses", witnesses, "print witness plans");
  bounds->add_option("--time-limit", time_limit, "seconds per planner call");

  std::string universe;
  int k = 0, l = 0;
  std::string method = "main";
  bool verbose = false;
  double design_limit = 300.0;
  auto* design = app.add_subcommand("design", "find a minimal environment design");
  design_args.add_to(design);
  design->add_option("--universe", universe, "JSON design universe")->required();
  design->add_option("-k", k, "upper threshold on GD_up")->check(CLI::NonNegativeNumber);
  design->add_option("-l", l, "upper threshold on GD_down")->check(CLI::NonNegativeNumber);
  design->add_option("--method", method)->check(CLI::IsMember({"main", "main-fl", "naive"}));
  design->add_option("--time-limit", design_limit, "seconds for the whole search");
  design->add_flag("-v,--verbose", verbose, "print the search log");

  std::string mode = "gddown", out_dir, compile_universe;
  bool compile_flat = false, forced = false;
  int steps = 1, compile_l = 0;
  auto* compile = app.add_subcommand("compile", "write a compiled model as PDDL");
  compile_args.add_to(compile);
  compile->add_option("--mode", mode)
      ->check(CLI::IsMember({"gdup", "gddown", "gdup-opt", "gddown-opt", "design"}));
  compile->add_option("--out", out_dir, "output directory")->required();
  compile->add_flag("--flattened", compile_flat);
  compile->add_flag("--forced-disagreement", forced, "require at least one disagreement check");
  compile->add_option("--universe", compile_universe, "JSON design universe (design mode)");
  compile->add_option("--steps", steps, "number of design steps (design mode)")->check(CLI::PositiveNumber);
  compile->add_option("-l", compile_l, "disagreement budget (design mode)")->check(CLI::NonNegativeNumber);

  std::string oracle_universe;
  int oracle_k = 0, oracle_l = 0;
  auto* oracle = app.add_subcommand("oracle", "brute-force bounds or designs on tiny models");
  oracle_args.add_to(oracle);
  oracle->add_option("--restriction", oracle_restriction)->check(CLI::IsMember({"all", "optimal"}));
  oracle->add_option("--universe", oracle_universe, "enumerate minimal designs over this universe");
  oracle->add_option("-k", oracle_k)->check(CLI::NonNegativeNumber);
  oracle->add_option("-l", oracle_l)->check(CLI::NonNegativeNumber);

  std::string bench_config, bench_output;
  int workers = 0;
  auto* bench = app.add_subcommand("bench", "run the design benchmark");
  bench->add_option("--config", bench_config, "JSON bench config")->required();
  bench->add_option("--workers", workers)->check(CLI::PositiveNumber);
  bench->add_option("--output", bench_output, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*bounds) return run_bounds(bounds_args, restriction, flattened, external, witnesses, time_limit);
    if (*design) return run_design(design_args, universe, k, l, method, design_limit, verbose);
    if (*compile)
      return run_compile(compile_args, mode, out_dir, compile_flat, forced, compile_universe, steps, compile_l);
    if (*oracle) return run_oracle(oracle_args, oracle_restriction, oracle_universe, oracle_k, oracle_l);
    if (*bench) return run_bench_cmd(bench_config, workers, bench_output);
  } catch (const gsd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
