#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsd/design_search.h"
#include "gsd/pddl.h"

namespace gsd {

struct BenchInstance {
  std::string domain;        // label, e.g. "blocksworld"
  std::string name;          // label, e.g. "bw-4"
  std::string domain_file;
  std::string problem_file;
};

struct BenchConfig {
  std::vector<BenchInstance> instances;
  int variations = 5;
  int n_delete = 5;
  std::uint64_t seed = 1;
  std::vector<DesignMethod> methods = {DesignMethod::kMain, DesignMethod::kMainFlattened,
                                       DesignMethod::kNaive};
  /// Wall-clock limit of one design search run, in seconds.
  double time_limit = 300.0;
  std::string output = "bench.csv";
  int workers = 1;
  /// Also time GD-down, GD-down after the design, and the GD-up == 0 proof.
  bool bound_rows = true;
  /// Extra universe atoms beyond the restore set, as "+atom" / "-atom".
  std::vector<std::string> extra_universe;

  void check() const;
};

/// Parses a JSON bench config. Relative file paths are resolved against the
/// directory of `path`.
BenchConfig load_bench_config(const std::string& path);

struct Variation {
  pddl::ProblemAst robot;
  pddl::ProblemAst human;
  std::vector<pddl::Atom> deleted;  // sorted
};

/// The robot keeps the original problem; the human loses `n_delete` distinct
/// init atoms chosen uniformly with a generator seeded by `seed`.
Variation generate_variation(const pddl::ProblemAst& problem, int n_delete, std::uint64_t seed);

/// Seed of one variation, derived from the config seed and its position.
std::uint64_t variation_seed(std::uint64_t seed, std::size_t instance, int variation);

/// Builds the design problem of a variation: both problems grounded over the
/// same domain, universe = restore atoms plus the extras, k = l = 0.
DesignProblem variation_design_problem(const pddl::DomainAst& domain, const Variation& v,
                                       const std::vector<std::string>& extra_universe);

struct BenchRow {
  std::string domain;
  std::string instance;
  int variation = 0;
  std::string method;
  double seconds = 0.0;
  std::string outcome;
  /// Design size for search rows, bound value for bound rows, -1 if none.
  std::int64_t design_size = -1;
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
};

inline constexpr const char* kBenchCsvHeader =
    "domain,instance,variation,method,seconds,outcome,design_size,expanded,generated";

/// Runs every (instance, variation, method) and returns rows in a fixed
/// order. Writes the CSV to config.output unless it is empty and prints the
/// mean/stddev summary to `summary` if non-null.
std::vector<BenchRow> run_bench(const BenchConfig& config, std::ostream* summary = nullptr);

/// CSV text; with include_timing false the seconds column is left empty so
/// two runs can be compared byte for byte.
std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timing = true);

/// Mean and sample standard deviation of seconds per (domain, instance,
/// method).
void print_bench_summary(const std::vector<BenchRow>& rows, std::ostream& os);

/// Parses "+atom" / "-atom" (atom as "(on a b)", "on a b" or "on_a_b").
DesignAtom parse_design_atom(const GroundedModel& m, const std::string& text);

/// One design universe entry as written in a universe file.
struct UniverseEntry {
  std::string fluent;  // normalized fluent name
  Polarity polarity = Polarity::kAdd;
  std::int64_t cost = 1;
};

/// Reads a JSON universe: a list (or {"universe": list}) whose items are
/// either "+atom" / "-atom" strings or objects
/// {"fluent": "(on a b)", "polarity": "add" | "remove", "cost": 1}.
std::vector<UniverseEntry> load_universe(const std::string& path);
std::vector<UniverseEntry> parse_universe(const std::string& json_text);

/// Maps entries to design atoms of `m`; unknown fluents throw.
std::vector<DesignAtom> resolve_universe(const GroundedModel& m,
                                         const std::vector<UniverseEntry>& entries);

}  // namespace gsd
