#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsd/model.h"

namespace gsd {

enum class SearchStatus { kPlanFound, kUnsolvable, kResourceExhausted };

const char* to_string(SearchStatus s);

struct SearchBudget {
  double seconds = 300.0;
  std::uint64_t max_expansions = 10'000'000;
};

struct SearchStats {
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  std::uint64_t peak_frontier = 0;
  double seconds = 0.0;

  SearchStats& operator+=(const SearchStats& o) {
    expanded += o.expanded;
    generated += o.generated;
    peak_frontier = std::max(peak_frontier, o.peak_frontier);
    seconds += o.seconds;
    return *this;
  }
};

struct SearchResult {
  SearchStatus status = SearchStatus::kResourceExhausted;
  Plan plan;
  SearchStats stats;
};

enum class HeuristicKind { kBlind, kHMax };

struct SearchOptions {
  SearchBudget budget;
  HeuristicKind heuristic = HeuristicKind::kHMax;
  /// Groups of mutually commuting actions that every plan must use once per
  /// group (e.g. the per-fluent checks of a joint model). In a state whose
  /// applicable actions all belong to groups, only the lowest-index group with
  /// an applicable action is expanded.
  std::vector<std::vector<ActionId>> serialized_groups;
  /// solve_satisficing only: report kUnsolvable when the open list runs dry.
  /// Sound because the search prunes relaxed-unreachable states only.
  bool complete = false;
};

/// A* over lexicographic cost vectors. The heuristic (h_max on cost component
/// 0, or blind) only informs the dominant component; ties on it are resolved
/// uniform-cost on the remaining components, so the returned plan is optimal
/// in the full lexicographic order. Reports kUnsolvable only after exhausting
/// the reachable (non-dead-end) state space.
SearchResult solve_optimal(const GroundedModel& model, const SearchOptions& options = {});

/// Greedy best-first search on unit-cost h_add. An exhausted open list is
/// reported as kResourceExhausted unless options.complete is set.
SearchResult solve_satisficing(const GroundedModel& model, const SearchOptions& options = {});

enum class ProofStatus { kUnsolvable, kSolvable, kUnknown };

const char* to_string(ProofStatus s);

struct ProofResult {
  ProofStatus status = ProofStatus::kUnknown;
  Plan plan;
  SearchStats stats;
};

/// Exhaustive breadth-first reachability with duplicate detection. kUnknown
/// when the state cap or the time budget is hit first.
ProofResult prove_unsolvable(const GroundedModel& model, std::uint64_t state_cap,
                             const SearchOptions& options = {});

/// Runs an external planner: `command domain.pddl problem.pddl plan.txt`,
/// expecting one action name per line in plan.txt. Returns the raw plan text,
/// or an empty optional when the planner produced no plan file.
std::optional<std::string> run_external_planner(const std::string& command,
                                                const std::string& domain_text,
                                                const std::string& problem_text,
                                                const std::string& work_dir);

}  // namespace gsd
