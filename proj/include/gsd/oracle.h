#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "gsd/design.h"
#include "gsd/model.h"

namespace gsd {

/// Brute-force ground truth for tiny models. Nothing here touches the
/// compilations or the planner; everything is explicit-state enumeration.

enum class Restriction { kAllPlans, kOptimalPlans };

const char* to_string(Restriction r);

inline constexpr std::size_t kOracleStateCap = 1'000'000;

/// Uniform-cost exploration from the initial state (cost component 0).
struct ReachabilityIndex {
  std::unordered_map<State, std::int64_t, StateHash> cost;
  std::vector<State> goal_states;  // sorted
  std::optional<std::int64_t> min_goal_cost;
};

/// Throws Error when more than `cap` states are reachable.
ReachabilityIndex explore_reachable(const GroundedModel& m, const State& from,
                                    std::size_t cap = kOracleStateCap);
ReachabilityIndex explore_reachable(const GroundedModel& m, std::size_t cap = kOracleStateCap);

/// Final states of all plans (every reachable goal state) or of the
/// cost-optimal plans only. Sorted.
std::vector<State> goal_end_states(const GroundedModel& m, Restriction restriction,
                                   std::size_t cap = kOracleStateCap);

struct OracleBounds {
  std::int64_t lower = 0;  // GD-down
  std::int64_t upper = 0;  // GD-up
  friend bool operator==(const OracleBounds&, const OracleBounds&) = default;
};

/// Min and max |s_h xor s_r| over pairs of end states. Throws Error when
/// either model has no plan.
OracleBounds oracle_bounds(const GroundedModel& robot, const GroundedModel& human,
                           Restriction restriction, std::size_t cap = kOracleStateCap);

/// Optimal plan cost from `from`, or nullopt if the goal is unreachable.
std::optional<std::int64_t> exact_goal_distance(const GroundedModel& m, const State& from,
                                                std::size_t cap = kOracleStateCap);

struct OracleDesignResult {
  /// Minimum cardinality of a qualifying design; nullopt if none exists.
  std::optional<std::size_t> min_size;
  /// Every qualifying design of that cardinality.
  std::vector<Design> designs;
};

/// Enumerates all subsets of the universe (skipping those that add and remove
/// the same fluent) and keeps those whose all-plans bounds satisfy
/// GD-down <= l and GD-up <= k. Designs that leave a model without a plan do
/// not qualify.
OracleDesignResult oracle_design(const DesignProblem& problem, int k, int l);

// Seeded generators for property tests. std::mt19937_64's output sequence is
// fixed by the standard; the helpers below avoid the implementation-defined
// distributions.

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);
/// Picks `count` distinct indices from [0, n), returned sorted.
std::vector<std::size_t> sample_indices(Rng& rng, std::size_t n, std::size_t count);

struct RandomInstanceOptions {
  int min_fluents = 3;
  int max_fluents = 6;
  int min_actions = 3;
  int max_actions = 8;
  std::int64_t max_cost = 3;
  int max_init_deletions = 3;
  int max_action_deletions = 1;
  /// Use the whole random-walk end state as the goal instead of a sample.
  bool full_state_goal = false;
};

struct RandomInstance {
  GroundedModel robot;
  GroundedModel human;
  /// Init fluents present for the robot but deleted for the human.
  std::vector<FluentId> deleted_init;
};

/// A random robot model and a human model with a few init fluents and at most
/// one action deleted. Retries until both models can reach the goal.
RandomInstance random_instance(Rng& rng, const RandomInstanceOptions& options = {});

/// A random design problem on a random instance: the universe restores the
/// deleted init fluents plus distractor atoms, at most `max_universe` atoms.
DesignProblem random_design_problem(Rng& rng, std::size_t max_universe = 6,
                                    const RandomInstanceOptions& options = {});

/// A random valid plan: a random walk that stops at goal states with some
/// probability, completed by a shortest path to the goal. nullopt when the
/// goal is unreachable.
std::optional<Plan> random_valid_plan(const GroundedModel& m, Rng& rng, int max_walk = 6);

/// A random reachable state (for heuristic admissibility checks).
State random_reachable_state(const GroundedModel& m, Rng& rng, int max_walk = 8);

}  // namespace gsd
