#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gsd/state.h"

namespace gsd {

using ActionId = int;

/// Lexicographically ordered cost with up to three components. Plain models
/// only use component 0; compiled models use further components to express
/// dominance without huge integers.
struct CostVector {
  static constexpr int kMaxDims = 3;
  std::array<std::int64_t, kMaxDims> v{};

  constexpr CostVector() = default;
  constexpr explicit CostVector(std::int64_t c0, std::int64_t c1 = 0,
                                std::int64_t c2 = 0)
      : v{c0, c1, c2} {}

  std::int64_t operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return v[static_cast<std::size_t>(i)]; }

  CostVector& operator+=(const CostVector& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
  }
  friend CostVector operator+(CostVector a, const CostVector& b) { return a += b; }
  friend auto operator<=>(const CostVector&, const CostVector&) = default;
  friend bool operator==(const CostVector&, const CostVector&) = default;

  std::string to_string(int dims) const;
};

struct ConditionalEffect {
  std::vector<FluentId> cond_pos;
  std::vector<FluentId> cond_neg;
  std::vector<FluentId> add;
  std::vector<FluentId> del;
};

struct GroundAction {
  std::string name;
  std::vector<FluentId> pre_pos;
  std::vector<FluentId> pre_neg;
  std::vector<FluentId> add;
  std::vector<FluentId> del;
  std::vector<ConditionalEffect> conditional;
  CostVector cost{1};
};

/// A grounded STRIPS model with negative preconditions and conditional
/// effects: fluents F, actions A with costs, initial state I, goal G.
struct GroundedModel {
  std::string name;
  std::vector<std::string> fluents;
  std::vector<GroundAction> actions;
  State init;
  std::vector<FluentId> goal;
  /// Number of meaningful cost components (1 for ordinary models).
  int cost_dims = 1;

  std::size_t num_fluents() const { return fluents.size(); }
  std::size_t num_actions() const { return actions.size(); }

  State goal_state() const;
  bool is_goal(const State& s) const { return s.contains_all(goal); }

  std::optional<FluentId> find_fluent(std::string_view fluent_name) const;
  std::optional<ActionId> find_action(std::string_view action_name) const;

  /// Adds a fluent and returns its id. Does not resize init; callers rebuild
  /// the initial state once all fluents exist.
  FluentId add_fluent(std::string fluent_name);

  /// Throws ModelError if any invariant is violated: literal ids in range,
  /// add/del disjoint per effect, pre_pos/pre_neg disjoint, costs nonnegative,
  /// unique fluent names.
  void check() const;
};

struct Plan {
  std::vector<ActionId> steps;
  CostVector cost;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
};

Plan make_plan(const GroundedModel& m, std::vector<ActionId> steps);

bool executable(const State& s, const GroundAction& a);

/// Applies a to s. Conditional effects are evaluated against s (the
/// pre-action state). Throws InvalidPlanError(step=0) if not executable.
State apply_action(const State& s, const GroundAction& a);

/// Left fold of apply_action; the error carries the first failing index.
State apply_plan(const State& s, const Plan& plan, const GroundedModel& m);

struct PlanValidation {
  bool valid = false;
  bool executable = false;
  /// Final state reached (the state before the failing step if execution
  /// stopped early).
  State final_state;
  std::optional<std::size_t> failed_step;
};

PlanValidation validate_plan(const GroundedModel& m, const Plan& plan);

/// Symmetric difference of two states.
State state_divergence(const State& a, const State& b);

/// Goal state divergence of a plan pair. Both plans must be valid and the two
/// models must share their fluent set; violations throw.
State goal_state_divergence(const GroundedModel& m1, const Plan& p1,
                            const GroundedModel& m2, const Plan& p2);

CostVector plan_cost(const GroundedModel& m, const Plan& plan);

/// Throws ModelError unless both models declare the same fluents in the same
/// order.
void require_same_fluents(const GroundedModel& a, const GroundedModel& b);

std::string format_state(const GroundedModel& m, const State& s);
std::string format_plan(const GroundedModel& m, const Plan& p);

}  // namespace gsd
