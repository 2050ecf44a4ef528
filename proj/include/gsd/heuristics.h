#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "gsd/model.h"

namespace gsd {

inline constexpr std::int64_t kInfiniteCost = std::numeric_limits<std::int64_t>::max();

/// Delete-relaxation exploration over a fixed model, reusable across states.
///
/// Negative preconditions and delete effects are ignored. Every conditional
/// effect becomes an extra relaxed operator whose precondition is the action
/// precondition plus the effect condition. Operator costs are taken from one
/// cost component (the dominant one for lexicographic models), or are unit
/// when cost_component is negative.
class RelaxedExploration {
 public:
  explicit RelaxedExploration(const GroundedModel& model, int cost_component = 0);

  /// Max-cost of the most expensive goal fluent; admissible.
  std::int64_t h_max(const State& s);
  /// Sum of goal fluent costs; not admissible, used for greedy search.
  std::int64_t h_add(const State& s);

 private:
  struct UnaryOp {
    std::vector<FluentId> pre;
    std::vector<FluentId> eff;
    std::int64_t cost;
  };

  std::int64_t explore(const State& s, bool use_max);

  std::vector<UnaryOp> ops_;
  std::vector<std::vector<int>> ops_by_pre_;  // fluent -> ops that need it
  std::vector<int> no_pre_ops_;
  std::vector<FluentId> goal_;
  std::size_t num_fluents_;

  // Scratch buffers.
  std::vector<std::int64_t> fluent_cost_;
  std::vector<std::int64_t> op_cost_;
  std::vector<int> unsatisfied_;
};

}  // namespace gsd
