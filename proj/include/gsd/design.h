#pragma once

#include <string>
#include <vector>

#include "gsd/compilation.h"
#include "gsd/design_types.h"

namespace gsd {

/// Environment design problem over initial-state modifications: find the
/// cheapest subset of `universe` after which GD-down <= lower_threshold and
/// GD-up <= upper_threshold.
struct DesignProblem {
  GroundedModel robot;
  GroundedModel human;
  std::vector<DesignAtom> universe;
  int lower_threshold = 0;  // l
  int upper_threshold = 0;  // k

  /// Throws ModelError on structural problems; returns warnings (vacuous
  /// atoms) otherwise.
  std::vector<std::string> check() const;
  bool unit_costs() const;
};

/// Applies every atom of the design to the model's initial state.
GroundedModel apply_design(const GroundedModel& m, const Design& design);

/// The lower-bound joint model with a design phase in front of it:
///
///  - `steps` step tokens are each consumed by one design action, so every
///    plan applies exactly `steps` distinct universe atoms (to the robot
///    fluent and its human copy alike);
///  - design_completed ends the design phase and hands control to the human
///    (and, flattened, also to the robot);
///  - each design in `excluded` gets a conditional effect on design_completed
///    that deletes the unseen_design goal fluent when exactly its markers are
///    set, which makes that design goal-violating;
///  - with disagreement_budget == 0 the disagreement checks are dropped, so a
///    plan exists iff some design admits identical end states. With a budget
///    l > 0, l indexed disagreement copies per fluent each consume one budget
///    token.
CompiledModel build_design_model(const DesignProblem& problem, int steps,
                                 const std::vector<Design>& excluded,
                                 int disagreement_budget,
                                 Ordering ordering = Ordering::kOrdered);

/// Design atoms applied by a plan of a design compilation.
Design extract_design(const CompiledModel& compiled, const Plan& plan);

/// Rebuilds design_completed's exclusion effects for a new excluded set.
CompiledModel exclude_designs(const CompiledModel& compiled, const std::vector<Design>& excluded);

}  // namespace gsd
