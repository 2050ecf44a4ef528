#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsd/design_types.h"
#include "gsd/model.h"

namespace gsd {

/// Which divergence bound the joint model's optimal plans realize.
///   kGdUp / kGdDown: all plans; kGdUpOpt / kGdDownOpt: cost-optimal plans.
enum class BoundMode { kGdUp, kGdDown, kGdUpOpt, kGdDownOpt };

enum class CostRepresentation { kLexicographic, kBigInteger };

enum class Ordering { kOrdered, kFlattened };

const char* to_string(BoundMode m);
const char* to_string(Ordering o);

/// Cost assignment for the joint model.
///
/// Agreement checks cost P1 and disagreement checks P2. The penalized check
/// kind is the one whose count is minimized: agreements for the upper bounds,
/// disagreements for the lower bounds. Rather than a huge scalar P, the
/// penalty lives in its own dominant component of a lexicographic cost vector:
///
///   kGdUp/kGdDown          (penalized checks, unit action-copy cost)
///   kGdUpOpt/kGdDownOpt    (human-copy cost, robot-copy cost, penalized checks)
///
/// The optimal-restricted layering forces an optimal human plan first, then an
/// optimal robot plan, and only then trades off agreements/disagreements.
/// kBigInteger only changes how the costs are written to PDDL (scalarized
/// with exact dominance weights).
struct CostScheme {
  BoundMode mode = BoundMode::kGdUp;
  CostRepresentation representation = CostRepresentation::kLexicographic;

  static CostScheme of(BoundMode mode) { return CostScheme{mode}; }
  bool optimal_restricted() const {
    return mode == BoundMode::kGdUpOpt || mode == BoundMode::kGdDownOpt;
  }
  bool penalizes_agreement() const {
    return mode == BoundMode::kGdUp || mode == BoundMode::kGdUpOpt;
  }
  int dims() const { return optimal_restricted() ? 3 : 2; }
  CostVector agreement_cost() const;
  CostVector disagreement_cost() const;
};

enum class FluentRole { kRobot, kHuman, kHousekeeping, kCompare, kDesign };

enum class ActionRole {
  kRobot,
  kHuman,
  kFlipHuman,
  kFlipRobot,
  kCheckAgree,
  kCheckDisagree,
  kDesign,
  kDesignCompleted,
};

struct ActionInfo {
  ActionRole role = ActionRole::kRobot;
  /// Robot/human copies: action id in the source model. Checks: base fluent.
  /// Design actions: index into the design universe.
  int source = -1;
  /// Design step (design actions) or budget token index (budgeted
  /// disagreement checks); -1 otherwise.
  int slot = -1;
};

/// Extra structure present only on design compilations.
struct DesignLayout {
  std::vector<DesignAtom> universe;
  int steps = 0;
  int disagreement_budget = 0;
  FluentId design_allowed = -1;
  FluentId unseen_design = -1;
  std::vector<FluentId> step_tokens;
  std::vector<FluentId> step_done_tokens;
  std::vector<FluentId> markers;  // one per universe atom
  std::vector<FluentId> budget_tokens;
  ActionId design_completed = -1;
  std::vector<Design> excluded;
};

/// The joint model plus the role metadata needed to decompose its plans.
struct CompiledModel {
  GroundedModel model;
  GroundedModel robot;
  GroundedModel human;
  CostScheme scheme;
  Ordering ordering = Ordering::kOrdered;

  std::vector<FluentRole> fluent_roles;
  std::vector<ActionInfo> action_info;

  std::size_t num_base_fluents = 0;
  std::vector<FluentId> human_copy;  // base fluent -> human copy
  std::vector<FluentId> compare;     // base fluent -> compare fluent
  FluentId robot_can_act = -1;
  FluentId human_can_act = -1;
  ActionId flip_human = -1;
  ActionId flip_robot = -1;
  /// Check actions per base fluent. Checks of different fluents commute, so a
  /// search may serialize them in fluent order.
  std::vector<std::vector<ActionId>> check_groups;

  std::optional<FluentId> disagreement_used;
  std::optional<DesignLayout> design;
};

/// Builds the joint model of a robot model and the human's model of it.
/// Both must share the fluent set and the goal.
CompiledModel build_joint_model(const GroundedModel& robot, const GroundedModel& human,
                                const CostScheme& scheme,
                                Ordering ordering = Ordering::kOrdered);

/// Adds a disagreement_used goal fluent that every disagreement check sets.
/// The result is solvable iff some plan pair diverges, i.e. iff GD-up > 0.
CompiledModel build_forced_disagreement(const CompiledModel& compiled);

struct Decomposition {
  Plan human;  // ids of the human model
  Plan robot;  // ids of the robot model
  std::vector<FluentId> agree;
  std::vector<FluentId> disagree;
  Design design;
  std::size_t checks = 0;
};

Decomposition decompose_plan(const CompiledModel& compiled, const Plan& plan);

/// Maps plan lines from an external planner ("(r_pick-up_a)", one per line,
/// ';' comments ignored) back to compiled action ids.
Plan parse_named_plan(const CompiledModel& compiled, const std::string& text);

struct CheckPhaseReport {
  std::size_t check_actions = 0;
  bool one_check_per_fluent = true;
  /// For every check-phase state along the plan, each unchecked fluent had
  /// exactly one applicable check action.
  bool partition_holds = true;
  std::string problem;
};

/// Replays a plan of a bound compilation and checks the check-phase
/// structure. Budgeted design compilations are skipped for the partition
/// test (several disagreement copies share a fluent there).
CheckPhaseReport check_phase_structure(const CompiledModel& compiled, const Plan& plan);

}  // namespace gsd
