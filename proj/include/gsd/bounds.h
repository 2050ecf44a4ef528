#pragma once

#include <optional>
#include <vector>

#include "gsd/compilation.h"
#include "gsd/planner.h"

namespace gsd {

/// Result of solving a bound compilation. bound == |disagree| and
/// |agree| + |disagree| == number of base fluents.
struct BoundsReport {
  BoundMode mode = BoundMode::kGdUp;
  std::int64_t bound = 0;
  Plan human_plan;
  Plan robot_plan;
  std::vector<FluentId> agree;
  std::vector<FluentId> disagree;
  Plan compiled_plan;
};

enum class BoundStatus { kOk, kNoValidPlan, kResourceExhausted };

const char* to_string(BoundStatus s);

struct BoundResult {
  BoundStatus status = BoundStatus::kResourceExhausted;
  std::optional<BoundsReport> report;
  SearchStats stats;
};

/// Copies `options` and adds the compiled model's per-fluent check groups as
/// serialized groups.
SearchOptions with_check_serialization(const CompiledModel& compiled, SearchOptions options);

/// Solves the compiled model optimally and reads the bound off the plan's
/// disagreement checks. kNoValidPlan means the joint model is unsolvable,
/// i.e. the human or the robot model has no plan at all.
BoundResult compute_bound(const CompiledModel& compiled, const SearchOptions& options = {});

}  // namespace gsd
