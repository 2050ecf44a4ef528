#include "gsd/bounds.h"

#include "gsd/error.h"

namespace gsd {

const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::kOk: return "ok";
    case BoundStatus::kNoValidPlan: return "no-valid-plan";
    case BoundStatus::kResourceExhausted: return "resource-exhausted";
  }
  return "?";
}

SearchOptions with_check_serialization(const CompiledModel& compiled, SearchOptions options) {
  options.serialized_groups = compiled.check_groups;
  return options;
}

BoundResult compute_bound(const CompiledModel& compiled, const SearchOptions& options) {
  BoundResult out;
  const auto search = solve_optimal(compiled.model, with_check_serialization(compiled, options));
  out.stats = search.stats;
  if (search.status == SearchStatus::kUnsolvable) {
    out.status = BoundStatus::kNoValidPlan;
    return out;
  }
  if (search.status == SearchStatus::kResourceExhausted) {
    out.status = BoundStatus::kResourceExhausted;
    return out;
  }
  const auto parts = decompose_plan(compiled, search.plan);
  BoundsReport r;
  r.mode = compiled.scheme.mode;
  r.bound = static_cast<std::int64_t>(parts.disagree.size());
  r.human_plan = parts.human;
  r.robot_plan = parts.robot;
  r.agree = parts.agree;
  r.disagree = parts.disagree;
  r.compiled_plan = search.plan;
  if (r.agree.size() + r.disagree.size() != compiled.num_base_fluents)
    throw Error("compiled plan does not check every fluent exactly once");
  out.status = BoundStatus::kOk;
  out.report = std::move(r);
  return out;
}

}  // namespace gsd
