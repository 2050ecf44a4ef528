#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsd/bounds.h"
#include "gsd/design.h"
#include "gsd/planner.h"

namespace gsd {

enum class DesignMethod { kMain, kMainFlattened, kNaive };
enum class DesignStatus { kFound, kNoDesign, kUnknown };

const char* to_string(DesignMethod m);
const char* to_string(DesignStatus s);
DesignMethod parse_design_method(const std::string& text);

struct DesignSearchConfig {
  DesignMethod method = DesignMethod::kMain;
  /// Budget of each individual planner call.
  SearchOptions search;
  /// State cap of the breadth-first GD-up == 0 proofs.
  std::uint64_t proof_state_cap = 20'000'000;
  /// Wall-clock limit of the whole search in seconds; 0 means none.
  double time_limit = 0.0;
};

struct DesignLogEntry {
  int tau = 0;
  Design design;
  std::string event;
  double seconds = 0.0;
};

struct DesignSearchResult {
  DesignStatus status = DesignStatus::kUnknown;
  std::optional<Design> design;
  int tau_reached = 0;
  std::vector<DesignLogEntry> log;
  SearchStats stats;
  /// Set when status is kUnknown.
  std::string reason;
};

/// The design loop over growing budgets: an empty-design check, then for
/// tau = 1, 2, ... it repeatedly solves the design compilation, extracting and
/// excluding one design with GD-down <= l per solve, until a design also passes
/// the GD-up <= k test or the compilation becomes unsolvable. Non-unit atom
/// costs fall back to the naive search. Any exhausted planner call yields
/// kUnknown, never a wrong design.
DesignSearchResult find_minimal_design(const DesignProblem& problem,
                                       const DesignSearchConfig& config = {});

/// Enumerates designs in nondecreasing cost (cardinality for unit costs) and
/// computes both bounds of each until one meets the thresholds.
DesignSearchResult naive_design_search(const DesignProblem& problem,
                                       const DesignSearchConfig& config = {});

/// Dispatches on config.method.
DesignSearchResult design_search(const DesignProblem& problem, const DesignSearchConfig& config);

/// Outcome of the GD-up <= k test on one pair of models.
enum class UpperCheck { kWithin, kExceeded, kUnknown };

/// k == 0 is decided by exhaustive search on the forced-disagreement model,
/// larger k by an optimal GD-up computation.
UpperCheck upper_bound_within(const GroundedModel& robot, const GroundedModel& human,
                              std::int64_t k, Ordering ordering, const DesignSearchConfig& config,
                              SearchStats* stats = nullptr);

struct BoundsPair {
  BoundStatus status = BoundStatus::kResourceExhausted;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::optional<BoundsReport> lower_report;
  std::optional<BoundsReport> upper_report;
  SearchStats stats;
};

/// (GD-down, GD-up) over all plans or over cost-optimal plans.
BoundsPair compute_bounds_pair(const GroundedModel& robot, const GroundedModel& human,
                               bool optimal_plans, Ordering ordering = Ordering::kOrdered,
                               const SearchOptions& options = {});

enum class Aggregate { kMax, kMin, kAvg };

using Rational = boost::rational<std::int64_t>;

struct AggregatedBounds {
  Rational lower;
  Rational upper;
};

/// Componentwise max, min or exact mean of (GD-down, GD-up) pairs.
AggregatedBounds aggregate_bounds(const std::vector<std::pair<std::int64_t, std::int64_t>>& values,
                                  Aggregate mode);

std::string format_rational(const Rational& r);

}  // namespace gsd
