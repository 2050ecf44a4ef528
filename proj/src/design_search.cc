#include "gsd/design_search.h"

#include <algorithm>
#include <chrono>
#include <set>

#include "gsd/error.h"

namespace gsd {

const char* to_string(DesignMethod m) {
  switch (m) {
    case DesignMethod::kMain: return "main";
    case DesignMethod::kMainFlattened: return "main-fl";
    case DesignMethod::kNaive: return "naive";
  }
  return "?";
}

const char* to_string(DesignStatus s) {
  switch (s) {
    case DesignStatus::kFound: return "found";
    case DesignStatus::kNoDesign: return "no-design";
    case DesignStatus::kUnknown: return "unknown";
  }
  return "?";
}

DesignMethod parse_design_method(const std::string& text) {
  if (text == "main") return DesignMethod::kMain;
  if (text == "main-fl") return DesignMethod::kMainFlattened;
  if (text == "naive") return DesignMethod::kNaive;
  throw Error("unknown design method '" + text + "'");
}

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Hands out per-call budgets clipped to what is left of the overall limit.
class Deadline {
 public:
  explicit Deadline(const DesignSearchConfig& config) : config_(config) {}

  DesignSearchConfig next() const {
    DesignSearchConfig c = config_;
    if (config_.time_limit > 0)
      c.search.budget.seconds =
          std::min(c.search.budget.seconds, std::max(0.0, config_.time_limit - watch_.seconds()));
    return c;
  }

 private:
  const DesignSearchConfig& config_;
  Stopwatch watch_;
};

enum class Verdict { kAccept, kReject, kUnknown };

// Both thresholds on the designed models. The lower bound comes first: it
// also detects designs that leave a model without any plan.
Verdict evaluate(const DesignProblem& problem, const Design& d, Ordering ordering,
                 const Deadline& deadline, DesignSearchResult& out, int tau, bool stop_early) {
  Stopwatch watch;
  const GroundedModel robot = apply_design(problem.robot, d);
  const GroundedModel human = apply_design(problem.human, d);
  const auto lower = compute_bound(
      build_joint_model(robot, human, CostScheme::of(BoundMode::kGdDown), ordering),
      deadline.next().search);
  out.stats += lower.stats;
  if (lower.status == BoundStatus::kResourceExhausted) {
    out.reason = "GD-down computation exhausted its budget";
    return Verdict::kUnknown;
  }
  if (lower.status == BoundStatus::kNoValidPlan) {
    out.log.push_back({tau, d, "no valid plan", watch.seconds()});
    return Verdict::kReject;
  }
  const bool lower_ok = lower.report->bound <= problem.lower_threshold;
  if (!lower_ok && stop_early) {
    out.log.push_back({tau, d, "GD_down=" + std::to_string(lower.report->bound), watch.seconds()});
    return Verdict::kReject;
  }
  const auto upper = upper_bound_within(robot, human, problem.upper_threshold, ordering,
                                        deadline.next(), &out.stats);
  if (upper == UpperCheck::kUnknown) {
    out.reason = "GD-up check exhausted its budget";
    return Verdict::kUnknown;
  }
  const bool upper_ok = upper == UpperCheck::kWithin;
  out.log.push_back({tau, d,
                     "GD_down=" + std::to_string(lower.report->bound) +
                         (upper_ok ? " GD_up<=" : " GD_up>") + std::to_string(problem.upper_threshold),
                     watch.seconds()});
  return lower_ok && upper_ok ? Verdict::kAccept : Verdict::kReject;
}

DesignSearchResult found(DesignSearchResult out, Design d) {
  out.status = DesignStatus::kFound;
  out.design = std::move(d);
  return out;
}

}  // namespace

UpperCheck upper_bound_within(const GroundedModel& robot, const GroundedModel& human,
                              std::int64_t k, Ordering ordering, const DesignSearchConfig& config,
                              SearchStats* stats) {
  const auto joint = build_joint_model(robot, human, CostScheme::of(BoundMode::kGdUp), ordering);
  if (k == 0) {
    const auto forced = build_forced_disagreement(joint);
    const auto proof = prove_unsolvable(forced.model, config.proof_state_cap,
                                        with_check_serialization(forced, config.search));
    if (stats) *stats += proof.stats;
    switch (proof.status) {
      case ProofStatus::kUnsolvable: return UpperCheck::kWithin;
      case ProofStatus::kSolvable: return UpperCheck::kExceeded;
      case ProofStatus::kUnknown: return UpperCheck::kUnknown;
    }
  }
  const auto bound = compute_bound(joint, config.search);
  if (stats) *stats += bound.stats;
  if (bound.status != BoundStatus::kOk) return UpperCheck::kUnknown;
  return bound.report->bound <= k ? UpperCheck::kWithin : UpperCheck::kExceeded;
}

DesignSearchResult find_minimal_design(const DesignProblem& problem,
                                       const DesignSearchConfig& config) {
  problem.check();
  if (config.method == DesignMethod::kNaive) return naive_design_search(problem, config);
  if (!problem.unit_costs()) {
    auto out = naive_design_search(problem, config);
    out.log.insert(out.log.begin(), {0, Design{}, "non-unit design costs, cost-ordered enumeration", 0.0});
    return out;
  }
  const Ordering ordering =
      config.method == DesignMethod::kMainFlattened ? Ordering::kFlattened : Ordering::kOrdered;
  DesignSearchResult out;
  const Deadline deadline(config);

  switch (evaluate(problem, Design{}, ordering, deadline, out, 0, true)) {
    case Verdict::kAccept: return found(std::move(out), Design{});
    case Verdict::kUnknown: return out;
    case Verdict::kReject: break;
  }

  const int max_tau = static_cast<int>(std::min(problem.robot.num_fluents(), problem.universe.size()));
  for (int tau = 1; tau <= max_tau; ++tau) {
    out.tau_reached = tau;
    std::vector<Design> seen;
    CompiledModel cm = build_design_model(problem, tau, seen, problem.lower_threshold, ordering);
    for (;;) {
      Stopwatch watch;
      // Any plan will do: with the budget tokens every plan already witnesses
      // GD-down <= l, so a complete greedy search replaces optimal search.
      SearchOptions opts = with_check_serialization(cm, deadline.next().search);
      opts.complete = true;
      const auto r = solve_satisficing(cm.model, opts);
      out.stats += r.stats;
      if (r.status == SearchStatus::kResourceExhausted) {
        out.reason = "design compilation exhausted its budget at size " + std::to_string(tau);
        return out;
      }
      if (r.status == SearchStatus::kUnsolvable) {
        out.log.push_back({tau, Design{}, "all designs of this size seen", watch.seconds()});
        break;
      }
      Design d = extract_design(cm, r.plan);
      if (d.size() != static_cast<std::size_t>(tau))
        throw Error("design compilation produced a design of the wrong size");
      out.log.push_back({tau, d, "candidate", watch.seconds()});
      const GroundedModel robot = apply_design(problem.robot, d);
      const GroundedModel human = apply_design(problem.human, d);
      Stopwatch check;
      const auto upper = upper_bound_within(robot, human, problem.upper_threshold, ordering,
                                            deadline.next(), &out.stats);
      if (upper == UpperCheck::kUnknown) {
        out.reason = "GD-up check exhausted its budget";
        return out;
      }
      const bool ok = upper == UpperCheck::kWithin;
      out.log.push_back({tau, d, ok ? "accepted" : "rejected: GD_up too large", check.seconds()});
      if (ok) return found(std::move(out), std::move(d));
      seen.push_back(std::move(d));
      cm = exclude_designs(cm, seen);
    }
  }
  out.status = DesignStatus::kNoDesign;
  return out;
}

DesignSearchResult naive_design_search(const DesignProblem& problem,
                                       const DesignSearchConfig& config) {
  problem.check();
  const std::size_t n = problem.universe.size();
  if (n > 24) throw Error("naive design search: universe too large");
  struct Candidate {
    std::int64_t cost;
    std::vector<std::size_t> members;
  };
  std::vector<Candidate> candidates;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Candidate c{0, {}};
    std::set<FluentId> touched;
    bool clash = false;
    for (std::size_t i = 0; i < n && !clash; ++i) {
      if (!(mask & (1u << i))) continue;
      c.members.push_back(i);
      c.cost += problem.universe[i].cost;
      clash = !touched.insert(problem.universe[i].fluent).second;
    }
    if (!clash) candidates.push_back(std::move(c));
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });

  DesignSearchResult out;
  const Deadline deadline(config);
  for (const auto& c : candidates) {
    std::vector<DesignAtom> atoms;
    for (std::size_t i : c.members) atoms.push_back(problem.universe[i]);
    Design d(std::move(atoms));
    const int size = static_cast<int>(d.size());
    out.tau_reached = std::max(out.tau_reached, size);
    switch (evaluate(problem, d, Ordering::kOrdered, deadline, out, size, false)) {
      case Verdict::kAccept: return found(std::move(out), std::move(d));
      case Verdict::kUnknown: return out;
      case Verdict::kReject: break;
    }
  }
  out.status = DesignStatus::kNoDesign;
  return out;
}

DesignSearchResult design_search(const DesignProblem& problem, const DesignSearchConfig& config) {
  if (config.method == DesignMethod::kNaive) return naive_design_search(problem, config);
  return find_minimal_design(problem, config);
}

BoundsPair compute_bounds_pair(const GroundedModel& robot, const GroundedModel& human,
                               bool optimal_plans, Ordering ordering, const SearchOptions& options) {
  BoundsPair out;
  const auto lower_mode = optimal_plans ? BoundMode::kGdDownOpt : BoundMode::kGdDown;
  const auto upper_mode = optimal_plans ? BoundMode::kGdUpOpt : BoundMode::kGdUp;
  const auto lower = compute_bound(build_joint_model(robot, human, CostScheme::of(lower_mode), ordering), options);
  out.stats += lower.stats;
  if (lower.status != BoundStatus::kOk) {
    out.status = lower.status;
    return out;
  }
  const auto upper = compute_bound(build_joint_model(robot, human, CostScheme::of(upper_mode), ordering), options);
  out.stats += upper.stats;
  if (upper.status != BoundStatus::kOk) {
    out.status = upper.status;
    return out;
  }
  out.status = BoundStatus::kOk;
  out.lower = lower.report->bound;
  out.upper = upper.report->bound;
  out.lower_report = lower.report;
  out.upper_report = upper.report;
  return out;
}

AggregatedBounds aggregate_bounds(const std::vector<std::pair<std::int64_t, std::int64_t>>& values,
                                  Aggregate mode) {
  if (values.empty()) throw Error("aggregate_bounds: no values");
  AggregatedBounds out{Rational(values.front().first), Rational(values.front().second)};
  if (mode == Aggregate::kAvg) {
    std::int64_t lo = 0, hi = 0;
    for (const auto& [l, u] : values) {
      lo += l;
      hi += u;
    }
    const auto n = static_cast<std::int64_t>(values.size());
    return {Rational(lo, n), Rational(hi, n)};
  }
  for (const auto& [l, u] : values) {
    if (mode == Aggregate::kMax) {
      out.lower = std::max(out.lower, Rational(l));
      out.upper = std::max(out.upper, Rational(u));
    } else {
      out.lower = std::min(out.lower, Rational(l));
      out.upper = std::min(out.upper, Rational(u));
    }
  }
  return out;
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace gsd
