#include "doctest.h"
#include "fixtures.h"
#include "gsd/design_search.h"
#include "gsd/error.h"
#include "gsd/oracle.h"

using namespace gsd;
using namespace gsd::testing;

namespace {

DesignSearchResult run(const DesignProblem& p, DesignMethod method) {
  DesignSearchConfig c;
  c.method = method;
  return design_search(p, c);
}

constexpr DesignMethod kAllMethods[] = {DesignMethod::kMain, DesignMethod::kMainFlattened, DesignMethod::kNaive};

}  // namespace

TEST_CASE("restoring the missing init fluent") {
  FixtureC fx;
  for (auto method : kAllMethods) {
    CAPTURE(to_string(method));
    const auto r = run(fx.problem(), method);
    REQUIRE(r.status == DesignStatus::kFound);
    CHECK(r.design->to_string(fx.robot) == "+r");
    CHECK_FALSE(r.log.empty());
  }
}

TEST_CASE("removing the gating fluent") {
  FixtureB fx;
  for (auto method : kAllMethods) {
    CAPTURE(to_string(method));
    const auto r = run(fx.problem(), method);
    REQUIRE(r.status == DesignStatus::kFound);
    CHECK(r.design->to_string(fx.robot) == "-h");
  }
  // With k = 1 the gap is tolerated and nothing needs to change.
  const auto r = run(fx.problem(1, 0), DesignMethod::kMain);
  REQUIRE(r.status == DesignStatus::kFound);
  CHECK(r.design->empty());
}

TEST_CASE("no design when the universe cannot help") {
  FixtureC fx;
  for (auto method : kAllMethods) {
    CAPTURE(to_string(method));
    const auto r = run(fx.problem({{FixtureC::x, Polarity::kAdd, 1}}), method);
    CHECK(r.status == DesignStatus::kNoDesign);
    CHECK_FALSE(r.design);
  }
}

TEST_CASE("identical models accept the empty design") {
  FixtureC fx;
  auto p = fx.problem();
  p.human = p.robot;
  const auto r = run(p, DesignMethod::kMain);
  REQUIRE(r.status == DesignStatus::kFound);
  CHECK(r.design->empty());
}

TEST_CASE("disagreement budget decides the budget instances") {
  for (int distractors : {0, 2}) {
    for (int chain : {1, 3}) {
      CAPTURE(distractors);
      CAPTURE(chain);
      const auto none = run(budget_instance(distractors, chain, 1, 0), DesignMethod::kMain);
      CHECK(none.status == DesignStatus::kNoDesign);
      const auto one = run(budget_instance(distractors, chain, 1, 1), DesignMethod::kMain);
      REQUIRE(one.status == DesignStatus::kFound);
      CHECK(one.design->to_string(budget_instance(0, chain, 1, 1).robot) == "+r");
    }
  }
}

TEST_CASE("non-unit costs use the cost-ordered enumeration") {
  FixtureC fx;
  const auto p = fx.problem({{FixtureC::r, Polarity::kAdd, 4}, {FixtureC::x, Polarity::kAdd, 1}});
  const auto r = run(p, DesignMethod::kMain);
  REQUIRE(r.status == DesignStatus::kFound);
  CHECK(r.design->to_string(fx.robot) == "+r");
  CHECK(r.log.front().event.find("non-unit") != std::string::npos);
}

TEST_CASE("exhausted budgets give unknown, never a design") {
  FixtureC fx;
  DesignSearchConfig c;
  c.search.budget.max_expansions = 0;
  for (auto method : kAllMethods) {
    c.method = method;
    const auto r = design_search(fx.problem(), c);
    CHECK(r.status == DesignStatus::kUnknown);
    CHECK_FALSE(r.design);
    CHECK_FALSE(r.reason.empty());
  }
}

TEST_CASE("upper bound test") {
  FixtureA fx;
  DesignSearchConfig c;
  CHECK(upper_bound_within(fx.robot, fx.human, 0, Ordering::kOrdered, c) == UpperCheck::kExceeded);
  CHECK(upper_bound_within(fx.robot, fx.human, 1, Ordering::kOrdered, c) == UpperCheck::kWithin);
  CHECK(upper_bound_within(fx.human, fx.human, 0, Ordering::kFlattened, c) == UpperCheck::kWithin);
  c.proof_state_cap = 1;
  CHECK(upper_bound_within(fx.robot, fx.human, 0, Ordering::kOrdered, c) == UpperCheck::kUnknown);
}

TEST_CASE("bounds pairs") {
  FixtureA fx;
  const auto all = compute_bounds_pair(fx.robot, fx.human, false);
  REQUIRE(all.status == BoundStatus::kOk);
  CHECK(all.lower == 0);
  CHECK(all.upper == 1);
  const auto opt = compute_bounds_pair(fx.robot, fx.human, true);
  REQUIRE(opt.status == BoundStatus::kOk);
  CHECK(opt.upper == 0);
  FixtureC c;
  CHECK(compute_bounds_pair(c.robot, c.human, false).status == BoundStatus::kNoValidPlan);
}

TEST_CASE("aggregation of bound pairs") {
  const std::vector<std::pair<std::int64_t, std::int64_t>> v = {{0, 1}, {1, 3}, {0, 2}};
  const auto mx = aggregate_bounds(v, Aggregate::kMax);
  CHECK(format_rational(mx.lower) == "1");
  CHECK(format_rational(mx.upper) == "3");
  const auto mn = aggregate_bounds(v, Aggregate::kMin);
  CHECK(format_rational(mn.upper) == "1");
  const auto avg = aggregate_bounds(v, Aggregate::kAvg);
  CHECK(format_rational(avg.lower) == "1/3");
  CHECK(format_rational(avg.upper) == "2");
  CHECK_THROWS_AS(aggregate_bounds({}, Aggregate::kAvg), Error);
}

TEST_CASE("method names") {
  CHECK(parse_design_method("main-fl") == DesignMethod::kMainFlattened);
  CHECK(std::string(to_string(DesignMethod::kNaive)) == "naive");
  CHECK_THROWS_AS(parse_design_method("fast"), Error);
}

TEST_CASE("main and naive agree with the oracle on random problems") {
  Rng rng(5);
  RandomInstanceOptions opts;
  opts.full_state_goal = true;
  for (int i = 0; i < 15; ++i) {
    const auto p = random_design_problem(rng, 4, opts);
    const auto truth = oracle_design(p, p.upper_threshold, p.lower_threshold);
    for (auto method : {DesignMethod::kMain, DesignMethod::kNaive}) {
      const auto r = run(p, method);
      REQUIRE(r.status != DesignStatus::kUnknown);
      CHECK((r.status == DesignStatus::kFound) == truth.min_size.has_value());
      if (r.design) {
        CHECK(r.design->size() == *truth.min_size);
        CHECK(std::find(truth.designs.begin(), truth.designs.end(), *r.design) != truth.designs.end());
      }
    }
  }
}
