#include "doctest.h"
#include "fixtures.h"
#include "gsd/heuristics.h"
#include "gsd/oracle.h"
#include "gsd/planner.h"

using namespace gsd;
using namespace gsd::testing;

namespace {

// Two routes to g: a direct action of cost 5 and a two-step chain of cost 1 + 1.
GroundedModel two_routes() {
  return make_model("routes", {"g", "m"},
                    {make_action("direct", {}, {0}, {}, {}, 5), make_action("first", {}, {1}),
                     make_action("second", {1}, {0})},
                    {}, {0});
}

}  // namespace

TEST_CASE("optimal search finds the cheapest plan") {
  const auto m = two_routes();
  for (auto h : {HeuristicKind::kHMax, HeuristicKind::kBlind}) {
    SearchOptions o;
    o.heuristic = h;
    const auto r = solve_optimal(m, o);
    REQUIRE(r.status == SearchStatus::kPlanFound);
    CHECK(r.plan.cost == CostVector{2});
    CHECK(format_plan(m, r.plan) == "<first, second>");
    CHECK(validate_plan(m, r.plan).valid);
  }
}

TEST_CASE("ties on the first component are broken by the later ones") {
  auto m = make_model("lex", {"g", "m"},
                      {make_action("a", {}, {0}), make_action("b", {}, {1}), make_action("c", {1}, {0})}, {},
                      {0});
  m.cost_dims = 2;
  m.actions[0].cost = CostVector{1, 9};
  m.actions[1].cost = CostVector{0, 1};
  m.actions[2].cost = CostVector{1, 1};
  const auto r = solve_optimal(m);
  REQUIRE(r.status == SearchStatus::kPlanFound);
  CHECK(r.plan.cost == CostVector{1, 2});
}

TEST_CASE("empty plan when the goal already holds") {
  const auto m = make_model("done", {"g"}, {make_action("a", {}, {0})}, {0}, {0});
  const auto r = solve_optimal(m);
  REQUIRE(r.status == SearchStatus::kPlanFound);
  CHECK(r.plan.empty());
}

TEST_CASE("unsolvable models are reported as such") {
  FixtureC fx;
  CHECK(solve_optimal(fx.human).status == SearchStatus::kUnsolvable);
  SearchOptions blind;
  blind.heuristic = HeuristicKind::kBlind;
  CHECK(solve_optimal(fx.human, blind).status == SearchStatus::kUnsolvable);
  CHECK(prove_unsolvable(fx.human, 100).status == ProofStatus::kUnsolvable);
  CHECK(prove_unsolvable(fx.robot, 100).status == ProofStatus::kSolvable);
}

TEST_CASE("greedy search needs the completeness flag to claim unsolvability") {
  // Relaxed-reachable but actually unreachable goal: b deletes the fluent c needs.
  const auto m = make_model("trap", {"g", "x", "y"},
                            {make_action("a", {}, {1}, {}, {2}), make_action("b", {}, {2}, {1}),
                             make_action("c", {1, 2}, {0})},
                            {}, {0});
  CHECK(solve_satisficing(m).status == SearchStatus::kResourceExhausted);
  SearchOptions o;
  o.complete = true;
  CHECK(solve_satisficing(m, o).status == SearchStatus::kUnsolvable);
  CHECK(solve_optimal(m).status == SearchStatus::kUnsolvable);
  const auto found = solve_satisficing(two_routes());
  REQUIRE(found.status == SearchStatus::kPlanFound);
  CHECK(validate_plan(two_routes(), found.plan).valid);
}

TEST_CASE("budgets stop the search") {
  SearchOptions o;
  o.budget.max_expansions = 0;
  CHECK(solve_optimal(two_routes(), o).status == SearchStatus::kResourceExhausted);
  CHECK(solve_satisficing(two_routes(), o).status == SearchStatus::kResourceExhausted);
  const auto chain = make_model("chain", {"a", "b", "c"},
                                {make_action("x", {}, {0}), make_action("y", {0}, {1}), make_action("z", {1}, {2})},
                                {}, {2});
  CHECK(prove_unsolvable(chain, 1).status == ProofStatus::kUnknown);
  CHECK(prove_unsolvable(chain, 10).status == ProofStatus::kSolvable);
}

TEST_CASE("h_max and h_add values") {
  const auto m = make_model("h", {"a", "b", "g"},
                            {make_action("x", {}, {0}, {}, {}, 2), make_action("y", {}, {1}, {}, {}, 3),
                             make_action("z", {0, 1}, {2}, {}, {}, 1)},
                            {}, {2});
  RelaxedExploration rx(m, 0);
  CHECK(rx.h_max(m.init) == 4);
  CHECK(rx.h_add(m.init) == 6);
  CHECK(rx.h_max(State::from_fluents(3, std::vector<FluentId>{0})) == 4);
  CHECK(rx.h_max(State::from_fluents(3, std::vector<FluentId>{2})) == 0);
  RelaxedExploration unit(m, -1);
  CHECK(unit.h_max(m.init) == 2);
  FixtureA a;
  RelaxedExploration ra(a.robot, 0);
  CHECK(ra.h_max(a.robot.init) == 1);
  CHECK(ra.h_add(a.robot.init) == 1);
  FixtureC fx;
  RelaxedExploration dead(fx.human, 0);
  CHECK(dead.h_max(fx.human.init) == kInfiniteCost);
}

TEST_CASE("conditional effects are relaxed operators") {
  GroundAction a = make_action("t", {}, {0});
  a.conditional.push_back({{0}, {}, {1}, {}});
  const auto m = make_model("ce", {"p", "g"}, {a}, {}, {1});
  RelaxedExploration rx(m, 0);
  CHECK(rx.h_max(m.init) == 2);
  const auto r = solve_optimal(m);
  REQUIRE(r.status == SearchStatus::kPlanFound);
  CHECK(r.plan.size() == 2);
}

TEST_CASE("serialized groups keep the optimum") {
  const auto m = make_model("ser", {"a", "b", "g"},
                            {make_action("ca", {}, {0}, {}, {0}), make_action("cb", {}, {1}, {}, {1}),
                             make_action("fin", {0, 1}, {2})},
                            {}, {2});
  SearchOptions o;
  o.serialized_groups = {{0}, {1}};
  const auto plain = solve_optimal(m);
  const auto ser = solve_optimal(m, o);
  REQUIRE(ser.status == SearchStatus::kPlanFound);
  CHECK(ser.plan.cost == plain.plan.cost);
  CHECK(format_plan(m, ser.plan) == "<ca, cb, fin>");
  CHECK(ser.stats.generated <= plain.stats.generated);
}

TEST_CASE("optimal cost agrees with the oracle on random models") {
  Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto inst = random_instance(rng);
    const auto r = solve_optimal(inst.robot);
    REQUIRE(r.status == SearchStatus::kPlanFound);
    CHECK(r.plan.cost[0] == *explore_reachable(inst.robot).min_goal_cost);
  }
}
