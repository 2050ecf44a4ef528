#include "doctest.h"
#include "fixtures.h"
#include "gsd/error.h"
#include "gsd/model.h"

using namespace gsd;
using namespace gsd::testing;

TEST_CASE("state basics") {
  State s(70);
  CHECK(s.empty());
  s.set(3);
  s.set(69);
  CHECK(s.test(69));
  CHECK(s.count() == 2);
  CHECK(s.fluents() == std::vector<FluentId>{3, 69});
  s.reset(3);
  CHECK(s.fluents() == std::vector<FluentId>{69});
  const State t = State::from_fluents(70, std::vector<FluentId>{1, 69});
  CHECK(s.symmetric_difference(t).fluents() == std::vector<FluentId>{1});
  CHECK(t.is_superset_of(s));
  CHECK_FALSE(s.is_superset_of(t));
  CHECK(State::from_fluents(70, std::vector<FluentId>{69}) == s);
  CHECK(StateHash{}(s) == StateHash{}(State::from_fluents(70, std::vector<FluentId>{69})));
}

TEST_CASE("cost vectors compare lexicographically") {
  CHECK(CostVector{1, 100} < CostVector{2, 0});
  CHECK(CostVector{1, 2} < CostVector{1, 3});
  CHECK(CostVector{1, 2} + CostVector{0, 1, 4} == CostVector{1, 3, 4});
  CHECK(CostVector{3, 1}.to_string(1) == "3");
  CHECK(CostVector{3, 1}.to_string(2) == "(3,1)");
}

TEST_CASE("overlapping add and delete lists are rejected") {
  GroundedModel m = make_model("m", {"p", "q"}, {make_action("a", {}, {0}, {0})}, {}, {});
  CHECK_THROWS_AS(m.check(), ModelError);
}

TEST_CASE("model invariants") {
  FixtureA fx;
  CHECK_NOTHROW(fx.robot.check());
  auto bad = fx.robot;
  bad.actions[0].pre_pos = {7};
  CHECK_THROWS_AS(bad.check(), ModelError);
  bad = fx.robot;
  bad.actions[0].pre_pos = {1};
  bad.actions[0].pre_neg = {1};
  CHECK_THROWS_AS(bad.check(), ModelError);
  bad = fx.robot;
  bad.actions[0].cost = CostVector{-1};
  CHECK_THROWS_AS(bad.check(), ModelError);
  bad = fx.robot;
  bad.fluents[1] = "p";
  CHECK_THROWS_AS(bad.check(), ModelError);
}

TEST_CASE("applying actions") {
  const GroundedModel m = make_model(
      "m", {"a", "b", "c"},
      {make_action("x", {0}, {1}, {0}), make_action("y", {}, {2}, {}, {1})}, {0}, {1});
  const State s1 = apply_action(m.init, m.actions[0]);
  CHECK(s1.fluents() == std::vector<FluentId>{1});
  CHECK_FALSE(executable(s1, m.actions[0]));
  CHECK_FALSE(executable(s1, m.actions[1]));
  CHECK(executable(m.init, m.actions[1]));
  CHECK_THROWS_AS(apply_action(s1, m.actions[0]), InvalidPlanError);
}

TEST_CASE("conditional effects read the pre-action state") {
  GroundAction a = make_action("t", {}, {0});
  a.conditional.push_back({{0}, {}, {1}, {}});
  a.conditional.push_back({{}, {0}, {2}, {}});
  const GroundedModel m = make_model("m", {"p", "q", "r"}, {a}, {}, {});
  const State once = apply_action(m.init, m.actions[0]);
  CHECK(once.fluents() == std::vector<FluentId>{0, 2});
  const State twice = apply_action(once, m.actions[0]);
  CHECK(twice.fluents() == std::vector<FluentId>{0, 1, 2});
}

TEST_CASE("plan validation reports the failing step") {
  FixtureB fx;
  const Plan ok = make_plan(fx.robot, {1, 0});
  const auto v = validate_plan(fx.robot, ok);
  CHECK(v.valid);
  CHECK(v.final_state.fluents() == std::vector<FluentId>{FixtureB::g, FixtureB::h, FixtureB::w});
  CHECK(ok.cost == CostVector{2});

  auto no_h = fx.robot;
  no_h.init.reset(FixtureB::h);
  const auto bad = validate_plan(no_h, make_plan(no_h, {0, 1}));
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.executable);
  REQUIRE(bad.failed_step);
  CHECK(*bad.failed_step == 1);
  CHECK(bad.final_state.fluents() == std::vector<FluentId>{FixtureB::g});
  try {
    apply_plan(no_h.init, make_plan(no_h, {0, 1}), no_h);
    FAIL("expected InvalidPlanError");
  } catch (const InvalidPlanError& e) {
    CHECK(e.step() == 1);
  }

  const auto not_goal = validate_plan(fx.robot, make_plan(fx.robot, {1}));
  CHECK(not_goal.executable);
  CHECK_FALSE(not_goal.valid);
}

TEST_CASE("a plan that misses the goal") {
  FixtureA fx;
  const auto v = validate_plan(fx.robot, make_plan(fx.robot, {1}));
  CHECK_FALSE(v.valid);
  CHECK(v.final_state.fluents() == std::vector<FluentId>{FixtureA::q});
  CHECK(validate_plan(fx.robot, make_plan(fx.robot, {0})).valid);
}

TEST_CASE("goal state divergence of a plan pair") {
  FixtureA fx;
  const Plan rp = make_plan(fx.robot, {0, 1});
  const Plan hp = make_plan(fx.human, {0});
  CHECK(goal_state_divergence(fx.robot, rp, fx.human, hp).fluents() == std::vector<FluentId>{FixtureA::q});
  CHECK(goal_state_divergence(fx.robot, make_plan(fx.robot, {0}), fx.human, hp).empty());
  CHECK_THROWS_AS(goal_state_divergence(fx.robot, make_plan(fx.robot, {1}), fx.human, hp), InvalidPlanError);

  FixtureB other;
  CHECK_THROWS_AS(require_same_fluents(fx.robot, other.robot), ModelError);
  CHECK_NOTHROW(require_same_fluents(fx.robot, fx.human));
}

TEST_CASE("lookup and formatting") {
  FixtureB fx;
  CHECK(fx.robot.find_fluent("w") == FixtureB::w);
  CHECK_FALSE(fx.robot.find_fluent("nope"));
  CHECK(fx.robot.find_action("a_q") == 1);
  CHECK(format_state(fx.robot, fx.robot.init) == "{h}");
  CHECK(format_plan(fx.robot, make_plan(fx.robot, {1, 0})) == "<a_q, a_g>");
  CHECK(fx.robot.goal_state().fluents() == std::vector<FluentId>{FixtureB::g});
}
