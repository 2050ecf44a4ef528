#include <algorithm>

#include "doctest.h"
#include "fixtures.h"
#include "gsd/bounds.h"
#include "gsd/design.h"
#include "gsd/error.h"
#include "gsd/planner.h"

using namespace gsd;
using namespace gsd::testing;

namespace {

SearchResult solve(const CompiledModel& cm) { return solve_optimal(cm.model, with_check_serialization(cm, {})); }

}  // namespace

TEST_CASE("design problem validation") {
  FixtureC fx;
  CHECK(fx.problem().check().empty());
  CHECK(fx.problem().unit_costs());

  auto dup = fx.problem({{FixtureC::r, Polarity::kAdd, 1}, {FixtureC::r, Polarity::kAdd, 2}});
  CHECK_THROWS_AS(dup.check(), ModelError);
  auto bad_fluent = fx.problem({{9, Polarity::kAdd, 1}});
  CHECK_THROWS_AS(bad_fluent.check(), ModelError);
  auto negative = fx.problem({{FixtureC::r, Polarity::kAdd, -1}});
  CHECK_THROWS_AS(negative.check(), ModelError);
  auto inverted = fx.problem();
  inverted.lower_threshold = 2;
  inverted.upper_threshold = 1;
  CHECK_THROWS_AS(inverted.check(), ModelError);
  FixtureA a;
  auto mixed = fx.problem();
  mixed.human = a.human;
  CHECK_THROWS_AS(mixed.check(), ModelError);

  auto vacuous = fx.problem({{FixtureC::x, Polarity::kRemove, 1}});
  const auto warnings = vacuous.check();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("-x") != std::string::npos);
  CHECK_FALSE(fx.problem({{FixtureC::r, Polarity::kAdd, 3}}).unit_costs());
}

TEST_CASE("designs are sorted sets") {
  FixtureC fx;
  const Design d({{FixtureC::x, Polarity::kAdd, 1}, {FixtureC::r, Polarity::kAdd, 2}, {FixtureC::x, Polarity::kAdd, 1}});
  CHECK(d.size() == 2);
  CHECK(d.cost() == 3);
  CHECK(d.to_string(fx.robot) == "+r +x");
  CHECK(d.contains({FixtureC::r, Polarity::kAdd, 7}));
  CHECK_FALSE(d.contains({FixtureC::r, Polarity::kRemove, 1}));
  CHECK(Design{}.to_string(fx.robot) == "{}");
  const auto applied = apply_design(fx.human, d);
  CHECK(applied.init.fluents() == std::vector<FluentId>{FixtureC::r, FixtureC::x});
  const auto removed = apply_design(fx.robot, Design({{FixtureC::r, Polarity::kRemove, 1}}));
  CHECK(removed.init.empty());
}

TEST_CASE("design model layout") {
  FixtureC fx;
  const auto cm = build_design_model(fx.problem(), 1, {}, 0);
  REQUIRE(cm.design);
  const auto& layout = *cm.design;
  CHECK(layout.markers.size() == 2);
  CHECK(layout.step_tokens.size() == 1);
  CHECK(layout.budget_tokens.empty());
  const auto& m = cm.model;
  CHECK(m.find_action("design_add_r_s1"));
  CHECK(m.find_action("design_add_x_s1"));
  CHECK(m.find_fluent("dmark_add_r"));
  CHECK(m.init.test(layout.design_allowed));
  CHECK_FALSE(m.init.test(cm.human_can_act));
  CHECK_FALSE(m.init.test(cm.robot_can_act));
  for (std::size_t i = 0; i < m.num_actions(); ++i)
    CHECK(cm.action_info[i].role != ActionRole::kCheckDisagree);
  CHECK(std::find(m.goal.begin(), m.goal.end(), layout.unseen_design) != m.goal.end());

  const auto budgeted = build_design_model(fx.problem(), 2, {}, 2);
  CHECK(budgeted.design->budget_tokens.size() == 2);
  CHECK(budgeted.model.find_action("chk_dis_r_b2_g"));
  CHECK(budgeted.model.find_action("chk_dis_h_b1_x"));
  CHECK(budgeted.model.find_action("design_add_x_s2"));

  const auto flat = build_design_model(fx.problem(), 1, {}, 0, Ordering::kFlattened);
  const auto& done = flat.model.actions[static_cast<std::size_t>(flat.design->design_completed)];
  CHECK(std::find(done.add.begin(), done.add.end(), flat.robot_can_act) != done.add.end());
  CHECK(std::find(done.add.begin(), done.add.end(), flat.human_can_act) != done.add.end());

  CHECK_THROWS_AS(build_design_model(fx.problem(), 0, {}, 0), ModelError);
  CHECK_THROWS_AS(build_design_model(fx.problem(), 3, {}, 0), ModelError);
  CHECK_THROWS_AS(build_design_model(fx.problem(), 1, {}, -1), ModelError);
}

TEST_CASE("solving the design model yields the restoring atom") {
  FixtureC fx;
  const auto cm = build_design_model(fx.problem(), 1, {}, 0);
  const auto r = solve(cm);
  REQUIRE(r.status == SearchStatus::kPlanFound);
  const Design d = extract_design(cm, r.plan);
  CHECK(d.to_string(fx.robot) == "+r");
  const auto parts = decompose_plan(cm, r.plan);
  CHECK(parts.disagree.empty());
  CHECK(parts.design == d);
  const auto phase = check_phase_structure(cm, r.plan);
  CHECK(phase.one_check_per_fluent);
  CHECK(phase.partition_holds);
  // Every design step precedes design_completed, which precedes the first check.
  const auto& steps = r.plan.steps;
  const auto done = std::find(steps.begin(), steps.end(), cm.design->design_completed);
  REQUIRE(done != steps.end());
  for (auto it = steps.begin(); it != done; ++it)
    CHECK(cm.action_info[static_cast<std::size_t>(*it)].role == ActionRole::kDesign);
}

TEST_CASE("excluding the only working design makes the model unsolvable") {
  FixtureC fx;
  auto cm = build_design_model(fx.problem(), 1, {}, 0);
  cm = exclude_designs(cm, {Design({{FixtureC::r, Polarity::kAdd, 1}})});
  CHECK(solve(cm).status == SearchStatus::kUnsolvable);
  const auto rebuilt = build_design_model(fx.problem(), 1, {Design({{FixtureC::r, Polarity::kAdd, 1}})}, 0);
  CHECK(solve(rebuilt).status == SearchStatus::kUnsolvable);

  auto two = build_design_model(fx.problem(), 2, {}, 0);
  const auto r = solve(two);
  REQUIRE(r.status == SearchStatus::kPlanFound);
  CHECK(extract_design(two, r.plan).size() == 2);
  two = exclude_designs(two, {extract_design(two, r.plan)});
  CHECK(solve(two).status == SearchStatus::kUnsolvable);

  CHECK_THROWS_AS(exclude_designs(two, {Design({{FixtureC::g, Polarity::kAdd, 1}})}), ModelError);
}

TEST_CASE("opposite polarities on one fluent never combine") {
  FixtureC fx;
  const auto problem = fx.problem({{FixtureC::r, Polarity::kAdd, 1}, {FixtureC::r, Polarity::kRemove, 1}});
  const auto cm = build_design_model(problem, 2, {}, 0);
  CHECK(solve(cm).status == SearchStatus::kUnsolvable);
}

TEST_CASE("the disagreement budget admits bounded divergence") {
  const auto none = build_design_model(budget_instance(1, 2, 1, 0), 1, {}, 0);
  CHECK(solve(none).status == SearchStatus::kUnsolvable);
  const auto one = build_design_model(budget_instance(1, 2, 1, 1), 1, {}, 1);
  const auto r = solve(one);
  REQUIRE(r.status == SearchStatus::kPlanFound);
  const auto parts = decompose_plan(one, r.plan);
  CHECK(parts.disagree == std::vector<FluentId>{1});
  CHECK(extract_design(one, r.plan).to_string(one.robot) == "+r");
  const auto phase = check_phase_structure(one, r.plan);
  CHECK(phase.one_check_per_fluent);
}
