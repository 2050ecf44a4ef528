#pragma once

#include <string>
#include <vector>

#include "gsd/design.h"
#include "gsd/model.h"

namespace gsd::testing {

inline GroundAction make_action(std::string name, std::vector<FluentId> pre_pos,
                                std::vector<FluentId> add, std::vector<FluentId> del = {},
                                std::vector<FluentId> pre_neg = {}, std::int64_t cost = 1) {
  GroundAction a;
  a.name = std::move(name);
  a.pre_pos = std::move(pre_pos);
  a.pre_neg = std::move(pre_neg);
  a.add = std::move(add);
  a.del = std::move(del);
  a.cost = CostVector{cost};
  return a;
}

inline GroundedModel make_model(std::string name, std::vector<std::string> fluents,
                                std::vector<GroundAction> actions, std::vector<FluentId> init,
                                std::vector<FluentId> goal) {
  GroundedModel m;
  m.name = std::move(name);
  m.fluents = std::move(fluents);
  m.actions = std::move(actions);
  m.init = State::from_fluents(m.fluents.size(), init);
  m.goal = std::move(goal);
  return m;
}

// F = {p, q}, I = {}, G = {p}. The robot can also make q true; the human
// does not know about that action.
struct FixtureA {
  static constexpr FluentId p = 0, q = 1;
  GroundedModel robot = make_model("a", {"p", "q"},
                                   {make_action("a_p", {}, {p}), make_action("a_q", {}, {q})}, {}, {p});
  GroundedModel human = make_model("a", {"p", "q"}, {make_action("a_p", {}, {p})}, {}, {p});
};

// F = {g, h, w}, I = {h}, G = {g}. Only the robot can make w true, and only
// while h holds; removing h from the initial state closes the gap.
struct FixtureB {
  static constexpr FluentId g = 0, h = 1, w = 2;
  GroundedModel robot = make_model(
      "b", {"g", "h", "w"}, {make_action("a_g", {}, {g}), make_action("a_q", {h}, {w})}, {h}, {g});
  GroundedModel human = make_model("b", {"g", "h", "w"}, {make_action("a_g", {}, {g})}, {h}, {g});

  DesignProblem problem(int k = 0, int l = 0) const {
    return DesignProblem{robot, human, {{h, Polarity::kRemove, 1}}, l, k};
  }
};

// F = {g, r, x}; the human is missing r, which gates the only way to g.
struct FixtureC {
  static constexpr FluentId g = 0, r = 1, x = 2;
  GroundedModel robot = make_model("c", {"g", "r", "x"}, {make_action("a_g", {r}, {g})}, {r}, {g});
  GroundedModel human = make_model("c", {"g", "r", "x"}, {make_action("a_g", {r}, {g})}, {}, {g});

  DesignProblem problem(std::vector<DesignAtom> universe = {{r, Polarity::kAdd, 1}, {x, Polarity::kAdd, 1}},
                        int k = 0, int l = 0) const {
    return DesignProblem{robot, human, std::move(universe), l, k};
  }
};

// One unavoidable mismatch: the robot's last chain action also sets m, the
// human's does not. The human lacks r, which gates the chain towards g; the
// distractors are useless design atoms. With l = 0 no design exists, with
// l = 1 the design {+r} does.
inline DesignProblem budget_instance(int distractors, int chain, int k, int l) {
  std::vector<std::string> fluents = {"g", "m", "r"};
  for (int i = 1; i < chain; ++i) fluents.push_back("s" + std::to_string(i));
  const auto first_distractor = static_cast<FluentId>(fluents.size());
  for (int i = 0; i < distractors; ++i) fluents.push_back("z" + std::to_string(i));
  const FluentId g = 0, m = 1, r = 2;
  std::vector<GroundAction> robot_actions, human_actions;
  FluentId prev = r;
  for (int i = 1; i <= chain; ++i) {
    const std::string name = "step" + std::to_string(i);
    if (i == chain) {
      robot_actions.push_back(make_action(name, {prev}, {g, m}));
      human_actions.push_back(make_action(name, {prev}, {g}));
    } else {
      const auto next = static_cast<FluentId>(2 + i);
      robot_actions.push_back(make_action(name, {prev}, {next}));
      human_actions.push_back(make_action(name, {prev}, {next}));
      prev = next;
    }
  }
  GroundedModel robot = make_model("budget", fluents, robot_actions, {r}, {g});
  GroundedModel human = make_model("budget", fluents, human_actions, {}, {g});
  std::vector<DesignAtom> universe = {{r, Polarity::kAdd, 1}};
  for (int i = 0; i < distractors; ++i)
    universe.push_back({static_cast<FluentId>(first_distractor + i), Polarity::kAdd, 1});
  return DesignProblem{robot, human, universe, l, k};
}

}  // namespace gsd::testing
