#include <algorithm>
#include <set>

#include "gsd/design.h"
#include "gsd/error.h"

namespace gsd {

std::vector<std::string> DesignProblem::check() const {
  robot.check();
  human.check();
  require_same_fluents(robot, human);
  if (lower_threshold < 0 || upper_threshold < 0)
    throw ModelError("design thresholds must be nonnegative");
  if (lower_threshold > upper_threshold)
    throw ModelError("lower threshold exceeds upper threshold");
  std::vector<std::string> warnings;
  std::set<DesignAtom> seen;
  for (const auto& a : universe) {
    if (a.fluent < 0 || static_cast<std::size_t>(a.fluent) >= robot.num_fluents())
      throw ModelError("design atom references unknown fluent " + std::to_string(a.fluent));
    if (a.cost < 0) throw ModelError("negative design cost");
    if (!seen.insert(a).second)
      throw ModelError("duplicate design atom " + format_atom(robot, a));
    if (a.polarity == Polarity::kRemove && !robot.init.test(a.fluent) &&
        !human.init.test(a.fluent))
      warnings.push_back("design atom " + format_atom(robot, a) +
                         " removes a fluent absent from both initial states");
  }
  return warnings;
}

bool DesignProblem::unit_costs() const {
  return std::all_of(universe.begin(), universe.end(),
                     [](const DesignAtom& a) { return a.cost == 1; });
}

GroundedModel apply_design(const GroundedModel& m, const Design& design) {
  GroundedModel out = m;
  for (const auto& a : design.atoms()) {
    if (a.polarity == Polarity::kAdd)
      out.init.set(a.fluent);
    else
      out.init.reset(a.fluent);
  }
  return out;
}

namespace {

std::vector<ConditionalEffect> exclusion_effects(const DesignLayout& layout,
                                                 const std::vector<Design>& excluded) {
  std::vector<ConditionalEffect> out;
  for (const auto& d : excluded) {
    ConditionalEffect ce;
    for (const auto& atom : d.atoms()) {
      auto it = std::find(layout.universe.begin(), layout.universe.end(), atom);
      if (it == layout.universe.end())
        throw ModelError("excluded design uses an atom outside the universe");
      ce.cond_pos.push_back(layout.markers[static_cast<std::size_t>(it - layout.universe.begin())]);
    }
    ce.del = {layout.unseen_design};
    out.push_back(std::move(ce));
  }
  return out;
}

std::string atom_tag(const GroundedModel& m, const DesignAtom& a) {
  return (a.polarity == Polarity::kAdd ? "add_" : "rem_") +
         m.fluents[static_cast<std::size_t>(a.fluent)];
}

}  // namespace

CompiledModel build_design_model(const DesignProblem& problem, int steps,
                                 const std::vector<Design>& excluded,
                                 int disagreement_budget, Ordering ordering) {
  problem.check();
  if (steps < 1) throw ModelError("design step count must be at least 1");
  if (static_cast<std::size_t>(steps) > problem.universe.size())
    throw ModelError("design step count exceeds the universe size");
  if (disagreement_budget < 0) throw ModelError("negative disagreement budget");

  const CompiledModel base = build_joint_model(problem.robot, problem.human,
                                               CostScheme::of(BoundMode::kGdDown), ordering);
  CompiledModel cm = base;
  GroundedModel& m = cm.model;
  m.name = problem.robot.name + "-design";
  m.actions.clear();
  cm.action_info.clear();
  cm.check_groups.assign(base.num_base_fluents, {});

  DesignLayout layout;
  layout.universe = problem.universe;
  layout.steps = steps;
  layout.disagreement_budget = disagreement_budget;
  auto add_fluent = [&](const std::string& name) {
    cm.fluent_roles.push_back(FluentRole::kDesign);
    return m.add_fluent(name);
  };
  layout.design_allowed = add_fluent("design_allowed");
  layout.unseen_design = add_fluent("unseen_design");
  for (int i = 1; i <= steps; ++i) layout.step_tokens.push_back(add_fluent("step_" + std::to_string(i)));
  for (int i = 1; i <= steps; ++i)
    layout.step_done_tokens.push_back(add_fluent("stepdone_" + std::to_string(i)));
  for (const auto& atom : problem.universe)
    layout.markers.push_back(add_fluent("dmark_" + atom_tag(problem.robot, atom)));
  for (int i = 1; i <= disagreement_budget; ++i)
    layout.budget_tokens.push_back(add_fluent("budget_" + std::to_string(i)));

  State init(m.num_fluents());
  for (FluentId f : base.model.init.fluents()) init.set(f);
  init.reset(cm.human_can_act);
  init.reset(cm.robot_can_act);
  init.set(layout.design_allowed);
  init.set(layout.unseen_design);
  for (FluentId f : layout.step_tokens) init.set(f);
  for (FluentId f : layout.budget_tokens) init.set(f);
  m.init = std::move(init);

  for (FluentId f : layout.step_done_tokens) m.goal.push_back(f);
  m.goal.push_back(layout.unseen_design);
  std::sort(m.goal.begin(), m.goal.end());

  auto push = [&](GroundAction a, ActionInfo info) {
    m.actions.push_back(std::move(a));
    cm.action_info.push_back(info);
    return static_cast<ActionId>(m.actions.size() - 1);
  };

  // Design actions come first so they are expanded first.
  for (std::size_t j = 0; j < problem.universe.size(); ++j) {
    const auto& atom = problem.universe[j];
    const FluentId fr = atom.fluent;
    const FluentId fh = cm.human_copy[static_cast<std::size_t>(fr)];
    std::vector<FluentId> blocked = {layout.markers[j]};
    for (std::size_t o = 0; o < problem.universe.size(); ++o)
      if (o != j && problem.universe[o].fluent == fr) blocked.push_back(layout.markers[o]);
    for (int i = 0; i < steps; ++i) {
      GroundAction a;
      a.name = "design_" + atom_tag(problem.robot, atom) + "_s" + std::to_string(i + 1);
      a.pre_pos = {layout.design_allowed, layout.step_tokens[static_cast<std::size_t>(i)]};
      a.pre_neg = blocked;
      a.add = {layout.step_done_tokens[static_cast<std::size_t>(i)], layout.markers[j]};
      a.del = {layout.step_tokens[static_cast<std::size_t>(i)]};
      if (atom.polarity == Polarity::kAdd) {
        a.add.push_back(fr);
        a.add.push_back(fh);
      } else {
        a.del.push_back(fr);
        a.del.push_back(fh);
      }
      a.cost = CostVector{};
      push(std::move(a), {ActionRole::kDesign, static_cast<int>(j), i});
    }
  }

  GroundAction done;
  done.name = "design_completed";
  done.pre_pos = {layout.design_allowed};
  done.pre_pos.insert(done.pre_pos.end(), layout.step_done_tokens.begin(),
                      layout.step_done_tokens.end());
  done.del = {layout.design_allowed};
  done.add = {cm.human_can_act};
  if (ordering == Ordering::kFlattened) done.add.push_back(cm.robot_can_act);
  done.cost = CostVector{};
  layout.design_completed = push(std::move(done), {ActionRole::kDesignCompleted, -1, -1});

  // Joint-model actions, minus the plain disagreement checks. Checks must not
  // fire during the design phase (both act tokens are false there too).
  for (std::size_t i = 0; i < base.model.actions.size(); ++i) {
    const auto& info = base.action_info[i];
    if (info.role == ActionRole::kCheckDisagree) continue;
    GroundAction a = base.model.actions[i];
    if (info.role == ActionRole::kCheckAgree) a.pre_neg.push_back(layout.design_allowed);
    const ActionId id = push(std::move(a), info);
    if (info.role == ActionRole::kCheckAgree)
      cm.check_groups[static_cast<std::size_t>(info.source)].push_back(id);
    if (info.role == ActionRole::kFlipHuman) cm.flip_human = id;
    if (info.role == ActionRole::kFlipRobot) cm.flip_robot = id;
  }

  // Budgeted disagreement copies.
  for (std::size_t f = 0; f < base.num_base_fluents; ++f) {
    for (int b = 0; b < disagreement_budget; ++b) {
      for (ActionId src : base.check_groups[f]) {
        if (base.action_info[static_cast<std::size_t>(src)].role != ActionRole::kCheckDisagree) continue;
        GroundAction a = base.model.actions[static_cast<std::size_t>(src)];
        const std::string prefix = a.name.rfind("chk_dis_r_", 0) == 0 ? "chk_dis_r_" : "chk_dis_h_";
        a.name = prefix + "b" + std::to_string(b + 1) + "_" + a.name.substr(prefix.size());
        a.pre_pos.push_back(layout.budget_tokens[static_cast<std::size_t>(b)]);
        a.pre_neg.push_back(layout.design_allowed);
        a.del.push_back(layout.budget_tokens[static_cast<std::size_t>(b)]);
        const ActionId id = push(std::move(a), {ActionRole::kCheckDisagree, static_cast<int>(f), b});
        cm.check_groups[f].push_back(id);
      }
    }
  }

  m.actions[static_cast<std::size_t>(layout.design_completed)].conditional =
      exclusion_effects(layout, excluded);
  layout.excluded = excluded;
  cm.design = std::move(layout);
  m.check();
  return cm;
}

Design extract_design(const CompiledModel& compiled, const Plan& plan) {
  if (!compiled.design) throw Error("not a design compilation");
  std::vector<DesignAtom> atoms;
  for (ActionId id : plan.steps) {
    const auto& info = compiled.action_info.at(static_cast<std::size_t>(id));
    if (info.role == ActionRole::kDesignCompleted) break;
    if (info.role == ActionRole::kDesign)
      atoms.push_back(compiled.design->universe.at(static_cast<std::size_t>(info.source)));
  }
  return Design(std::move(atoms));
}

CompiledModel exclude_designs(const CompiledModel& compiled, const std::vector<Design>& excluded) {
  if (!compiled.design) throw Error("not a design compilation");
  CompiledModel cm = compiled;
  cm.model.actions[static_cast<std::size_t>(cm.design->design_completed)].conditional =
      exclusion_effects(*cm.design, excluded);
  cm.design->excluded = excluded;
  return cm;
}

}  // namespace gsd
