#include "gsd/compilation.h"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "gsd/error.h"

namespace gsd {

const char* to_string(BoundMode m) {
  switch (m) {
    case BoundMode::kGdUp: return "gd_up";
    case BoundMode::kGdDown: return "gd_down";
    case BoundMode::kGdUpOpt: return "gd_up_opt";
    case BoundMode::kGdDownOpt: return "gd_down_opt";
  }
  return "?";
}

const char* to_string(Ordering o) {
  return o == Ordering::kOrdered ? "ordered" : "flattened";
}

CostVector CostScheme::agreement_cost() const {
  if (!penalizes_agreement()) return CostVector{};
  return optimal_restricted() ? CostVector(0, 0, 1) : CostVector(1, 0);
}

CostVector CostScheme::disagreement_cost() const {
  if (penalizes_agreement()) return CostVector{};
  return optimal_restricted() ? CostVector(0, 0, 1) : CostVector(1, 0);
}

namespace {

std::vector<FluentId> remap(const std::vector<FluentId>& ids,
                            const std::vector<FluentId>& map) {
  std::vector<FluentId> out;
  out.reserve(ids.size());
  for (FluentId f : ids) out.push_back(map[static_cast<std::size_t>(f)]);
  return out;
}

GroundAction copy_action(const GroundAction& a, const std::string& prefix,
                         const std::vector<FluentId>& map, FluentId token) {
  GroundAction c;
  c.name = prefix + a.name;
  c.pre_pos = remap(a.pre_pos, map);
  c.pre_pos.push_back(token);
  c.pre_neg = remap(a.pre_neg, map);
  c.add = remap(a.add, map);
  c.del = remap(a.del, map);
  for (const auto& ce : a.conditional)
    c.conditional.push_back({remap(ce.cond_pos, map), remap(ce.cond_neg, map),
                             remap(ce.add, map), remap(ce.del, map)});
  return c;
}

std::vector<FluentId> sorted(std::vector<FluentId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

CompiledModel build_joint_model(const GroundedModel& robot, const GroundedModel& human,
                                const CostScheme& scheme, Ordering ordering) {
  robot.check();
  human.check();
  require_same_fluents(robot, human);
  if (sorted(robot.goal) != sorted(human.goal))
    throw ModelError("robot and human goals differ");
  if (robot.cost_dims != 1 || human.cost_dims != 1)
    throw ModelError("joint model expects single-component source costs");

  const std::size_t n = robot.num_fluents();
  CompiledModel cm;
  cm.robot = robot;
  cm.human = human;
  cm.scheme = scheme;
  cm.ordering = ordering;
  cm.num_base_fluents = n;

  GroundedModel& m = cm.model;
  m.name = robot.name + "-joint";
  m.cost_dims = scheme.dims();

  std::vector<FluentId> identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    identity[i] = m.add_fluent(robot.fluents[i]);
    cm.fluent_roles.push_back(FluentRole::kRobot);
  }
  for (std::size_t i = 0; i < n; ++i) {
    cm.human_copy.push_back(m.add_fluent("hcopy_" + robot.fluents[i]));
    cm.fluent_roles.push_back(FluentRole::kHuman);
  }
  cm.robot_can_act = m.add_fluent("robot_can_act");
  cm.human_can_act = m.add_fluent("human_can_act");
  cm.fluent_roles.push_back(FluentRole::kHousekeeping);
  cm.fluent_roles.push_back(FluentRole::kHousekeeping);
  for (std::size_t i = 0; i < n; ++i) {
    cm.compare.push_back(m.add_fluent("cmp_" + robot.fluents[i]));
    cm.fluent_roles.push_back(FluentRole::kCompare);
  }

  m.init = State(m.num_fluents());
  for (FluentId f : robot.init.fluents()) m.init.set(f);
  for (FluentId f : human.init.fluents()) m.init.set(cm.human_copy[static_cast<std::size_t>(f)]);
  m.init.set(cm.human_can_act);
  if (ordering == Ordering::kFlattened) m.init.set(cm.robot_can_act);

  m.goal = robot.goal;
  for (FluentId f : human.goal) m.goal.push_back(cm.human_copy[static_cast<std::size_t>(f)]);
  for (FluentId f : cm.compare) m.goal.push_back(f);
  m.goal = sorted(m.goal);

  auto push = [&](GroundAction a, ActionInfo info) {
    m.actions.push_back(std::move(a));
    cm.action_info.push_back(info);
    return static_cast<ActionId>(m.actions.size() - 1);
  };

  // Action copies. Unit cost for the all-plans bounds; the original cost in
  // its own layer for the optimal-restricted bounds.
  for (std::size_t i = 0; i < robot.actions.size(); ++i) {
    auto a = copy_action(robot.actions[i], "r_", identity, cm.robot_can_act);
    a.cost = scheme.optimal_restricted() ? CostVector(0, robot.actions[i].cost[0], 0)
                                         : CostVector(0, 1);
    push(std::move(a), {ActionRole::kRobot, static_cast<int>(i), -1});
  }
  for (std::size_t i = 0; i < human.actions.size(); ++i) {
    auto a = copy_action(human.actions[i], "h_", cm.human_copy, cm.human_can_act);
    a.cost = scheme.optimal_restricted() ? CostVector(human.actions[i].cost[0], 0, 0)
                                         : CostVector(0, 1);
    push(std::move(a), {ActionRole::kHuman, static_cast<int>(i), -1});
  }

  GroundAction flip_h;
  flip_h.name = "flip_h";
  flip_h.pre_pos = remap(human.goal, cm.human_copy);
  flip_h.pre_pos.push_back(cm.human_can_act);
  flip_h.add = {cm.robot_can_act};
  flip_h.del = {cm.human_can_act};
  flip_h.cost = CostVector{};
  cm.flip_human = push(std::move(flip_h), {ActionRole::kFlipHuman, -1, -1});

  GroundAction flip_r;
  flip_r.name = "flip_r";
  flip_r.pre_pos = robot.goal;
  flip_r.pre_pos.push_back(cm.robot_can_act);
  flip_r.del = {cm.robot_can_act};
  flip_r.cost = CostVector{};
  cm.flip_robot = push(std::move(flip_r), {ActionRole::kFlipRobot, -1, -1});

  // Four checks per fluent; their preconditions partition the truth values
  // of (f, hcopy_f).
  cm.check_groups.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FluentId fr = static_cast<FluentId>(i);
    const FluentId fh = cm.human_copy[i];
    const FluentId fk = cm.compare[i];
    const std::vector<FluentId> idle = {cm.robot_can_act, cm.human_can_act, fk};
    const std::string& fname = robot.fluents[i];
    auto check = [&](const std::string& name, std::vector<FluentId> pos,
                     std::vector<FluentId> neg, bool agree) {
      GroundAction a;
      a.name = name;
      a.pre_pos = std::move(pos);
      a.pre_neg = std::move(neg);
      a.pre_neg.insert(a.pre_neg.end(), idle.begin(), idle.end());
      a.add = {fk};
      a.cost = agree ? scheme.agreement_cost() : scheme.disagreement_cost();
      auto id = push(std::move(a), {agree ? ActionRole::kCheckAgree : ActionRole::kCheckDisagree,
                                    static_cast<int>(i), -1});
      cm.check_groups[i].push_back(id);
    };
    check("chk_dis_r_" + fname, {fr}, {fh}, false);
    check("chk_dis_h_" + fname, {fh}, {fr}, false);
    check("chk_agree_t_" + fname, {fr, fh}, {}, true);
    check("chk_agree_f_" + fname, {}, {fr, fh}, true);
  }
  m.check();
  return cm;
}

CompiledModel build_forced_disagreement(const CompiledModel& compiled) {
  CompiledModel cm = compiled;
  GroundedModel& m = cm.model;
  const FluentId used = m.add_fluent("disagreement_used");
  cm.fluent_roles.push_back(FluentRole::kHousekeeping);
  State init(m.num_fluents());
  for (FluentId f : compiled.model.init.fluents()) init.set(f);
  m.init = std::move(init);
  m.goal.push_back(used);
  for (std::size_t i = 0; i < m.actions.size(); ++i)
    if (cm.action_info[i].role == ActionRole::kCheckDisagree) m.actions[i].add.push_back(used);
  cm.disagreement_used = used;
  m.name = compiled.model.name + "-forced";
  m.check();
  return cm;
}

Decomposition decompose_plan(const CompiledModel& compiled, const Plan& plan) {
  Decomposition d;
  std::vector<DesignAtom> atoms;
  for (ActionId id : plan.steps) {
    const auto& info = compiled.action_info.at(static_cast<std::size_t>(id));
    switch (info.role) {
      case ActionRole::kRobot: d.robot.steps.push_back(info.source); break;
      case ActionRole::kHuman: d.human.steps.push_back(info.source); break;
      case ActionRole::kCheckAgree:
        d.agree.push_back(info.source);
        ++d.checks;
        break;
      case ActionRole::kCheckDisagree:
        d.disagree.push_back(info.source);
        ++d.checks;
        break;
      case ActionRole::kDesign:
        atoms.push_back(compiled.design->universe.at(static_cast<std::size_t>(info.source)));
        break;
      case ActionRole::kFlipHuman:
      case ActionRole::kFlipRobot:
      case ActionRole::kDesignCompleted: break;
    }
  }
  d.human.cost = plan_cost(compiled.human, d.human);
  d.robot.cost = plan_cost(compiled.robot, d.robot);
  std::sort(d.agree.begin(), d.agree.end());
  std::sort(d.disagree.begin(), d.disagree.end());
  d.design = Design(std::move(atoms));
  return d;
}

Plan parse_named_plan(const CompiledModel& compiled, const std::string& text) {
  std::unordered_map<std::string, ActionId> by_name;
  for (std::size_t i = 0; i < compiled.model.actions.size(); ++i)
    by_name[compiled.model.actions[i].name] = static_cast<ActionId>(i);
  std::vector<ActionId> steps;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto c = line.find(';'); c != std::string::npos) line.erase(c);
    std::string name;
    for (char ch : line)
      if (ch != '(' && ch != ')' && !std::isspace(static_cast<unsigned char>(ch)))
        name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (name.empty()) continue;
    auto it = by_name.find(name);
    if (it == by_name.end()) throw Error("plan mentions unknown action " + name);
    steps.push_back(it->second);
  }
  return make_plan(compiled.model, std::move(steps));
}

CheckPhaseReport check_phase_structure(const CompiledModel& compiled, const Plan& plan) {
  CheckPhaseReport r;
  const auto& m = compiled.model;
  const bool budgeted = compiled.design && compiled.design->disagreement_budget > 0;
  std::vector<int> per_fluent(compiled.num_base_fluents, 0);
  State s = m.init;
  auto in_check_phase = [&](const State& st) {
    if (st.test(compiled.robot_can_act) || st.test(compiled.human_can_act)) return false;
    if (compiled.design && st.test(compiled.design->design_allowed)) return false;
    return true;
  };
  auto verify_partition = [&](const State& st) {
    if (budgeted || !in_check_phase(st)) return;
    for (std::size_t i = 0; i < compiled.num_base_fluents; ++i) {
      if (st.test(compiled.compare[i])) continue;
      int applicable = 0;
      for (ActionId a : compiled.check_groups[i])
        if (executable(st, m.actions[static_cast<std::size_t>(a)])) ++applicable;
      if (applicable != 1 && r.partition_holds) {
        r.partition_holds = false;
        r.problem = "fluent " + m.fluents[i] + " has " + std::to_string(applicable) +
                    " applicable checks";
      }
    }
  };
  for (ActionId id : plan.steps) {
    verify_partition(s);
    const auto& info = compiled.action_info.at(static_cast<std::size_t>(id));
    if (info.role == ActionRole::kCheckAgree || info.role == ActionRole::kCheckDisagree) {
      ++r.check_actions;
      ++per_fluent[static_cast<std::size_t>(info.source)];
    }
    s = apply_action(s, m.actions[static_cast<std::size_t>(id)]);
  }
  for (int c : per_fluent)
    if (c != 1) r.one_check_per_fluent = false;
  if (!r.one_check_per_fluent && r.problem.empty()) r.problem = "a fluent was not checked exactly once";
  return r;
}

}  // namespace gsd
