#include "gsd/model.h"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "gsd/error.h"

namespace gsd {

std::string CostVector::to_string(int dims) const {
  if (dims <= 1) return std::to_string(v[0]);
  std::string out = "(";
  for (int i = 0; i < dims; ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[static_cast<std::size_t>(i)]);
  }
  return out + ")";
}

State GroundedModel::goal_state() const {
  return State::from_fluents(num_fluents(), goal);
}

std::optional<FluentId> GroundedModel::find_fluent(
    std::string_view fluent_name) const {
  for (std::size_t i = 0; i < fluents.size(); ++i)
    if (fluents[i] == fluent_name) return static_cast<FluentId>(i);
  return std::nullopt;
}

std::optional<ActionId> GroundedModel::find_action(
    std::string_view action_name) const {
  for (std::size_t i = 0; i < actions.size(); ++i)
    if (actions[i].name == action_name) return static_cast<ActionId>(i);
  return std::nullopt;
}

FluentId GroundedModel::add_fluent(std::string fluent_name) {
  fluents.push_back(std::move(fluent_name));
  return static_cast<FluentId>(fluents.size() - 1);
}

namespace {

void check_ids(const GroundedModel& m, const std::vector<FluentId>& ids,
               const std::string& where) {
  for (FluentId f : ids) {
    if (f < 0 || static_cast<std::size_t>(f) >= m.num_fluents())
      throw ModelError(where + ": fluent id " + std::to_string(f) +
                       " out of range");
  }
}

bool disjoint(std::vector<FluentId> a, std::vector<FluentId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<FluentId> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(both));
  return both.empty();
}

}  // namespace

void GroundedModel::check() const {
  std::unordered_set<std::string> seen;
  for (const auto& f : fluents)
    if (!seen.insert(f).second) throw ModelError("duplicate fluent: " + f);
  if (init.size() != num_fluents())
    throw ModelError("initial state size does not match fluent count");
  check_ids(*this, goal, "goal");
  if (cost_dims < 1 || cost_dims > CostVector::kMaxDims)
    throw ModelError("cost_dims out of range");
  for (const auto& a : actions) {
    const std::string where = "action " + a.name;
    check_ids(*this, a.pre_pos, where);
    check_ids(*this, a.pre_neg, where);
    check_ids(*this, a.add, where);
    check_ids(*this, a.del, where);
    if (!disjoint(a.pre_pos, a.pre_neg))
      throw ModelError(where + ": contradictory preconditions");
    if (!disjoint(a.add, a.del))
      throw ModelError(where + ": add and delete effects overlap");
    for (const auto& ce : a.conditional) {
      check_ids(*this, ce.cond_pos, where);
      check_ids(*this, ce.cond_neg, where);
      check_ids(*this, ce.add, where);
      check_ids(*this, ce.del, where);
      if (!disjoint(ce.add, ce.del))
        throw ModelError(where + ": conditional add and delete effects overlap");
    }
    for (auto c : a.cost.v)
      if (c < 0) throw ModelError(where + ": negative cost");
  }
}

Plan make_plan(const GroundedModel& m, std::vector<ActionId> steps) {
  Plan p{std::move(steps), {}};
  p.cost = plan_cost(m, p);
  return p;
}

bool executable(const State& s, const GroundAction& a) {
  return s.contains_all(a.pre_pos) && s.contains_none(a.pre_neg);
}

State apply_action(const State& s, const GroundAction& a) {
  if (!executable(s, a))
    throw InvalidPlanError("action " + a.name + " is not executable", 0);
  State next = s;
  for (FluentId f : a.add) next.set(f);
  for (FluentId f : a.del) next.reset(f);
  for (const auto& ce : a.conditional) {
    if (!s.contains_all(ce.cond_pos) || !s.contains_none(ce.cond_neg)) continue;
    for (FluentId f : ce.add) next.set(f);
    for (FluentId f : ce.del) next.reset(f);
  }
  return next;
}

State apply_plan(const State& s, const Plan& plan, const GroundedModel& m) {
  State cur = s;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto id = plan.steps[i];
    if (id < 0 || static_cast<std::size_t>(id) >= m.num_actions())
      throw InvalidPlanError("unknown action id " + std::to_string(id), i);
    const auto& a = m.actions[static_cast<std::size_t>(id)];
    if (!executable(cur, a))
      throw InvalidPlanError(
          "step " + std::to_string(i) + " (" + a.name + ") is not executable", i);
    cur = apply_action(cur, a);
  }
  return cur;
}

PlanValidation validate_plan(const GroundedModel& m, const Plan& plan) {
  PlanValidation out;
  State cur = m.init;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto id = plan.steps[i];
    if (id < 0 || static_cast<std::size_t>(id) >= m.num_actions() ||
        !executable(cur, m.actions[static_cast<std::size_t>(id)])) {
      out.final_state = cur;
      out.failed_step = i;
      return out;
    }
    cur = apply_action(cur, m.actions[static_cast<std::size_t>(id)]);
  }
  out.executable = true;
  out.valid = m.is_goal(cur);
  out.final_state = std::move(cur);
  return out;
}

State state_divergence(const State& a, const State& b) {
  if (a.size() != b.size())
    throw ModelError("state divergence between states of different size");
  return a.symmetric_difference(b);
}

void require_same_fluents(const GroundedModel& a, const GroundedModel& b) {
  if (a.fluents != b.fluents)
    throw ModelError("models " + a.name + " and " + b.name +
                     " do not share the same fluent set");
}

State goal_state_divergence(const GroundedModel& m1, const Plan& p1,
                            const GroundedModel& m2, const Plan& p2) {
  require_same_fluents(m1, m2);
  auto v1 = validate_plan(m1, p1);
  if (!v1.valid)
    throw InvalidPlanError("first plan is not a valid plan of " + m1.name,
                           v1.failed_step.value_or(p1.size()));
  auto v2 = validate_plan(m2, p2);
  if (!v2.valid)
    throw InvalidPlanError("second plan is not a valid plan of " + m2.name,
                           v2.failed_step.value_or(p2.size()));
  return state_divergence(v1.final_state, v2.final_state);
}

CostVector plan_cost(const GroundedModel& m, const Plan& plan) {
  CostVector total;
  for (auto id : plan.steps) total += m.actions.at(static_cast<std::size_t>(id)).cost;
  return total;
}

std::string format_state(const GroundedModel& m, const State& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (FluentId f : s.fluents()) {
    if (!first) os << ", ";
    os << m.fluents[static_cast<std::size_t>(f)];
    first = false;
  }
  os << "}";
  return os.str();
}

std::string format_plan(const GroundedModel& m, const Plan& p) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (i > 0) os << ", ";
    os << m.actions[static_cast<std::size_t>(p.steps[i])].name;
  }
  os << ">";
  return os.str();
}

}  // namespace gsd
