#include "gsd/oracle.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "gsd/error.h"

namespace gsd {

const char* to_string(Restriction r) {
  return r == Restriction::kAllPlans ? "all" : "optimal";
}

ReachabilityIndex explore_reachable(const GroundedModel& m, const State& from, std::size_t cap) {
  ReachabilityIndex idx;
  using Entry = std::pair<std::int64_t, State>;
  auto later = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first > b.first;
    return b.second < a.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> open(later);
  idx.cost.emplace(from, 0);
  open.emplace(0, from);
  std::unordered_map<State, bool, StateHash> closed;
  while (!open.empty()) {
    auto [g, s] = open.top();
    open.pop();
    if (closed.count(s)) continue;
    closed.emplace(s, true);
    if (m.is_goal(s)) {
      idx.goal_states.push_back(s);
      if (!idx.min_goal_cost) idx.min_goal_cost = g;
    }
    for (const auto& a : m.actions) {
      if (!executable(s, a)) continue;
      State t = apply_action(s, a);
      const std::int64_t ng = g + a.cost[0];
      auto it = idx.cost.find(t);
      if (it == idx.cost.end()) {
        if (idx.cost.size() >= cap) throw Error("oracle state cap exceeded");
        idx.cost.emplace(t, ng);
        open.emplace(ng, std::move(t));
      } else if (ng < it->second) {
        it->second = ng;
        open.emplace(ng, std::move(t));
      }
    }
  }
  std::sort(idx.goal_states.begin(), idx.goal_states.end());
  return idx;
}

ReachabilityIndex explore_reachable(const GroundedModel& m, std::size_t cap) {
  return explore_reachable(m, m.init, cap);
}

std::vector<State> goal_end_states(const GroundedModel& m, Restriction restriction,
                                   std::size_t cap) {
  const auto idx = explore_reachable(m, cap);
  if (restriction == Restriction::kAllPlans) return idx.goal_states;
  std::vector<State> out;
  for (const auto& s : idx.goal_states)
    if (idx.cost.at(s) == *idx.min_goal_cost) out.push_back(s);
  return out;
}

OracleBounds oracle_bounds(const GroundedModel& robot, const GroundedModel& human,
                           Restriction restriction, std::size_t cap) {
  require_same_fluents(robot, human);
  const auto hs = goal_end_states(human, restriction, cap);
  const auto rs = goal_end_states(robot, restriction, cap);
  if (hs.empty() || rs.empty()) throw Error("oracle: a model has no valid plan");
  OracleBounds b{std::numeric_limits<std::int64_t>::max(), 0};
  for (const auto& h : hs) {
    for (const auto& r : rs) {
      const auto d = static_cast<std::int64_t>(h.symmetric_difference(r).count());
      b.lower = std::min(b.lower, d);
      b.upper = std::max(b.upper, d);
    }
  }
  return b;
}

std::optional<std::int64_t> exact_goal_distance(const GroundedModel& m, const State& from,
                                                std::size_t cap) {
  return explore_reachable(m, from, cap).min_goal_cost;
}

OracleDesignResult oracle_design(const DesignProblem& problem, int k, int l) {
  const std::size_t n = problem.universe.size();
  if (n > 20) throw Error("oracle: design universe too large");
  OracleDesignResult out;
  for (std::size_t size = 0; size <= n && !out.min_size; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      std::vector<DesignAtom> atoms;
      std::set<FluentId> touched;
      bool clash = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        atoms.push_back(problem.universe[i]);
        clash |= !touched.insert(problem.universe[i].fluent).second;
      }
      if (clash) continue;
      const Design d(std::move(atoms));
      const auto rh = goal_end_states(apply_design(problem.human, d), Restriction::kAllPlans);
      const auto rr = goal_end_states(apply_design(problem.robot, d), Restriction::kAllPlans);
      if (rh.empty() || rr.empty()) continue;
      const auto b = oracle_bounds(apply_design(problem.robot, d), apply_design(problem.human, d),
                                   Restriction::kAllPlans);
      if (b.lower <= l && b.upper <= k) {
        out.min_size = size;
        out.designs.push_back(d);
      }
    }
  }
  std::sort(out.designs.begin(), out.designs.end());
  return out;
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

std::vector<std::size_t> sample_indices(Rng& rng, std::size_t n, std::size_t count) {
  if (count > n) throw Error("sample_indices: count exceeds population");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(
        uniform_int(rng, static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

std::vector<FluentId> pick_fluents(Rng& rng, int n, int lo, int hi) {
  const auto count = static_cast<std::size_t>(uniform_int(rng, lo, std::min(hi, n)));
  std::vector<FluentId> out;
  for (std::size_t i : sample_indices(rng, static_cast<std::size_t>(n), count))
    out.push_back(static_cast<FluentId>(i));
  return out;
}

std::vector<FluentId> minus(const std::vector<FluentId>& a, const std::vector<FluentId>& b) {
  std::vector<FluentId> out;
  for (FluentId f : a)
    if (std::find(b.begin(), b.end(), f) == b.end()) out.push_back(f);
  return out;
}

GroundedModel random_robot(Rng& rng, const RandomInstanceOptions& o) {
  GroundedModel m;
  m.name = "random";
  const int nf = static_cast<int>(uniform_int(rng, o.min_fluents, o.max_fluents));
  for (int i = 0; i < nf; ++i) m.fluents.push_back("f" + std::to_string(i));
  const int na = static_cast<int>(uniform_int(rng, o.min_actions, o.max_actions));
  for (int i = 0; i < na; ++i) {
    GroundAction a;
    a.name = "a" + std::to_string(i);
    a.pre_pos = pick_fluents(rng, nf, 0, 2);
    a.pre_neg = minus(pick_fluents(rng, nf, 0, 1), a.pre_pos);
    a.add = pick_fluents(rng, nf, 1, 2);
    a.del = minus(pick_fluents(rng, nf, 0, 2), a.add);
    a.cost = CostVector{uniform_int(rng, 1, o.max_cost)};
    m.actions.push_back(std::move(a));
  }
  m.init = State::from_fluents(m.num_fluents(), pick_fluents(rng, nf, 0, nf));
  // Goal from a short random walk.
  State s = m.init;
  const int walk = static_cast<int>(uniform_int(rng, 1, 4));
  for (int i = 0; i < walk; ++i) {
    std::vector<const GroundAction*> app;
    for (const auto& a : m.actions)
      if (executable(s, a)) app.push_back(&a);
    if (app.empty()) break;
    s = apply_action(s, *app[static_cast<std::size_t>(
                            uniform_int(rng, 0, static_cast<std::int64_t>(app.size()) - 1))]);
  }
  const auto reached = s.fluents();
  if (o.full_state_goal || reached.empty()) {
    m.goal = reached;
  } else {
    const auto count = static_cast<std::size_t>(
        uniform_int(rng, 1, std::min<std::int64_t>(2, static_cast<std::int64_t>(reached.size()))));
    for (std::size_t i : sample_indices(rng, reached.size(), count)) m.goal.push_back(reached[i]);
  }
  return m;
}

bool goal_reachable(const GroundedModel& m) {
  return explore_reachable(m).min_goal_cost.has_value();
}

}  // namespace

RandomInstance random_instance(Rng& rng, const RandomInstanceOptions& options) {
  for (;;) {
    RandomInstance inst;
    inst.robot = random_robot(rng, options);
    inst.human = inst.robot;
    const auto init = inst.robot.init.fluents();
    const auto del_init = static_cast<std::size_t>(uniform_int(
        rng, 0, std::min<std::int64_t>(options.max_init_deletions,
                                       static_cast<std::int64_t>(init.size()))));
    for (std::size_t i : sample_indices(rng, init.size(), del_init)) {
      inst.human.init.reset(init[i]);
      inst.deleted_init.push_back(init[i]);
    }
    const auto del_act = static_cast<std::size_t>(uniform_int(
        rng, 0, std::min<std::int64_t>(options.max_action_deletions,
                                       static_cast<std::int64_t>(inst.human.actions.size()) - 1)));
    const auto removed = sample_indices(rng, inst.human.actions.size(), del_act);
    for (auto it = removed.rbegin(); it != removed.rend(); ++it)
      inst.human.actions.erase(inst.human.actions.begin() + static_cast<std::ptrdiff_t>(*it));
    inst.human.name = "random-human";
    if (goal_reachable(inst.robot) && goal_reachable(inst.human)) return inst;
  }
}

DesignProblem random_design_problem(Rng& rng, std::size_t max_universe,
                                    const RandomInstanceOptions& options) {
  RandomInstance inst = random_instance(rng, options);
  DesignProblem dp;
  const auto nf = static_cast<std::int64_t>(inst.robot.num_fluents());
  std::set<FluentId> used;
  for (FluentId f : inst.deleted_init) {
    if (dp.universe.size() >= max_universe) break;
    dp.universe.push_back({f, Polarity::kAdd, 1});
    used.insert(f);
  }
  const auto extras = uniform_int(rng, 0, 3);
  for (std::int64_t i = 0; i < extras && dp.universe.size() < max_universe; ++i) {
    const auto f = static_cast<FluentId>(uniform_int(rng, 0, nf - 1));
    if (!used.insert(f).second) continue;
    dp.universe.push_back({f, uniform_int(rng, 0, 1) ? Polarity::kAdd : Polarity::kRemove, 1});
  }
  if (dp.universe.empty() && max_universe > 0)
    dp.universe.push_back({static_cast<FluentId>(uniform_int(rng, 0, nf - 1)),
                           uniform_int(rng, 0, 1) ? Polarity::kAdd : Polarity::kRemove, 1});
  std::sort(dp.universe.begin(), dp.universe.end());
  dp.robot = std::move(inst.robot);
  dp.human = std::move(inst.human);
  return dp;
}

namespace {

// Breadth-first shortest action sequence from s to a goal state.
std::optional<std::vector<ActionId>> path_to_goal(const GroundedModel& m, const State& from) {
  std::unordered_map<State, std::pair<State, ActionId>, StateHash> parent;
  std::deque<State> queue{from};
  parent.emplace(from, std::make_pair(from, -1));
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    if (m.is_goal(s)) {
      std::vector<ActionId> steps;
      while (!(s == from)) {
        const auto& [prev, a] = parent.at(s);
        steps.push_back(a);
        s = prev;
      }
      std::reverse(steps.begin(), steps.end());
      return steps;
    }
    for (std::size_t i = 0; i < m.actions.size(); ++i) {
      if (!executable(s, m.actions[i])) continue;
      State t = apply_action(s, m.actions[i]);
      if (parent.count(t)) continue;
      parent.emplace(t, std::make_pair(s, static_cast<ActionId>(i)));
      queue.push_back(std::move(t));
    }
  }
  return std::nullopt;
}

std::vector<ActionId> applicable(const GroundedModel& m, const State& s) {
  std::vector<ActionId> out;
  for (std::size_t i = 0; i < m.actions.size(); ++i)
    if (executable(s, m.actions[i])) out.push_back(static_cast<ActionId>(i));
  return out;
}

}  // namespace

std::optional<Plan> random_valid_plan(const GroundedModel& m, Rng& rng, int max_walk) {
  std::vector<ActionId> steps;
  State s = m.init;
  const auto walk = uniform_int(rng, 0, max_walk);
  for (std::int64_t i = 0; i < walk; ++i) {
    if (m.is_goal(s) && uniform_int(rng, 0, 2) == 0) break;
    const auto app = applicable(m, s);
    if (app.empty()) break;
    const ActionId a =
        app[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(app.size()) - 1))];
    steps.push_back(a);
    s = apply_action(s, m.actions[static_cast<std::size_t>(a)]);
  }
  auto rest = path_to_goal(m, s);
  if (!rest) {
    rest = path_to_goal(m, m.init);
    if (!rest) return std::nullopt;
    steps.clear();
  }
  steps.insert(steps.end(), rest->begin(), rest->end());
  return make_plan(m, std::move(steps));
}

State random_reachable_state(const GroundedModel& m, Rng& rng, int max_walk) {
  State s = m.init;
  const auto walk = uniform_int(rng, 0, max_walk);
  for (std::int64_t i = 0; i < walk; ++i) {
    const auto app = applicable(m, s);
    if (app.empty()) break;
    const ActionId a =
        app[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(app.size()) - 1))];
    s = apply_action(s, m.actions[static_cast<std::size_t>(a)]);
  }
  return s;
}

}  // namespace gsd
