#include "gsd/heuristics.h"

#include <algorithm>
#include <functional>
#include <queue>

namespace gsd {

RelaxedExploration::RelaxedExploration(const GroundedModel& model, int cost_component)
    : goal_(model.goal), num_fluents_(model.num_fluents()) {
  auto add_op = [&](std::vector<FluentId> pre, std::vector<FluentId> eff, std::int64_t cost) {
    if (eff.empty()) return;
    std::sort(pre.begin(), pre.end());
    pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
    ops_.push_back({std::move(pre), std::move(eff), cost});
  };
  for (const auto& a : model.actions) {
    const std::int64_t c = cost_component < 0 ? 1 : a.cost[cost_component];
    add_op(a.pre_pos, a.add, c);
    for (const auto& ce : a.conditional) {
      auto pre = a.pre_pos;
      pre.insert(pre.end(), ce.cond_pos.begin(), ce.cond_pos.end());
      add_op(std::move(pre), ce.add, c);
    }
  }
  ops_by_pre_.resize(num_fluents_);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].pre.empty()) no_pre_ops_.push_back(static_cast<int>(i));
    for (FluentId f : ops_[i].pre) ops_by_pre_[static_cast<std::size_t>(f)].push_back(static_cast<int>(i));
  }
  fluent_cost_.resize(num_fluents_);
  op_cost_.resize(ops_.size());
  unsatisfied_.resize(ops_.size());
}

std::int64_t RelaxedExploration::h_max(const State& s) { return explore(s, true); }
std::int64_t RelaxedExploration::h_add(const State& s) { return explore(s, false); }

std::int64_t RelaxedExploration::explore(const State& s, bool use_max) {
  if (s.contains_all(goal_)) return 0;
  std::fill(fluent_cost_.begin(), fluent_cost_.end(), kInfiniteCost);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    unsatisfied_[i] = static_cast<int>(ops_[i].pre.size());
    op_cost_[i] = 0;
  }

  using Entry = std::pair<std::int64_t, FluentId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  auto reach = [&](FluentId f, std::int64_t c) {
    auto& cur = fluent_cost_[static_cast<std::size_t>(f)];
    if (c < cur) {
      cur = c;
      queue.emplace(c, f);
    }
  };
  for (FluentId f : s.fluents()) reach(f, 0);
  for (int op : no_pre_ops_)
    for (FluentId e : ops_[static_cast<std::size_t>(op)].eff) reach(e, ops_[static_cast<std::size_t>(op)].cost);

  std::size_t goals_left = 0;
  std::vector<char> is_goal(num_fluents_, 0);
  for (FluentId g : goal_)
    if (!is_goal[static_cast<std::size_t>(g)]) {
      is_goal[static_cast<std::size_t>(g)] = 1;
      ++goals_left;
    }

  while (!queue.empty()) {
    auto [c, f] = queue.top();
    queue.pop();
    if (c > fluent_cost_[static_cast<std::size_t>(f)]) continue;
    if (is_goal[static_cast<std::size_t>(f)]) {
      is_goal[static_cast<std::size_t>(f)] = 0;
      if (--goals_left == 0 && use_max) break;
    }
    for (int op_index : ops_by_pre_[static_cast<std::size_t>(f)]) {
      auto& op = ops_[static_cast<std::size_t>(op_index)];
      auto& acc = op_cost_[static_cast<std::size_t>(op_index)];
      acc = use_max ? std::max(acc, c) : acc + c;
      if (--unsatisfied_[static_cast<std::size_t>(op_index)] == 0)
        for (FluentId e : op.eff) reach(e, acc + op.cost);
    }
  }

  std::int64_t h = 0;
  for (FluentId g : goal_) {
    const auto c = fluent_cost_[static_cast<std::size_t>(g)];
    if (c == kInfiniteCost) return kInfiniteCost;
    h = use_max ? std::max(h, c) : h + c;
  }
  return h;
}

}  // namespace gsd
