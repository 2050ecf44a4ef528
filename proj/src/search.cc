#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "gsd/error.h"
#include "gsd/heuristics.h"
#include "gsd/planner.h"

namespace gsd {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kPlanFound: return "plan";
    case SearchStatus::kUnsolvable: return "unsolvable";
    case SearchStatus::kResourceExhausted: return "resource-exhausted";
  }
  return "?";
}

const char* to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::kUnsolvable: return "unsolvable";
    case ProofStatus::kSolvable: return "solvable";
    case ProofStatus::kUnknown: return "unknown";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  Timer() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
};

/// Applicable-action enumeration with the serialized-group reduction.
class SuccessorGenerator {
 public:
  SuccessorGenerator(const GroundedModel& m, const std::vector<std::vector<ActionId>>& groups)
      : model_(m), group_of_(m.num_actions(), -1) {
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (ActionId a : groups[g]) group_of_.at(static_cast<std::size_t>(a)) = static_cast<int>(g);
    has_groups_ = !groups.empty();
  }

  void applicable(const State& s, std::vector<ActionId>& out) const {
    out.clear();
    bool all_grouped = true;
    int best_group = -1;
    for (std::size_t i = 0; i < model_.actions.size(); ++i) {
      if (!executable(s, model_.actions[i])) continue;
      out.push_back(static_cast<ActionId>(i));
      const int g = group_of_[i];
      if (g < 0) {
        all_grouped = false;
      } else if (best_group < 0 || g < best_group) {
        best_group = g;
      }
    }
    if (has_groups_ && all_grouped && best_group >= 0)
      std::erase_if(out, [&](ActionId a) { return group_of_[static_cast<std::size_t>(a)] != best_group; });
  }

 private:
  const GroundedModel& model_;
  std::vector<int> group_of_;
  bool has_groups_ = false;
};

Plan extract_plan(const GroundedModel& m, const std::vector<int>& parent,
                  const std::vector<ActionId>& via, int node) {
  std::vector<ActionId> steps;
  while (parent[static_cast<std::size_t>(node)] >= 0) {
    steps.push_back(via[static_cast<std::size_t>(node)]);
    node = parent[static_cast<std::size_t>(node)];
  }
  std::reverse(steps.begin(), steps.end());
  return make_plan(m, std::move(steps));
}

bool out_of_budget(const SearchBudget& b, const SearchStats& st, const Timer& t) {
  if (st.expanded >= b.max_expansions) return true;
  return (st.expanded & 255U) == 0 && t.seconds() > b.seconds;
}

}  // namespace

SearchResult solve_optimal(const GroundedModel& model, const SearchOptions& options) {
  Timer timer;
  SearchResult result;
  const SuccessorGenerator succ(model, options.serialized_groups);
  std::unique_ptr<RelaxedExploration> relaxed;
  if (options.heuristic == HeuristicKind::kHMax)
    relaxed = std::make_unique<RelaxedExploration>(model, 0);
  auto heuristic = [&](const State& s) -> std::int64_t {
    if (relaxed) return relaxed->h_max(s);
    (void)s;
    return 0;
  };

  std::vector<State> states;
  std::vector<CostVector> g;
  std::vector<std::int64_t> h;
  std::vector<int> parent;
  std::vector<ActionId> via;
  std::vector<char> closed;
  std::unordered_map<State, int, StateHash> index;

  struct Entry {
    CostVector key;
    std::int64_t h;
    std::uint64_t order;
    int node;
    CostVector g;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.key != b.key) return a.key > b.key;
    if (a.h != b.h) return a.h > b.h;
    return a.order > b.order;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
  std::uint64_t order = 0;

  auto push = [&](int node) {
    CostVector key = g[static_cast<std::size_t>(node)];
    key[0] += h[static_cast<std::size_t>(node)];
    open.push({key, h[static_cast<std::size_t>(node)], order++, node, g[static_cast<std::size_t>(node)]});
    result.stats.peak_frontier = std::max<std::uint64_t>(result.stats.peak_frontier, open.size());
  };

  auto add_node = [&](State s, CostVector cost, int par, ActionId a, std::int64_t hv) {
    const int id = static_cast<int>(states.size());
    index.emplace(s, id);
    states.push_back(std::move(s));
    g.push_back(cost);
    h.push_back(hv);
    parent.push_back(par);
    via.push_back(a);
    closed.push_back(0);
    return id;
  };

  {
    const auto h0 = heuristic(model.init);
    const int root = add_node(model.init, CostVector{}, -1, -1, h0);
    if (h0 != kInfiniteCost) push(root);
  }

  std::vector<ActionId> applicable;
  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    const auto node = static_cast<std::size_t>(top.node);
    if (closed[node] || top.g != g[node]) continue;
    closed[node] = 1;

    if (model.is_goal(states[node])) {
      result.status = SearchStatus::kPlanFound;
      result.plan = extract_plan(model, parent, via, top.node);
      result.stats.seconds = timer.seconds();
      return result;
    }
    if (out_of_budget(options.budget, result.stats, timer)) {
      result.status = SearchStatus::kResourceExhausted;
      result.stats.seconds = timer.seconds();
      return result;
    }
    ++result.stats.expanded;

    const State current = states[node];
    const CostVector g_cur = g[node];
    succ.applicable(current, applicable);
    for (ActionId a : applicable) {
      const auto& action = model.actions[static_cast<std::size_t>(a)];
      State next = apply_action(current, action);
      const CostVector g_next = g_cur + action.cost;
      ++result.stats.generated;
      auto it = index.find(next);
      if (it == index.end()) {
        const auto hv = heuristic(next);
        const int id = add_node(std::move(next), g_next, top.node, a, hv);
        if (hv != kInfiniteCost) push(id);
        continue;
      }
      const auto other = static_cast<std::size_t>(it->second);
      if (h[other] == kInfiniteCost || !(g_next < g[other])) continue;
      // With a consistent heuristic a closed node is never improved; reopen
      // anyway to stay correct for arbitrary admissible ones.
      g[other] = g_next;
      parent[other] = top.node;
      via[other] = a;
      closed[other] = 0;
      push(it->second);
    }
  }
  result.status = SearchStatus::kUnsolvable;
  result.stats.seconds = timer.seconds();
  return result;
}

SearchResult solve_satisficing(const GroundedModel& model, const SearchOptions& options) {
  Timer timer;
  SearchResult result;
  const SuccessorGenerator succ(model, options.serialized_groups);
  RelaxedExploration relaxed(model, -1);

  std::vector<State> states;
  std::vector<int> parent;
  std::vector<ActionId> via;
  std::unordered_map<State, int, StateHash> index;
  using Entry = std::tuple<std::int64_t, std::uint64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t order = 0;

  auto add = [&](State s, int par, ActionId a) {
    const int id = static_cast<int>(states.size());
    index.emplace(s, id);
    states.push_back(std::move(s));
    parent.push_back(par);
    via.push_back(a);
    return id;
  };

  {
    const auto hv = relaxed.h_add(model.init);
    const int root = add(model.init, -1, -1);
    if (hv != kInfiniteCost) open.emplace(hv, order++, root);
  }
  std::vector<ActionId> applicable;
  while (!open.empty()) {
    const auto [hv, ord, node] = open.top();
    open.pop();
    if (model.is_goal(states[static_cast<std::size_t>(node)])) {
      result.status = SearchStatus::kPlanFound;
      result.plan = extract_plan(model, parent, via, node);
      result.stats.seconds = timer.seconds();
      return result;
    }
    if (out_of_budget(options.budget, result.stats, timer)) {
      result.status = SearchStatus::kResourceExhausted;
      result.stats.seconds = timer.seconds();
      return result;
    }
    ++result.stats.expanded;
    const State current = states[static_cast<std::size_t>(node)];
    succ.applicable(current, applicable);
    for (ActionId a : applicable) {
      State next = apply_action(current, model.actions[static_cast<std::size_t>(a)]);
      ++result.stats.generated;
      if (index.contains(next)) continue;
      const auto h_next = relaxed.h_add(next);
      const int id = add(std::move(next), node, a);
      if (h_next != kInfiniteCost) open.emplace(h_next, order++, id);
    }
    result.stats.peak_frontier = std::max<std::uint64_t>(result.stats.peak_frontier, open.size());
  }
  result.status = options.complete ? SearchStatus::kUnsolvable : SearchStatus::kResourceExhausted;
  result.stats.seconds = timer.seconds();
  return result;
}

ProofResult prove_unsolvable(const GroundedModel& model, std::uint64_t state_cap,
                             const SearchOptions& options) {
  Timer timer;
  ProofResult result;
  const SuccessorGenerator succ(model, options.serialized_groups);
  std::vector<State> states;
  std::vector<int> parent;
  std::vector<ActionId> via;
  std::unordered_map<State, int, StateHash> index;
  std::deque<int> frontier;

  auto add = [&](State s, int par, ActionId a) {
    const int id = static_cast<int>(states.size());
    index.emplace(s, id);
    states.push_back(std::move(s));
    parent.push_back(par);
    via.push_back(a);
    return id;
  };
  frontier.push_back(add(model.init, -1, -1));
  std::vector<ActionId> applicable;
  while (!frontier.empty()) {
    const int node = frontier.front();
    frontier.pop_front();
    if (model.is_goal(states[static_cast<std::size_t>(node)])) {
      result.status = ProofStatus::kSolvable;
      result.plan = extract_plan(model, parent, via, node);
      result.stats.seconds = timer.seconds();
      return result;
    }
    if (states.size() > state_cap ||
        ((result.stats.expanded & 255U) == 0 && timer.seconds() > options.budget.seconds)) {
      result.status = ProofStatus::kUnknown;
      result.stats.seconds = timer.seconds();
      return result;
    }
    ++result.stats.expanded;
    const State current = states[static_cast<std::size_t>(node)];
    succ.applicable(current, applicable);
    for (ActionId a : applicable) {
      State next = apply_action(current, model.actions[static_cast<std::size_t>(a)]);
      ++result.stats.generated;
      if (index.contains(next)) continue;
      frontier.push_back(add(std::move(next), node, a));
    }
    result.stats.peak_frontier = std::max<std::uint64_t>(result.stats.peak_frontier, frontier.size());
  }
  result.status = ProofStatus::kUnsolvable;
  result.stats.seconds = timer.seconds();
  return result;
}

std::optional<std::string> run_external_planner(const std::string& command,
                                                const std::string& domain_text,
                                                const std::string& problem_text,
                                                const std::string& work_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(work_dir);
  const fs::path domain = fs::path(work_dir) / "domain.pddl";
  const fs::path problem = fs::path(work_dir) / "problem.pddl";
  const fs::path plan = fs::path(work_dir) / "plan.txt";
  std::ofstream(domain) << domain_text;
  std::ofstream(problem) << problem_text;
  fs::remove(plan);
  const std::string cmd = command + " '" + domain.string() + "' '" + problem.string() +
                          "' '" + plan.string() + "'";
  const int rc = std::system(cmd.c_str());
  (void)rc;  // the plan file is the contract, not the exit code
  if (!fs::exists(plan)) return std::nullopt;
  std::ifstream in(plan);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gsd
