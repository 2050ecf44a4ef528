#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gsd/model.h"
#include "gsd/pddl.h"

namespace gsd::testing {

// Name-based canonical form of a model, so two models compare equal exactly
// when they agree up to a renumbering of fluents and actions.
struct CanonicalEffect {
  std::set<std::string> cond_pos, cond_neg, add, del;
  friend auto operator<=>(const CanonicalEffect&, const CanonicalEffect&) = default;
};

struct CanonicalAction {
  std::set<std::string> pre_pos, pre_neg, add, del;
  std::multiset<CanonicalEffect> conditional;
  std::string cost;
  friend auto operator<=>(const CanonicalAction&, const CanonicalAction&) = default;
};

struct CanonicalModel {
  std::set<std::string> fluents;
  std::set<std::string> init;
  std::set<std::string> goal;
  std::map<std::string, CanonicalAction> actions;
  friend bool operator==(const CanonicalModel&, const CanonicalModel&) = default;
};

inline std::set<std::string> names(const GroundedModel& m, const std::vector<FluentId>& ids) {
  std::set<std::string> out;
  for (FluentId f : ids) out.insert(m.fluents[static_cast<std::size_t>(f)]);
  return out;
}

/// Costs are scalarized with the same dominance weights the PDDL writer uses,
/// so a lexicographic model and its emitted scalar form compare equal.
inline CanonicalModel canonical(const GroundedModel& m, const std::vector<std::string>& weights = {}) {
  using boost::multiprecision::cpp_int;
  CanonicalModel c;
  c.fluents = std::set<std::string>(m.fluents.begin(), m.fluents.end());
  c.init = names(m, m.init.fluents());
  c.goal = names(m, m.goal);
  for (const auto& a : m.actions) {
    CanonicalAction ca{names(m, a.pre_pos), names(m, a.pre_neg), names(m, a.add), names(m, a.del), {}, {}};
    for (const auto& ce : a.conditional)
      ca.conditional.insert({names(m, ce.cond_pos), names(m, ce.cond_neg), names(m, ce.add), names(m, ce.del)});
    cpp_int cost = 0;
    if (weights.empty()) {
      cost = a.cost[0];
    } else {
      for (std::size_t i = 0; i < weights.size(); ++i)
        cost += cpp_int(weights[i]) * a.cost[static_cast<int>(i)];
    }
    ca.cost = cost.str();
    c.actions.emplace(a.name, std::move(ca));
  }
  return c;
}

/// ground(parse(emit(m))) compared against m.
inline bool round_trips(const GroundedModel& m) {
  const auto text = pddl::emit_pddl(m);
  pddl::GroundOptions opts;
  opts.prune_static = false;
  const GroundedModel back = pddl::load_model(text.domain, text.problem, opts);
  const std::uint64_t horizon = m.num_fluents() >= 63 ? ~std::uint64_t{0} >> 1 : std::uint64_t{1} << m.num_fluents();
  const auto weights = m.cost_dims > 1 ? pddl::scalar_weights(m, horizon) : std::vector<std::string>{};
  return canonical(back) == canonical(m, weights);
}

}  // namespace gsd::testing
