#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "gsd/error.h"
#include "gsd/pddl.h"

namespace gsd::pddl {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::vector<BigInt> dominance_weights(const GroundedModel& m, const BigInt& horizon) {
  const auto dims = static_cast<std::size_t>(m.cost_dims);
  std::vector<BigInt> w(dims, 0);
  std::vector<BigInt> max_cost(dims, 0);
  for (const auto& a : m.actions)
    for (std::size_t i = 0; i < dims; ++i)
      max_cost[i] = std::max(max_cost[i], BigInt(a.cost.v[i]));
  // w_last = 1; w_i = 1 + sum_{j>i} horizon * max_j * w_j, so one unit of
  // component i outweighs any admissible total of the later components.
  w[dims - 1] = 1;
  for (std::size_t i = dims - 1; i-- > 0;) {
    BigInt rest = 0;
    for (std::size_t j = i + 1; j < dims; ++j) rest += horizon * max_cost[j] * w[j];
    w[i] = rest + 1;
  }
  return w;
}

BigInt default_horizon(const GroundedModel& m, const EmitOptions& o) {
  if (o.horizon) return BigInt(*o.horizon);
  return BigInt(1) << static_cast<unsigned>(m.num_fluents());
}

void write_literals(std::ostream& os, const GroundedModel& m,
                    const std::vector<FluentId>& pos, const std::vector<FluentId>& neg) {
  for (FluentId f : pos) os << " (" << m.fluents[static_cast<std::size_t>(f)] << ")";
  for (FluentId f : neg) os << " (not (" << m.fluents[static_cast<std::size_t>(f)] << "))";
}

}  // namespace

std::vector<std::string> scalar_weights(const GroundedModel& model, std::uint64_t horizon) {
  std::vector<std::string> out;
  for (const auto& w : dominance_weights(model, BigInt(horizon))) out.push_back(w.str());
  return out;
}

PddlText emit_pddl(const GroundedModel& m, const EmitOptions& options) {
  m.check();
  bool negative = false;
  bool conditional = false;
  for (const auto& a : m.actions) {
    negative = negative || !a.pre_neg.empty();
    for (const auto& c : a.conditional) negative = negative || !c.cond_neg.empty();
    conditional = conditional || !a.conditional.empty();
  }
  const auto weights = dominance_weights(m, default_horizon(m, options));
  auto scalar_cost = [&](const CostVector& c) {
    BigInt total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * BigInt(c.v[i]);
    return total;
  };

  std::string name = m.name.empty() ? "model" : m.name;
  std::ostringstream d;
  d << "(define (domain " << name << "-domain)\n";
  d << "  (:requirements :strips";
  if (negative) d << " :negative-preconditions";
  if (conditional) d << " :conditional-effects";
  d << " :action-costs)\n";
  d << "  (:predicates";
  for (const auto& f : m.fluents) d << "\n    (" << f << ")";
  d << ")\n";
  d << "  (:functions (total-cost) - number)\n";
  for (const auto& a : m.actions) {
    d << "  (:action " << a.name << "\n    :parameters ()\n    :precondition (and";
    write_literals(d, m, a.pre_pos, a.pre_neg);
    d << ")\n    :effect (and";
    write_literals(d, m, a.add, a.del);
    for (const auto& c : a.conditional) {
      d << "\n      (when (and";
      write_literals(d, m, c.cond_pos, c.cond_neg);
      d << ") (and";
      write_literals(d, m, c.add, c.del);
      d << "))";
    }
    d << "\n      (increase (total-cost) " << scalar_cost(a.cost).str() << ")))\n";
  }
  d << ")\n";

  std::ostringstream p;
  p << "(define (problem " << name << ")\n";
  p << "  (:domain " << name << "-domain)\n";
  p << "  (:init";
  for (FluentId f : m.init.fluents()) p << "\n    (" << m.fluents[static_cast<std::size_t>(f)] << ")";
  p << "\n    (= (total-cost) 0))\n";
  p << "  (:goal (and";
  for (FluentId f : m.goal) p << "\n    (" << m.fluents[static_cast<std::size_t>(f)] << ")";
  p << "))\n";
  p << "  (:metric minimize (total-cost)))\n";
  return {d.str(), p.str()};
}

}  // namespace gsd::pddl
