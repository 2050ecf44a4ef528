#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "gsd/error.h"
#include "gsd/pddl.h"

namespace gsd::pddl {

namespace {

bool is_subtype(const DomainAst& d, std::string type, const std::string& of) {
  for (int guard = 0; guard < 1000; ++guard) {
    if (type == of) return true;
    if (type == "object") return false;
    auto it = d.types.find(type);
    if (it == d.types.end()) return false;
    type = it->second;
  }
  throw ModelError("cyclic type hierarchy");
}

struct ObjectTable {
  // Sorted by name for deterministic enumeration.
  std::vector<TypedName> objects;

  std::vector<std::string> of_type(const DomainAst& d, const std::string& t) const {
    std::vector<std::string> out;
    for (const auto& o : objects)
      if (is_subtype(d, o.type, t)) out.push_back(o.name);
    return out;
  }
};

ObjectTable collect_objects(const DomainAst& d, const ProblemAst& p) {
  std::map<std::string, std::string> by_name;
  for (const auto& c : d.constants) by_name[c.name] = c.type;
  for (const auto& o : p.objects) by_name[o.name] = o.type;
  ObjectTable t;
  for (const auto& [n, ty] : by_name) t.objects.push_back({n, ty});
  return t;
}

/// Calls fn(args) for every type-compatible tuple, in lexicographic order.
template <typename Fn>
void for_each_tuple(const std::vector<std::vector<std::string>>& domains, Fn&& fn) {
  for (const auto& dom : domains)
    if (dom.empty()) return;
  std::vector<std::size_t> idx(domains.size(), 0);
  std::vector<std::string> args(domains.size());
  for (;;) {
    for (std::size_t i = 0; i < domains.size(); ++i) args[i] = domains[i][idx[i]];
    fn(args);
    std::size_t k = domains.size();
    while (k > 0) {
      --k;
      if (++idx[k] < domains[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (domains.empty()) return;
  }
}

std::string substitute(const std::string& term,
                       const std::map<std::string, std::string>& binding) {
  if (!term.empty() && term.front() == '?') return binding.at(term);
  return term;
}

struct PendingAction {
  std::string name;
  std::vector<std::string> pre_pos, pre_neg, add, del;
  struct Cond {
    std::vector<std::string> pos, neg, add, del;
  };
  std::vector<Cond> conditional;
  std::int64_t cost = 1;
};

void split_literals(const std::vector<Literal>& lits,
                    const std::map<std::string, std::string>& binding,
                    std::vector<std::string>& pos, std::vector<std::string>& neg) {
  for (const auto& l : lits) {
    if (l.equality) continue;
    std::vector<std::string> args;
    for (const auto& a : l.atom.args) args.push_back(substitute(a, binding));
    (l.negated ? neg : pos).push_back(ground_name(l.atom.predicate, args));
  }
}

bool equality_holds(const std::vector<Literal>& lits,
                    const std::map<std::string, std::string>& binding) {
  for (const auto& l : lits) {
    if (!l.equality) continue;
    bool same = substitute(l.atom.args[0], binding) == substitute(l.atom.args[1], binding);
    if (same == l.negated) return false;
  }
  return true;
}

void sort_unique(std::vector<FluentId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string ground_name(std::string_view predicate,
                        const std::vector<std::string>& args) {
  std::string out(predicate);
  for (const auto& a : args) {
    out += '_';
    out += a;
  }
  return out;
}

std::string normalize_atom_name(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c == '(' || c == ')') continue;
    s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  std::istringstream in(s);
  std::string word, out;
  while (in >> word) {
    if (!out.empty()) out += '_';
    out += word;
  }
  return out;
}

GroundedModel ground(const DomainAst& d, const ProblemAst& p,
                     const GroundOptions& options) {
  check_problem(d, p);
  const ObjectTable objects = collect_objects(d, p);

  // Fluents: every type-compatible atom of every predicate.
  std::vector<std::string> fluent_names;
  for (const auto& pred : d.predicates) {
    std::vector<std::vector<std::string>> doms;
    for (const auto& param : pred.parameters) doms.push_back(objects.of_type(d, param.type));
    for_each_tuple(doms, [&](const std::vector<std::string>& args) {
      fluent_names.push_back(ground_name(pred.name, args));
    });
  }
  std::sort(fluent_names.begin(), fluent_names.end());
  fluent_names.erase(std::unique(fluent_names.begin(), fluent_names.end()),
                     fluent_names.end());
  std::map<std::string, FluentId> fluent_index;
  for (std::size_t i = 0; i < fluent_names.size(); ++i)
    fluent_index[fluent_names[i]] = static_cast<FluentId>(i);

  auto lookup = [&](const std::string& n) {
    auto it = fluent_index.find(n);
    if (it == fluent_index.end())
      throw ModelError("atom " + n + " is not type-compatible with its predicate");
    return it->second;
  };

  // Every schema instantiated over compatible tuples.
  std::vector<PendingAction> pending;
  for (const auto& schema : d.actions) {
    std::vector<std::vector<std::string>> doms;
    for (const auto& param : schema.parameters) doms.push_back(objects.of_type(d, param.type));
    for_each_tuple(doms, [&](const std::vector<std::string>& args) {
      std::map<std::string, std::string> binding;
      for (std::size_t i = 0; i < args.size(); ++i)
        binding[schema.parameters[i].name] = args[i];
      if (!equality_holds(schema.precondition, binding)) return;
      PendingAction a;
      a.name = ground_name(schema.name, args);
      split_literals(schema.precondition, binding, a.pre_pos, a.pre_neg);
      split_literals(schema.effects, binding, a.add, a.del);
      for (const auto& w : schema.conditional) {
        PendingAction::Cond c;
        split_literals(w.condition, binding, c.pos, c.neg);
        split_literals(w.effects, binding, c.add, c.del);
        a.conditional.push_back(std::move(c));
      }
      if (!p.minimize_total_cost) {
        a.cost = 1;
      } else if (!schema.cost) {
        a.cost = 0;
      } else if (schema.cost->constant) {
        a.cost = *schema.cost->constant;
      } else {
        Atom f = *schema.cost->function;
        for (auto& arg : f.args) arg = substitute(arg, binding);
        auto it = p.numeric_init.find(f);
        if (it == p.numeric_init.end())
          throw ModelError("no value for cost term " + ground_name(f.predicate, f.args));
        if (it->second < 0)
          throw ModelError("negative cost for " + ground_name(f.predicate, f.args));
        a.cost = it->second;
      }
      pending.push_back(std::move(a));
    });
  }

  // Static-atom pruning: an atom is possibly true if initially true, assumed
  // possible, or added by some ground action.
  if (options.prune_static) {
    std::set<std::string> possible;
    for (const auto& a : p.init) possible.insert(ground_name(a.predicate, a.args));
    for (const auto& n : options.assume_possible) possible.insert(n);
    for (const auto& a : pending) {
      possible.insert(a.add.begin(), a.add.end());
      for (const auto& c : a.conditional) possible.insert(c.add.begin(), c.add.end());
    }
    std::erase_if(pending, [&](const PendingAction& a) {
      return std::any_of(a.pre_pos.begin(), a.pre_pos.end(),
                         [&](const std::string& f) { return !possible.contains(f); });
    });
  }

  std::sort(pending.begin(), pending.end(),
            [](const PendingAction& a, const PendingAction& b) { return a.name < b.name; });

  GroundedModel m;
  m.name = p.name;
  m.fluents = fluent_names;
  m.init = State(fluent_names.size());
  for (const auto& a : p.init) m.init.set(lookup(ground_name(a.predicate, a.args)));
  for (const auto& l : p.goal) m.goal.push_back(lookup(ground_name(l.atom.predicate, l.atom.args)));
  sort_unique(m.goal);

  auto ids = [&](const std::vector<std::string>& names) {
    std::vector<FluentId> out;
    for (const auto& n : names) out.push_back(lookup(n));
    sort_unique(out);
    return out;
  };
  // Delete wins on overlap: (s u add) \ del.
  auto drop_deleted = [](std::vector<FluentId>& add, const std::vector<FluentId>& del) {
    std::erase_if(add, [&](FluentId f) {
      return std::binary_search(del.begin(), del.end(), f);
    });
  };

  for (const auto& pa : pending) {
    GroundAction a;
    a.name = pa.name;
    a.pre_pos = ids(pa.pre_pos);
    a.pre_neg = ids(pa.pre_neg);
    bool contradictory = std::any_of(a.pre_pos.begin(), a.pre_pos.end(), [&](FluentId f) {
      return std::binary_search(a.pre_neg.begin(), a.pre_neg.end(), f);
    });
    if (contradictory) continue;
    a.add = ids(pa.add);
    a.del = ids(pa.del);
    drop_deleted(a.add, a.del);
    for (const auto& c : pa.conditional) {
      ConditionalEffect ce{ids(c.pos), ids(c.neg), ids(c.add), ids(c.del)};
      drop_deleted(ce.add, ce.del);
      a.conditional.push_back(std::move(ce));
    }
    a.cost = CostVector(pa.cost);
    m.actions.push_back(std::move(a));
  }
  m.check();
  return m;
}

GroundedModel load_model(std::string_view domain_text, std::string_view problem_text,
                         const GroundOptions& options) {
  return ground(parse_domain(domain_text), parse_problem(problem_text), options);
}

}  // namespace gsd::pddl
