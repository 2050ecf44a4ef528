#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gsd/model.h"

namespace gsd::pddl {

struct TypedName {
  std::string name;
  std::string type = "object";
};

/// An atom over a predicate (or function). Arguments are either variables
/// (leading '?') or object names.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Literal {
  Atom atom;
  bool negated = false;
  /// (= ?x ?y) literal; atom.predicate is "=".
  bool equality = false;
};

struct WhenEffect {
  std::vector<Literal> condition;
  std::vector<Literal> effects;
};

/// Either an integer constant or a (static) function term looked up in the
/// problem's numeric init.
struct CostExpr {
  std::optional<std::int64_t> constant;
  std::optional<Atom> function;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<Literal> precondition;
  std::vector<Literal> effects;
  std::vector<WhenEffect> conditional;
  std::optional<CostExpr> cost;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> parameters;
};

struct DomainAst {
  std::string name;
  std::set<std::string> requirements;
  /// type -> parent type; every declared type except "object" has one.
  std::map<std::string, std::string> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<PredicateDecl> functions;
  std::vector<ActionSchema> actions;

  const PredicateDecl* find_predicate(std::string_view n) const;
  const PredicateDecl* find_function(std::string_view n) const;
  const ActionSchema* find_action(std::string_view n) const;
};

struct ProblemAst {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  /// Numeric init entries, (= (f a b) 3); total-cost included if present.
  std::map<Atom, std::int64_t> numeric_init;
  std::vector<Literal> goal;
  bool minimize_total_cost = false;
};

/// Requirement flags accepted by the parser.
const std::set<std::string>& supported_requirements();

DomainAst parse_domain(std::string_view text);
ProblemAst parse_problem(std::string_view text);

/// Checks the problem against the domain: objects have declared types, init
/// and goal use declared predicates over declared objects. Throws ParseError
/// (line 0) or ModelError.
void check_problem(const DomainAst& domain, const ProblemAst& problem);

struct GroundOptions {
  /// Drop ground actions whose positive preconditions contain an atom that
  /// is neither initially true nor added by any ground action.
  bool prune_static = true;
  /// Atoms (fluent names) that must be treated as possibly true during
  /// pruning, e.g. fluents a design may add to the initial state.
  std::vector<std::string> assume_possible;
};

/// Canonical fluent / action name for a ground atom: predicate and arguments
/// joined by '_' (a 0-ary predicate keeps its name). The result is itself a
/// valid PDDL identifier.
std::string ground_name(std::string_view predicate,
                        const std::vector<std::string>& args);

/// Normalizes user-written atom references: "(on a b)", "on a b" and
/// "on_a_b" all map to "on_a_b".
std::string normalize_atom_name(std::string_view text);

/// Instantiates every schema over type-compatible objects. The fluent set
/// contains every type-compatible atom of every predicate (independent of
/// the initial state), so two problems over the same domain and objects
/// produce identical fluent sets. Fluent and action ids follow lexicographic
/// name order.
GroundedModel ground(const DomainAst& domain, const ProblemAst& problem,
                     const GroundOptions& options = {});

struct EmitOptions {
  /// Upper bound on plan length used to turn lexicographic cost vectors into
  /// scalar weights. Defaults to 2^|F|.
  std::optional<std::uint64_t> horizon;
};

struct PddlText {
  std::string domain;
  std::string problem;
};

/// Writes a grounded model as propositional PDDL (0-ary predicates,
/// parameterless actions). Multi-component costs are scalarized with
/// arbitrary-precision dominance weights.
PddlText emit_pddl(const GroundedModel& model, const EmitOptions& options = {});

/// Dominance weights w such that sum_i w_i * c_i orders plans of length at
/// most `horizon` exactly like the lexicographic cost vector. Returned as
/// decimal strings (they may exceed 64 bits).
std::vector<std::string> scalar_weights(const GroundedModel& model,
                                        std::uint64_t horizon);

/// Convenience: parse, check and ground in one step.
GroundedModel load_model(std::string_view domain_text,
                         std::string_view problem_text,
                         const GroundOptions& options = {});

std::string read_file(const std::string& path);

}  // namespace gsd::pddl
