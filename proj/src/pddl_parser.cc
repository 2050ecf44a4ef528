#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gsd/error.h"
#include "gsd/pddl.h"

namespace gsd::pddl {

namespace {

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> items;
  bool is_list = false;
  int line = 0;
  int column = 0;

  bool is_atom() const { return !is_list; }
  bool is(std::string_view s) const { return !is_list && atom == s; }
};

[[noreturn]] void fail(const SExpr& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_top() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty input", line_, col_);
    SExpr e = read();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError("trailing input after definition", line_, col_);
    return e;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, col_);
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size())
          throw ParseError("unbalanced parenthesis", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' ||
          std::isspace(static_cast<unsigned char>(d)))
        break;
      e.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::string& atom_of(const SExpr& e, const char* what) {
  if (!e.is_atom()) fail(e, std::string("expected ") + what);
  return e.atom;
}

bool is_variable(std::string_view s) { return !s.empty() && s.front() == '?'; }

/// Parses "a b - t c - u d" into typed names (untyped ones get "object").
std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items,
                                        std::size_t begin) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.is("-")) {
      if (i + 1 >= items.size()) fail(it, "missing type after '-'");
      const auto& t = items[i + 1];
      if (t.is_list) {
        if (!t.items.empty() && t.items[0].is("either"))
          fail(t, "unsupported construct: either types");
        fail(t, "expected type name");
      }
      for (std::size_t k = out.size() - pending; k < out.size(); ++k)
        out[k].type = t.atom;
      pending = 0;
      ++i;
      continue;
    }
    out.push_back({atom_of(it, "name"), "object"});
    ++pending;
  }
  return out;
}

Atom parse_atom(const SExpr& e) {
  if (!e.is_list || e.items.empty()) fail(e, "expected atom");
  Atom a;
  a.predicate = atom_of(e.items[0], "predicate name");
  for (std::size_t i = 1; i < e.items.size(); ++i)
    a.args.push_back(atom_of(e.items[i], "term"));
  return a;
}

Literal parse_literal(const SExpr& e) {
  if (!e.is_list || e.items.empty()) fail(e, "expected literal");
  if (e.items[0].is("not")) {
    if (e.items.size() != 2) fail(e, "'not' takes one argument");
    Literal l = parse_literal(e.items[1]);
    if (l.negated) fail(e, "nested negation");
    l.negated = true;
    return l;
  }
  const auto& head = e.items[0];
  if (head.is("and") || head.is("or") || head.is("imply") ||
      head.is("forall") || head.is("exists") || head.is("when"))
    fail(e, "unsupported construct: " + head.atom);
  Literal l;
  l.atom = parse_atom(e);
  if (l.atom.predicate == "=") {
    if (l.atom.args.size() != 2) fail(e, "equality takes two terms");
    l.equality = true;
  }
  return l;
}

/// Flattens a conjunction (and ...) or a single literal.
std::vector<Literal> parse_conjunction(const SExpr& e) {
  std::vector<Literal> out;
  if (e.is_list && !e.items.empty() && e.items[0].is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      auto sub = parse_conjunction(e.items[i]);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  if (e.is_list && e.items.empty()) return out;  // ()
  out.push_back(parse_literal(e));
  return out;
}

std::int64_t parse_int(const SExpr& e) {
  const auto& s = atom_of(e, "number");
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range)
    fail(e, "number exceeds 64-bit range: " + s);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(e, "expected integer, got '" + s + "'");
  return v;
}

bool looks_numeric(const SExpr& e) {
  return e.is_atom() && !e.atom.empty() &&
         (std::isdigit(static_cast<unsigned char>(e.atom[0])) || e.atom[0] == '-');
}

void parse_effect_into(const SExpr& e, ActionSchema& a, bool inside_when,
                       WhenEffect* when) {
  if (!e.is_list) fail(e, "expected effect");
  if (e.items.empty()) return;
  const auto& head = e.items[0];
  if (head.is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      parse_effect_into(e.items[i], a, inside_when, when);
    return;
  }
  if (head.is("when")) {
    if (inside_when) fail(e, "nested conditional effect");
    if (e.items.size() != 3) fail(e, "'when' takes a condition and an effect");
    WhenEffect w;
    w.condition = parse_conjunction(e.items[1]);
    for (const auto& l : w.condition)
      if (l.equality) fail(e.items[1], "equality in effect condition is unsupported");
    parse_effect_into(e.items[2], a, true, &w);
    a.conditional.push_back(std::move(w));
    return;
  }
  if (head.is("increase")) {
    if (e.items.size() != 3) fail(e, "'increase' takes two arguments");
    const auto& target = e.items[1];
    if (!target.is_list || target.items.size() != 1 ||
        !target.items[0].is("total-cost"))
      fail(target, "only (increase (total-cost) ...) is supported");
    if (inside_when) fail(e, "conditional cost effects are unsupported");
    if (a.cost) fail(e, "duplicate cost effect");
    CostExpr c;
    if (looks_numeric(e.items[2])) {
      c.constant = parse_int(e.items[2]);
      if (*c.constant < 0) fail(e.items[2], "negative action cost");
    } else {
      c.function = parse_atom(e.items[2]);
    }
    a.cost = c;
    return;
  }
  if (head.is("forall") || head.is("decrease") || head.is("assign") ||
      head.is("scale-up") || head.is("scale-down"))
    fail(e, "unsupported construct: " + head.atom);
  Literal l = parse_literal(e);
  if (l.equality) fail(e, "equality cannot be an effect");
  if (when != nullptr)
    when->effects.push_back(std::move(l));
  else
    a.effects.push_back(std::move(l));
}

ActionSchema parse_action(const SExpr& e) {
  if (e.items.size() < 2) fail(e, "action without name");
  ActionSchema a;
  a.name = atom_of(e.items[1], "action name");
  for (std::size_t i = 2; i < e.items.size(); i += 2) {
    const auto& key = e.items[i];
    if (i + 1 >= e.items.size()) fail(key, "missing value for " + key.atom);
    const auto& val = e.items[i + 1];
    if (key.is(":parameters")) {
      if (!val.is_list) fail(val, "expected parameter list");
      a.parameters = parse_typed_list(val.items, 0);
      for (const auto& p : a.parameters)
        if (!is_variable(p.name)) fail(val, "parameter must start with '?': " + p.name);
    } else if (key.is(":precondition")) {
      a.precondition = parse_conjunction(val);
    } else if (key.is(":effect")) {
      parse_effect_into(val, a, false, nullptr);
    } else {
      fail(key, "unknown action field " + atom_of(key, "keyword"));
    }
  }
  return a;
}

void check_literal(const DomainAst& d, const Literal& l,
                   const std::vector<TypedName>& params, const SExpr& at,
                   const std::string& where) {
  for (const auto& arg : l.atom.args) {
    if (is_variable(arg)) {
      bool bound = std::any_of(params.begin(), params.end(),
                               [&](const TypedName& p) { return p.name == arg; });
      if (!bound) fail(at, where + ": unbound variable " + arg);
    } else {
      bool known = std::any_of(d.constants.begin(), d.constants.end(),
                               [&](const TypedName& c) { return c.name == arg; });
      if (!known) fail(at, where + ": unknown constant " + arg);
    }
  }
  if (l.equality) return;
  const auto* pred = d.find_predicate(l.atom.predicate);
  if (pred == nullptr) fail(at, where + ": undeclared predicate " + l.atom.predicate);
  if (pred->parameters.size() != l.atom.args.size())
    fail(at, where + ": wrong arity for " + l.atom.predicate);
}

void check_type(const DomainAst& d, const std::string& t, const SExpr& at) {
  if (t == "object") return;
  if (!d.types.contains(t)) fail(at, "undeclared type " + t);
}

}  // namespace

const std::set<std::string>& supported_requirements() {
  static const std::set<std::string> kSupported = {
      ":strips", ":typing", ":negative-preconditions", ":action-costs",
      ":conditional-effects", ":equality"};
  return kSupported;
}

const PredicateDecl* DomainAst::find_predicate(std::string_view n) const {
  for (const auto& p : predicates)
    if (p.name == n) return &p;
  return nullptr;
}

const PredicateDecl* DomainAst::find_function(std::string_view n) const {
  for (const auto& p : functions)
    if (p.name == n) return &p;
  return nullptr;
}

const ActionSchema* DomainAst::find_action(std::string_view n) const {
  for (const auto& a : actions)
    if (a.name == n) return &a;
  return nullptr;
}

DomainAst parse_domain(std::string_view text) {
  const SExpr root = Reader(text).read_top();
  if (!root.is_list || root.items.size() < 2 || !root.items[0].is("define"))
    fail(root, "expected (define (domain ...) ...)");
  const auto& header = root.items[1];
  if (!header.is_list || header.items.size() != 2 || !header.items[0].is("domain"))
    fail(header, "expected (domain <name>)");

  DomainAst d;
  d.name = atom_of(header.items[1], "domain name");
  std::vector<std::pair<const SExpr*, ActionSchema>> actions;

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& sec = root.items[i];
    if (!sec.is_list || sec.items.empty()) fail(sec, "expected domain section");
    const auto& key = sec.items[0];
    if (key.is(":requirements")) {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& r = atom_of(sec.items[k], "requirement flag");
        if (!supported_requirements().contains(r))
          fail(sec.items[k], "unsupported requirement " + r);
        d.requirements.insert(r);
      }
    } else if (key.is(":types")) {
      for (const auto& t : parse_typed_list(sec.items, 1)) {
        if (t.name == "object") continue;
        d.types[t.name] = t.type;
      }
    } else if (key.is(":constants")) {
      d.constants = parse_typed_list(sec.items, 1);
    } else if (key.is(":predicates")) {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& p = sec.items[k];
        if (!p.is_list || p.items.empty()) fail(p, "expected predicate declaration");
        d.predicates.push_back({atom_of(p.items[0], "predicate name"),
                                parse_typed_list(p.items, 1)});
      }
    } else if (key.is(":functions")) {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& p = sec.items[k];
        if (p.is("-")) {
          ++k;  // "- number"
          continue;
        }
        if (!p.is_list || p.items.empty()) fail(p, "expected function declaration");
        d.functions.push_back({atom_of(p.items[0], "function name"),
                               parse_typed_list(p.items, 1)});
      }
    } else if (key.is(":action")) {
      actions.emplace_back(&sec, parse_action(sec));
    } else if (key.is(":derived") || key.is(":durative-action") ||
               key.is(":axiom")) {
      fail(key, "unsupported construct: " + key.atom);
    } else {
      fail(key, "unknown domain section " + (key.is_atom() ? key.atom : "()"));
    }
  }

  // Types: parents must be declared (or object).
  for (const auto& [child, parent] : d.types) {
    if (parent != "object" && !d.types.contains(parent))
      fail(root, "undeclared type " + parent);
  }
  for (const auto& c : d.constants) check_type(d, c.type, root);
  for (const auto& p : d.predicates)
    for (const auto& a : p.parameters) check_type(d, a.type, root);

  for (auto& [where, a] : actions) {
    for (const auto& p : a.parameters) check_type(d, p.type, *where);
    const std::string ctx = "action " + a.name;
    for (const auto& l : a.precondition) check_literal(d, l, a.parameters, *where, ctx);
    for (const auto& l : a.effects) check_literal(d, l, a.parameters, *where, ctx);
    for (const auto& w : a.conditional) {
      for (const auto& l : w.condition) check_literal(d, l, a.parameters, *where, ctx);
      for (const auto& l : w.effects) check_literal(d, l, a.parameters, *where, ctx);
    }
    if (a.cost && a.cost->function) {
      const auto& f = *a.cost->function;
      if (d.find_function(f.predicate) == nullptr)
        fail(*where, ctx + ": undeclared function " + f.predicate);
      for (const auto& arg : f.args) {
        bool bound = std::any_of(a.parameters.begin(), a.parameters.end(),
                                 [&](const TypedName& p) { return p.name == arg; });
        if (is_variable(arg) && !bound) fail(*where, ctx + ": unbound variable " + arg);
      }
    }
    d.actions.push_back(std::move(a));
  }
  return d;
}

ProblemAst parse_problem(std::string_view text) {
  const SExpr root = Reader(text).read_top();
  if (!root.is_list || root.items.size() < 2 || !root.items[0].is("define"))
    fail(root, "expected (define (problem ...) ...)");
  const auto& header = root.items[1];
  if (!header.is_list || header.items.size() != 2 || !header.items[0].is("problem"))
    fail(header, "expected (problem <name>)");

  ProblemAst p;
  p.name = atom_of(header.items[1], "problem name");
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& sec = root.items[i];
    if (!sec.is_list || sec.items.empty()) fail(sec, "expected problem section");
    const auto& key = sec.items[0];
    if (key.is(":domain")) {
      if (sec.items.size() != 2) fail(sec, "expected (:domain <name>)");
      p.domain_name = atom_of(sec.items[1], "domain name");
    } else if (key.is(":objects")) {
      p.objects = parse_typed_list(sec.items, 1);
    } else if (key.is(":init")) {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& e = sec.items[k];
        if (e.is_list && !e.items.empty() && e.items[0].is("=")) {
          if (e.items.size() != 3) fail(e, "malformed numeric init");
          p.numeric_init[parse_atom(e.items[1])] = parse_int(e.items[2]);
          continue;
        }
        if (e.is_list && !e.items.empty() && e.items[0].is("not"))
          fail(e, "negative literals are not allowed in init");
        Atom a = parse_atom(e);
        for (const auto& arg : a.args)
          if (is_variable(arg)) fail(e, "variable in init");
        p.init.push_back(std::move(a));
      }
    } else if (key.is(":goal")) {
      if (sec.items.size() != 2) fail(sec, "expected one goal formula");
      p.goal = parse_conjunction(sec.items[1]);
      for (const auto& l : p.goal) {
        if (l.negated) fail(sec, "negative goals are unsupported");
        if (l.equality) fail(sec, "equality in goal is unsupported");
      }
    } else if (key.is(":metric")) {
      if (sec.items.size() != 3 || !sec.items[1].is("minimize") ||
          !sec.items[2].is_list || sec.items[2].items.size() != 1 ||
          !sec.items[2].items[0].is("total-cost"))
        fail(sec, "only (:metric minimize (total-cost)) is supported");
      p.minimize_total_cost = true;
    } else if (key.is(":requirements")) {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& r = atom_of(sec.items[k], "requirement flag");
        if (!supported_requirements().contains(r))
          fail(sec.items[k], "unsupported requirement " + r);
      }
    } else {
      fail(key, "unknown problem section " + (key.is_atom() ? key.atom : "()"));
    }
  }
  if (p.domain_name.empty()) fail(root, "problem does not name its domain");
  return p;
}

void check_problem(const DomainAst& d, const ProblemAst& p) {
  if (p.domain_name != d.name)
    throw ModelError("problem " + p.name + " is for domain " + p.domain_name +
                     ", not " + d.name);
  std::map<std::string, std::string> object_types;
  for (const auto& c : d.constants) object_types[c.name] = c.type;
  for (const auto& o : p.objects) {
    if (o.type != "object" && !d.types.contains(o.type))
      throw ModelError("object " + o.name + " has undeclared type " + o.type);
    object_types[o.name] = o.type;
  }
  auto check_atom = [&](const Atom& a, const char* where) {
    const auto* pred = d.find_predicate(a.predicate);
    if (pred == nullptr)
      throw ModelError(std::string(where) + ": undeclared predicate " + a.predicate);
    if (pred->parameters.size() != a.args.size())
      throw ModelError(std::string(where) + ": wrong arity for " + a.predicate);
    for (const auto& arg : a.args)
      if (!object_types.contains(arg))
        throw ModelError(std::string(where) + ": undeclared object " + arg);
  };
  for (const auto& a : p.init) check_atom(a, "init");
  for (const auto& l : p.goal) check_atom(l.atom, "goal");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gsd::pddl
