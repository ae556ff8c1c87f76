#include "parplan/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace parplan {

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_toplevel() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty input");
    SExpr e = read();
    skip_space();
    if (pos_ < text_.size()) fail("trailing input after top-level expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
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
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unbalanced '('", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      e.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

[[noreturn]] void fail_at(const SExpr &e, const std::string &msg) {
  throw ParseError(msg, e.line, e.column);
}

const std::string &expect_atom(const SExpr &e, const char *what) {
  if (e.is_list) fail_at(e, std::string("expected ") + what);
  return e.atom;
}

const SExpr &expect_list(const SExpr &e, const char *what) {
  if (!e.is_list) fail_at(e, std::string("expected ") + what);
  return e;
}

// Parses "a b - t c - u d" into names with types.
std::vector<TypedName> parse_typed_list(const std::vector<SExpr> &items, std::size_t begin) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr &it = items[i];
    if (it.is_list) {
      if (!it.items.empty() && it.items.front().is_atom("either"))
        throw UnsupportedError("'either' types");
      fail_at(it, "expected name in typed list");
    }
    if (it.atom == "-") {
      if (i + 1 >= items.size()) fail_at(it, "missing type after '-'");
      const std::string &type = expect_atom(items[++i], "type name");
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = type;
      pending = 0;
      continue;
    }
    out.push_back({it.atom, "object"});
    ++pending;
  }
  return out;
}

void check_requirements(const SExpr &req, std::vector<std::string> &out) {
  for (std::size_t i = 1; i < req.items.size(); ++i) {
    const std::string &r = expect_atom(req.items[i], "requirement flag");
    if (r != ":strips" && r != ":typing") throw UnsupportedError("requirement " + r);
    out.push_back(r);
  }
}

class DomainParser {
 public:
  explicit DomainParser(Domain &d) : d_(d) {}

  void parse(const SExpr &root) {
    if (!root.is_list || root.items.empty() || !root.items[0].is_atom("define"))
      fail_at(root, "expected (define ...)");
    if (root.items.size() < 2) fail_at(root, "missing domain name");
    const SExpr &head = expect_list(root.items[1], "(domain <name>)");
    if (head.items.size() != 2 || !head.items[0].is_atom("domain"))
      fail_at(head, "expected (domain <name>)");
    d_.name = expect_atom(head.items[1], "domain name");

    for (std::size_t i = 2; i < root.items.size(); ++i) {
      const SExpr &sec = expect_list(root.items[i], "domain section");
      if (sec.items.empty()) fail_at(sec, "empty section");
      const std::string &key = expect_atom(sec.items[0], "section keyword");
      if (key == ":requirements") {
        check_requirements(sec, d_.requirements);
      } else if (key == ":types") {
        for (const auto &t : parse_typed_list(sec.items, 1)) {
          if (t.name == "object") continue;
          d_.types[t.name] = t.type;
          if (t.type != "object" && !d_.types.count(t.type)) d_.types[t.type] = "object";
        }
      } else if (key == ":constants") {
        d_.constants = parse_typed_list(sec.items, 1);
      } else if (key == ":predicates") {
        for (std::size_t k = 1; k < sec.items.size(); ++k) {
          const SExpr &p = expect_list(sec.items[k], "predicate declaration");
          if (p.items.empty()) fail_at(p, "empty predicate declaration");
          PredicateDecl decl{expect_atom(p.items[0], "predicate name"), parse_typed_list(p.items, 1)};
          if (d_.find_predicate(decl.name)) fail_at(p, "duplicate predicate " + decl.name);
          d_.predicates.push_back(std::move(decl));
        }
      } else if (key == ":action") {
        d_.actions.push_back(parse_action(sec));
      } else if (key == ":durative-action") {
        throw UnsupportedError("requirement :durative-actions (found :durative-action " +
                               (sec.items.size() > 1 && !sec.items[1].is_list ? sec.items[1].atom : "") + ")");
      } else if (key == ":functions") {
        throw UnsupportedError("requirement :fluents (found :functions)");
      } else if (key == ":derived") {
        throw UnsupportedError("requirement :derived-predicates (found :derived)");
      } else {
        fail_at(sec, "unknown domain section " + key);
      }
    }
  }

 private:
  ActionSchema parse_action(const SExpr &sec) {
    if (sec.items.size() < 2) fail_at(sec, "missing action name");
    ActionSchema a;
    a.name = expect_atom(sec.items[1], "action name");
    for (std::size_t i = 2; i < sec.items.size(); i += 2) {
      const std::string &key = expect_atom(sec.items[i], "action keyword");
      if (i + 1 >= sec.items.size()) fail_at(sec.items[i], "missing value for " + key);
      const SExpr &val = sec.items[i + 1];
      if (key == ":parameters") {
        a.parameters = parse_typed_list(expect_list(val, "parameter list").items, 0);
      } else if (key == ":precondition") {
        parse_conjunction(val, a, false);
      } else if (key == ":effect") {
        parse_conjunction(val, a, true);
      } else {
        fail_at(sec.items[i], "unknown action keyword " + key);
      }
    }
    return a;
  }

  void parse_conjunction(const SExpr &e, ActionSchema &a, bool effect) {
    const SExpr &l = expect_list(e, "formula");
    if (l.items.empty()) return;
    if (l.items[0].is_atom("and")) {
      for (std::size_t i = 1; i < l.items.size(); ++i) parse_literal(l.items[i], a, effect);
    } else {
      parse_literal(l, a, effect);
    }
  }

  void parse_literal(const SExpr &e, ActionSchema &a, bool effect) {
    const SExpr &l = expect_list(e, "literal");
    if (l.items.empty()) fail_at(l, "empty literal");
    const std::string &head = expect_atom(l.items[0], "predicate");
    if (head == "not") {
      if (!effect) throw UnsupportedError("requirement :negative-preconditions (negated precondition in " + a.name + ")");
      if (l.items.size() != 2) fail_at(l, "malformed (not ...)");
      a.del_effects.push_back(literal(l.items[1], a));
      return;
    }
    if (head == "forall" || head == "exists" || head == "when" || head == "or" || head == "imply")
      throw UnsupportedError("construct '" + head + "' in action " + a.name);
    if (head == "=") throw UnsupportedError("requirement :equality in action " + a.name);
    (effect ? a.add_effects : a.preconditions).push_back(literal(l, a));
  }

  Literal literal(const SExpr &e, const ActionSchema &a) {
    const SExpr &l = expect_list(e, "literal");
    if (l.items.empty()) fail_at(l, "empty literal");
    Literal lit;
    lit.predicate = expect_atom(l.items[0], "predicate");
    if (lit.predicate == "not") throw UnsupportedError("nested negation in action " + a.name);
    const PredicateDecl *decl = d_.find_predicate(lit.predicate);
    if (!decl) fail_at(l, "undeclared predicate " + lit.predicate);
    for (std::size_t i = 1; i < l.items.size(); ++i) {
      const std::string &arg = expect_atom(l.items[i], "argument");
      if (arg.starts_with("?")) {
        bool found = std::any_of(a.parameters.begin(), a.parameters.end(),
                                 [&](const TypedName &p) { return p.name == arg; });
        if (!found) fail_at(l.items[i], "variable " + arg + " not in parameters of " + a.name);
      } else {
        bool found = std::any_of(d_.constants.begin(), d_.constants.end(),
                                 [&](const TypedName &c) { return c.name == arg; });
        if (!found) fail_at(l.items[i], "undeclared constant " + arg);
      }
      lit.args.push_back(arg);
    }
    if (lit.args.size() != decl->params.size())
      fail_at(l, "arity mismatch for " + lit.predicate + ": expected " +
                     std::to_string(decl->params.size()) + ", got " + std::to_string(lit.args.size()));
    return lit;
  }

  Domain &d_;
};

class ProblemParser {
 public:
  ProblemParser(Problem &p, const Domain &d) : p_(p), d_(d) {}

  void parse(const SExpr &root) {
    if (!root.is_list || root.items.empty() || !root.items[0].is_atom("define"))
      fail_at(root, "expected (define ...)");
    if (root.items.size() < 2) fail_at(root, "missing problem name");
    const SExpr &head = expect_list(root.items[1], "(problem <name>)");
    if (head.items.size() != 2 || !head.items[0].is_atom("problem"))
      fail_at(head, "expected (problem <name>)");
    p_.name = expect_atom(head.items[1], "problem name");

    std::vector<const SExpr *> deferred;
    for (std::size_t i = 2; i < root.items.size(); ++i) {
      const SExpr &sec = expect_list(root.items[i], "problem section");
      if (sec.items.empty()) fail_at(sec, "empty section");
      const std::string &key = expect_atom(sec.items[0], "section keyword");
      if (key == ":domain") {
        if (sec.items.size() != 2) fail_at(sec, "expected (:domain <name>)");
        p_.domain_name = expect_atom(sec.items[1], "domain name");
        if (p_.domain_name != d_.name)
          fail_at(sec.items[1], "problem is for domain " + p_.domain_name + ", not " + d_.name);
      } else if (key == ":requirements") {
        std::vector<std::string> ignored;
        check_requirements(sec, ignored);
      } else if (key == ":objects") {
        p_.objects = parse_typed_list(sec.items, 1);
        for (const auto &o : p_.objects)
          if (o.type != "object" && !d_.types.count(o.type))
            fail_at(sec, "object " + o.name + " has undeclared type " + o.type);
      } else if (key == ":init" || key == ":goal") {
        deferred.push_back(&sec);
      } else if (key == ":metric") {
        throw UnsupportedError("section :metric");
      } else {
        fail_at(sec, "unknown problem section " + key);
      }
    }
    if (p_.domain_name.empty()) p_.domain_name = d_.name;
    // objects may be declared after :init in hand-written files
    for (const SExpr *sec : deferred) {
      if (sec->items[0].atom == ":init") {
        for (std::size_t k = 1; k < sec->items.size(); ++k) p_.init.push_back(ground_literal(sec->items[k]));
      } else {
        if (sec->items.size() != 2) fail_at(*sec, "expected (:goal <formula>)");
        parse_goal(sec->items[1]);
      }
    }
  }

 private:
  void parse_goal(const SExpr &e) {
    const SExpr &l = expect_list(e, "goal formula");
    if (l.items.empty()) return;
    if (l.items[0].is_atom("and")) {
      for (std::size_t i = 1; i < l.items.size(); ++i) goal_literal(l.items[i]);
    } else {
      goal_literal(l);
    }
  }

  void goal_literal(const SExpr &e) {
    const SExpr &l = expect_list(e, "goal literal");
    if (!l.items.empty() && l.items[0].is_atom("not"))
      throw UnsupportedError("negated goal literal");
    if (!l.items.empty() && !l.items[0].is_list &&
        (l.items[0].atom == "or" || l.items[0].atom == "forall" || l.items[0].atom == "exists" ||
         l.items[0].atom == "imply"))
      throw UnsupportedError("goal construct '" + l.items[0].atom + "'");
    p_.goal.push_back(ground_literal(l));
  }

  Literal ground_literal(const SExpr &e) {
    const SExpr &l = expect_list(e, "ground atom");
    if (l.items.empty()) fail_at(l, "empty atom");
    Literal lit;
    lit.predicate = expect_atom(l.items[0], "predicate");
    if (lit.predicate == "not") throw UnsupportedError("negative literal in problem");
    if (lit.predicate == "=") throw UnsupportedError("requirement :equality");
    const PredicateDecl *decl = d_.find_predicate(lit.predicate);
    if (!decl) fail_at(l, "undeclared predicate " + lit.predicate);
    for (std::size_t i = 1; i < l.items.size(); ++i) {
      const std::string &arg = expect_atom(l.items[i], "object name");
      if (arg.starts_with("?")) fail_at(l.items[i], "variable in ground atom");
      if (!declared(arg)) fail_at(l.items[i], "undeclared object " + arg);
      lit.args.push_back(arg);
    }
    if (lit.args.size() != decl->params.size())
      fail_at(l, "arity mismatch for " + lit.predicate);
    return lit;
  }

  bool declared(const std::string &name) const {
    auto eq = [&](const TypedName &t) { return t.name == name; };
    return std::any_of(p_.objects.begin(), p_.objects.end(), eq) ||
           std::any_of(d_.constants.begin(), d_.constants.end(), eq);
  }

  Problem &p_;
  const Domain &d_;
};

void print_typed(std::ostringstream &os, const std::vector<TypedName> &names) {
  // an untyped name would take the type of the next typed group, so "- object"
  // may only be left off in the trailing run
  std::size_t tail = names.size();
  while (tail > 0 && names[tail - 1].type == "object") --tail;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ' ';
    os << names[i].name;
    if (i < tail) os << " - " << names[i].type;
  }
}

void print_literal(std::ostringstream &os, const Literal &l, bool negated = false) {
  if (negated) os << "(not ";
  os << '(' << l.predicate;
  for (const auto &a : l.args) os << ' ' << a;
  os << ')';
  if (negated) os << ')';
}

}  // namespace

const PredicateDecl *Domain::find_predicate(std::string_view name) const {
  for (const auto &p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

bool Domain::is_subtype(const std::string &type, const std::string &ancestor) const {
  if (ancestor == "object") return true;
  std::string cur = type;
  for (std::size_t guard = 0; guard <= types.size(); ++guard) {
    if (cur == ancestor) return true;
    auto it = types.find(cur);
    if (it == types.end()) return false;
    cur = it->second;
  }
  return false;  // cyclic type declaration
}

Domain parse_domain(std::string_view text) {
  Domain d;
  DomainParser(d).parse(Reader(text).read_toplevel());
  return d;
}

Problem parse_problem(std::string_view text, const Domain &domain) {
  Problem p;
  ProblemParser(p, domain).parse(Reader(text).read_toplevel());
  return p;
}

std::string to_pddl(const Domain &d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  if (!d.requirements.empty()) {
    os << "  (:requirements";
    for (const auto &r : d.requirements) os << ' ' << r;
    os << ")\n";
  }
  if (!d.types.empty()) {
    os << "  (:types";
    for (const auto &[t, parent] : d.types) os << ' ' << t << " - " << parent;
    os << ")\n";
  }
  if (!d.constants.empty()) {
    os << "  (:constants ";
    print_typed(os, d.constants);
    os << ")\n";
  }
  os << "  (:predicates";
  for (const auto &p : d.predicates) {
    os << " (" << p.name;
    if (!p.params.empty()) os << ' ';
    print_typed(os, p.params);
    os << ')';
  }
  os << ")\n";
  for (const auto &a : d.actions) {
    os << "  (:action " << a.name << "\n    :parameters (";
    print_typed(os, a.parameters);
    os << ")\n    :precondition (and";
    for (const auto &l : a.preconditions) os << ' ', print_literal(os, l);
    os << ")\n    :effect (and";
    for (const auto &l : a.add_effects) os << ' ', print_literal(os, l);
    for (const auto &l : a.del_effects) os << ' ', print_literal(os, l, true);
    os << "))\n";
  }
  os << ")\n";
  return os.str();
}

std::string to_pddl(const Problem &p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n  (:domain " << p.domain_name << ")\n  (:objects ";
  print_typed(os, p.objects);
  os << ")\n  (:init";
  for (const auto &l : p.init) os << ' ', print_literal(os, l);
  os << ")\n  (:goal (and";
  for (const auto &l : p.goal) os << ' ', print_literal(os, l);
  os << ")))\n";
  return os.str();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace parplan
