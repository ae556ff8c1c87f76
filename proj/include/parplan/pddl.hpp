#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parplan {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised for well-formed PDDL that uses a construct outside the STRIPS/typing subset.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string &what_)
      : std::runtime_error("unsupported: " + what_) {}
};

// A literal over parameters ("?x") or constants.  Negation is expressed by
// where the literal lives (del_effects), never inside the literal.
struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  bool operator==(const Literal &) const = default;
};

struct TypedName {
  std::string name;
  std::string type = "object";
  bool operator==(const TypedName &) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> params;
  bool operator==(const PredicateDecl &) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<Literal> preconditions;
  std::vector<Literal> add_effects;
  std::vector<Literal> del_effects;
  bool operator==(const ActionSchema &) const = default;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;
  // type -> parent type; "object" is the implicit root
  std::map<std::string, std::string> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> actions;

  const PredicateDecl *find_predicate(std::string_view name) const;
  bool is_subtype(const std::string &type, const std::string &ancestor) const;
  bool operator==(const Domain &) const = default;
};

struct Problem {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<Literal> init;
  std::vector<Literal> goal;
  bool operator==(const Problem &) const = default;
};

Domain parse_domain(std::string_view text);
Problem parse_problem(std::string_view text, const Domain &domain);

std::string to_pddl(const Domain &domain);
std::string to_pddl(const Problem &problem);

std::string read_file(const std::string &path);

}  // namespace parplan
