#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aspomcp/logic/atom.hpp"

namespace aspomcp::logic {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Constant;
  std::string variable;
  int value = 0;

  static Term var(std::string name) { return {Kind::Variable, std::move(name), 0}; }
  static Term constant(int v) { return {Kind::Constant, {}, v}; }
  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct AtomPattern {
  Symbol predicate;
  std::vector<Term> args;

  friend bool operator==(const AtomPattern&, const AtomPattern&) = default;
};

// Inclusive integer interval on one variable. `V > 60` is stored as
// lower = 61; `70 <= V <= 80` as [70, 80].
struct Guard {
  std::string variable;
  std::optional<int> lower;
  std::optional<int> upper;

  bool admits(int v) const { return (!lower || v >= *lower) && (!upper || v <= *upper); }
  friend bool operator==(const Guard&, const Guard&) = default;
};

struct Literal {
  enum class Kind : std::uint8_t { Positive, Negative, Comparison };

  Kind kind = Kind::Positive;
  AtomPattern atom;
  Guard guard;

  static Literal positive(AtomPattern a) { return {Kind::Positive, std::move(a), {}}; }
  static Literal negative(AtomPattern a) { return {Kind::Negative, std::move(a), {}}; }
  static Literal comparison(Guard g) { return {Kind::Comparison, {}, std::move(g)}; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Rule {
  AtomPattern head;
  std::vector<Literal> body;
  int line = 0;  // source line, 0 when built programmatically

  friend bool operator==(const Rule& a, const Rule& b) { return a.head == b.head && a.body == b.body; }
};

struct Weight {
  bool is_variable = false;
  std::string variable;
  bool negated = false;
  int constant = 0;

  friend bool operator==(const Weight&, const Weight&) = default;
};

struct WeakConstraint {
  std::vector<Literal> body;
  Weight weight;
  int level = 0;
  std::vector<Term> terms;
  int line = 0;

  friend bool operator==(const WeakConstraint& a, const WeakConstraint& b) {
    return a.body == b.body && a.weight == b.weight && a.level == b.level && a.terms == b.terms;
  }
};

// Ground fact, possibly with `lo..hi` range arguments (`rock(1..4).`).
// Ranges double as the background variable domains.
struct FactStatement {
  Symbol predicate;
  std::vector<std::pair<int, int>> args;

  friend bool operator==(const FactStatement&, const FactStatement&) = default;
};

enum class ProgramErrorKind { Syntax, UnsafeRule, Recursion, ArityMismatch };

class ProgramError : public std::runtime_error {
 public:
  ProgramError(ProgramErrorKind kind, const std::string& message, int line = 0, int column = 0);

  ProgramErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ProgramErrorKind kind_;
  int line_;
  int column_;
};

namespace detail {
struct CompiledProgram;
}

// Immutable, validated program. Construction checks safety, arity
// consistency and the absence of recursion, then precompiles join plans;
// copies share the compiled form.
class Program {
 public:
  Program();
  Program(std::vector<Rule> rules, std::vector<WeakConstraint> weak_constraints,
          std::vector<FactStatement> facts = {});

  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<WeakConstraint>& weak_constraints() const { return weak_; }
  const std::vector<FactStatement>& fact_statements() const { return facts_; }
  const AtomSet& facts() const;

  // Derived predicates in evaluation order.
  const std::vector<Symbol>& strata() const;
  bool derives(Symbol predicate) const;

  // Rules whose head predicate is `predicate`, in source order.
  std::vector<Rule> rules_for(Symbol predicate) const;

  bool empty() const { return rules_.empty() && weak_.empty() && facts_.empty(); }

  const detail::CompiledProgram& compiled() const { return *compiled_; }

  friend bool operator==(const Program& a, const Program& b) {
    return a.rules_ == b.rules_ && a.weak_ == b.weak_ && a.facts_ == b.facts_;
  }

 private:
  std::vector<Rule> rules_;
  std::vector<WeakConstraint> weak_;
  std::vector<FactStatement> facts_;
  std::shared_ptr<const detail::CompiledProgram> compiled_;
};

std::string to_string(const Term& term);
std::string to_string(const AtomPattern& atom);
std::string to_string(const Literal& literal);
std::string to_string(const Rule& rule);
std::string to_string(const WeakConstraint& wc);
std::string to_string(const FactStatement& fact);
// One statement per line; parse_program(to_string(p)) == p.
std::string to_string(const Program& program);

}  // namespace aspomcp::logic
