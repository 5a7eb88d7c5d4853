#include "aspomcp/logic/program.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "compiled.hpp"

namespace aspomcp::logic {

ProgramError::ProgramError(ProgramErrorKind kind, const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                  : message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

using detail::ArgRef;
using detail::CompiledBody;
using detail::CompiledProgram;

std::set<std::string> positive_variables(const std::vector<Literal>& body) {
  std::set<std::string> vars;
  for (const auto& lit : body) {
    if (lit.kind != Literal::Kind::Positive) continue;
    for (const auto& t : lit.atom.args) {
      if (t.is_variable()) vars.insert(t.variable);
    }
  }
  return vars;
}

void require_bound(const std::set<std::string>& bound, const std::string& var, const std::string& where,
                   const std::string& statement, int line) {
  if (!bound.contains(var)) {
    throw ProgramError(ProgramErrorKind::UnsafeRule,
                       "unsafe variable " + var + " in " + where + " of '" + statement + "'", line);
  }
}

void check_body_safety(const std::vector<Literal>& body, const std::set<std::string>& bound,
                       const std::string& statement, int line) {
  for (const auto& lit : body) {
    if (lit.kind == Literal::Kind::Comparison) {
      require_bound(bound, lit.guard.variable, "comparison", statement, line);
    } else if (lit.kind == Literal::Kind::Negative) {
      for (const auto& t : lit.atom.args) {
        if (t.is_variable()) require_bound(bound, t.variable, "negated atom", statement, line);
      }
    }
  }
}

void check_safety(const Rule& rule) {
  auto bound = positive_variables(rule.body);
  auto text = to_string(rule);
  for (const auto& t : rule.head.args) {
    if (t.is_variable()) require_bound(bound, t.variable, "head", text, rule.line);
  }
  check_body_safety(rule.body, bound, text, rule.line);
}

void check_safety(const WeakConstraint& wc) {
  auto bound = positive_variables(wc.body);
  auto text = to_string(wc);
  check_body_safety(wc.body, bound, text, wc.line);
  if (wc.weight.is_variable) require_bound(bound, wc.weight.variable, "weight", text, wc.line);
  for (const auto& t : wc.terms) {
    if (t.is_variable()) require_bound(bound, t.variable, "term tuple", text, wc.line);
  }
}

class ArityRegistry {
 public:
  void note(Symbol pred, std::size_t arity, int line) {
    auto [it, inserted] = arity_.try_emplace(pred.id(), arity);
    if (!inserted && it->second != arity) {
      throw ProgramError(ProgramErrorKind::ArityMismatch,
                         "predicate " + std::string(pred.name()) + " used with arities " +
                             std::to_string(it->second) + " and " + std::to_string(arity),
                         line);
    }
  }
  void note_body(const std::vector<Literal>& body, int line) {
    for (const auto& lit : body) {
      if (lit.kind != Literal::Kind::Comparison) note(lit.atom.predicate, lit.atom.args.size(), line);
    }
  }

 private:
  std::unordered_map<std::uint32_t, std::size_t> arity_;
};

class BodyCompiler {
 public:
  explicit BodyCompiler(std::map<std::string, int>& slots) : slots_(slots) {}

  CompiledBody compile(const std::vector<Literal>& body) {
    CompiledBody out;
    for (const auto& [name, slot] : slots_) bound_.insert(name);
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i].kind != Literal::Kind::Positive) pending.push_back(i);
    }
    emit_ready(body, pending, out);
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i].kind != Literal::Kind::Positive) continue;
      detail::MatchStep m;
      m.predicate = body[i].atom.predicate;
      m.arity = static_cast<std::uint8_t>(body[i].atom.args.size());
      m.literal_index = static_cast<int>(i);
      for (std::size_t k = 0; k < body[i].atom.args.size(); ++k) {
        const auto& t = body[i].atom.args[k];
        if (!t.is_variable()) {
          m.args[k] = {ArgRef::Mode::Constant, t.value};
        } else if (bound_.contains(t.variable)) {
          m.args[k] = {ArgRef::Mode::Check, slot(t.variable)};
        } else {
          m.args[k] = {ArgRef::Mode::Bind, slot(t.variable)};
          bound_.insert(t.variable);
        }
      }
      out.steps.push_back({detail::Step::Kind::Match, static_cast<int>(out.matches.size())});
      out.matches.push_back(m);
      emit_ready(body, pending, out);
    }
    out.num_slots = static_cast<int>(slots_.size());
    return out;
  }

  int slot(const std::string& var) {
    auto [it, inserted] = slots_.try_emplace(var, static_cast<int>(slots_.size()));
    if (it->second >= detail::kMaxSlots) {
      throw ProgramError(ProgramErrorKind::Syntax, "too many variables in one statement");
    }
    return it->second;
  }

 private:
  bool ready(const Literal& lit) const {
    if (lit.kind == Literal::Kind::Comparison) return bound_.contains(lit.guard.variable);
    return std::ranges::all_of(lit.atom.args,
                               [&](const Term& t) { return !t.is_variable() || bound_.contains(t.variable); });
  }

  void emit_ready(const std::vector<Literal>& body, std::vector<std::size_t>& pending, CompiledBody& out) {
    std::erase_if(pending, [&](std::size_t i) {
      const auto& lit = body[i];
      if (!ready(lit)) return false;
      if (lit.kind == Literal::Kind::Comparison) {
        detail::GuardStep g;
        g.slot = slot(lit.guard.variable);
        if (lit.guard.lower) g.lower = *lit.guard.lower;
        if (lit.guard.upper) g.upper = *lit.guard.upper;
        out.steps.push_back({detail::Step::Kind::Guard, static_cast<int>(out.guards.size())});
        out.guards.push_back(g);
      } else {
        detail::AbsentStep a;
        a.predicate = lit.atom.predicate;
        a.arity = static_cast<std::uint8_t>(lit.atom.args.size());
        for (std::size_t k = 0; k < lit.atom.args.size(); ++k) {
          const auto& t = lit.atom.args[k];
          a.args[k] = t.is_variable() ? ArgRef{ArgRef::Mode::Check, slot(t.variable)}
                                      : ArgRef{ArgRef::Mode::Constant, t.value};
        }
        out.steps.push_back({detail::Step::Kind::Absent, static_cast<int>(out.absents.size())});
        out.absents.push_back(a);
      }
      return true;
    });
  }

  std::map<std::string, int>& slots_;
  std::set<std::string> bound_;
};

ArgRef head_ref(const Term& t, std::map<std::string, int>& slots) {
  if (!t.is_variable()) return {ArgRef::Mode::Constant, t.value};
  return {ArgRef::Mode::Check, slots.at(t.variable)};
}

std::shared_ptr<const CompiledProgram> compile(const std::vector<Rule>& rules,
                                               const std::vector<WeakConstraint>& weak,
                                               const std::vector<FactStatement>& facts) {
  ArityRegistry arity;
  for (const auto& r : rules) {
    arity.note(r.head.predicate, r.head.args.size(), r.line);
    arity.note_body(r.body, r.line);
    check_safety(r);
  }
  for (const auto& w : weak) {
    arity.note_body(w.body, w.line);
    check_safety(w);
  }
  for (const auto& f : facts) arity.note(f.predicate, f.args.size(), 0);

  // Dependency graph over derived predicates, heads in first-appearance order.
  std::vector<Symbol> heads;
  std::unordered_map<std::uint32_t, std::set<std::uint32_t>> deps;
  for (const auto& r : rules) {
    if (std::ranges::find(heads, r.head.predicate) == heads.end()) heads.push_back(r.head.predicate);
    auto& d = deps[r.head.predicate.id()];
    for (const auto& lit : r.body) {
      if (lit.kind != Literal::Kind::Comparison) d.insert(lit.atom.predicate.id());
    }
  }
  auto is_head = [&](std::uint32_t id) {
    return std::ranges::any_of(heads, [&](Symbol s) { return s.id() == id; });
  };

  auto out = std::make_shared<CompiledProgram>();
  std::unordered_set<std::uint32_t> done;
  std::unordered_set<std::uint32_t> on_stack;
  auto visit = [&](auto&& self, Symbol pred, int line) -> void {
    if (done.contains(pred.id())) return;
    if (on_stack.contains(pred.id())) {
      throw ProgramError(ProgramErrorKind::Recursion,
                         "predicate " + std::string(pred.name()) + " depends on itself", line);
    }
    on_stack.insert(pred.id());
    for (auto dep : deps[pred.id()]) {
      if (!is_head(dep)) continue;
      auto it = std::ranges::find_if(heads, [&](Symbol s) { return s.id() == dep; });
      self(self, *it, line);
    }
    on_stack.erase(pred.id());
    done.insert(pred.id());
    out->strata.push_back(pred);
  };
  for (Symbol h : heads) {
    int line = 0;
    for (const auto& r : rules) {
      if (r.head.predicate == h) {
        line = r.line;
        break;
      }
    }
    visit(visit, h, line);
  }

  std::unordered_map<std::uint32_t, std::size_t> stratum_of;
  for (std::size_t i = 0; i < out->strata.size(); ++i) stratum_of[out->strata[i].id()] = i;
  out->rules_by_stratum.resize(out->strata.size());

  for (std::size_t ri = 0; ri < rules.size(); ++ri) {
    const auto& r = rules[ri];
    std::map<std::string, int> slots;
    detail::CompiledRule cr;
    cr.body = BodyCompiler(slots).compile(r.body);
    cr.head = r.head.predicate;
    cr.head_arity = static_cast<std::uint8_t>(r.head.args.size());
    for (std::size_t k = 0; k < r.head.args.size(); ++k) cr.head_args[k] = head_ref(r.head.args[k], slots);
    cr.source_index = ri;
    out->rules_by_stratum[stratum_of.at(r.head.predicate.id())].push_back(out->rules.size());
    out->rules.push_back(std::move(cr));
  }

  for (std::size_t wi = 0; wi < weak.size(); ++wi) {
    const auto& w = weak[wi];
    std::map<std::string, int> slots;
    BodyCompiler bc(slots);
    detail::CompiledWeak cw;
    cw.body = bc.compile(w.body);
    cw.level = w.level;
    cw.weight_is_slot = w.weight.is_variable;
    cw.weight_negated = w.weight.negated;
    cw.weight = w.weight.is_variable ? slots.at(w.weight.variable) : w.weight.constant;
    for (const auto& t : w.terms) cw.terms.push_back(head_ref(t, slots));
    long best = -1;
    for (std::size_t m = 0; m < cw.body.matches.size(); ++m) {
      auto it = stratum_of.find(cw.body.matches[m].predicate.id());
      if (it != stratum_of.end() && static_cast<long>(it->second) > best) {
        best = static_cast<long>(it->second);
        cw.choice = cw.body.matches[m].predicate;
        cw.choice_match = static_cast<int>(m);
      }
    }
    if (!cw.choice.empty()) out->weak_by_choice[cw.choice.id()].push_back(out->weak.size());
    out->weak.push_back(std::move(cw));
  }

  std::vector<GroundAtom> ground;
  for (const auto& f : facts) {
    std::vector<Args> partial{Args{}};
    for (auto [lo, hi] : f.args) {
      std::vector<Args> next;
      for (const auto& p : partial) {
        for (int v = lo; v <= hi; ++v) {
          Args a = p;
          a.push_back(v);
          next.push_back(a);
        }
      }
      partial = std::move(next);
    }
    for (const auto& a : partial) ground.emplace_back(f.predicate, a);
  }
  out->facts = AtomSet(std::move(ground));
  return out;
}

std::string guard_string(const Guard& g) {
  if (g.lower && g.upper) {
    if (*g.lower == *g.upper) return g.variable + " = " + std::to_string(*g.lower);
    return std::to_string(*g.lower) + " <= " + g.variable + " <= " + std::to_string(*g.upper);
  }
  if (g.lower) return g.variable + " >= " + std::to_string(*g.lower);
  if (g.upper) return g.variable + " <= " + std::to_string(*g.upper);
  return g.variable + " = " + g.variable;
}

std::string body_string(const std::vector<Literal>& body) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(body[i]);
  }
  return out;
}

}  // namespace

Program::Program() : compiled_(compile({}, {}, {})) {}

Program::Program(std::vector<Rule> rules, std::vector<WeakConstraint> weak_constraints,
                 std::vector<FactStatement> facts)
    : rules_(std::move(rules)), weak_(std::move(weak_constraints)), facts_(std::move(facts)) {
  compiled_ = compile(rules_, weak_, facts_);
}

const AtomSet& Program::facts() const { return compiled_->facts; }

const std::vector<Symbol>& Program::strata() const { return compiled_->strata; }

bool Program::derives(Symbol predicate) const {
  return std::ranges::find(compiled_->strata, predicate) != compiled_->strata.end();
}

std::vector<Rule> Program::rules_for(Symbol predicate) const {
  std::vector<Rule> out;
  for (const auto& r : rules_) {
    if (r.head.predicate == predicate) out.push_back(r);
  }
  return out;
}

std::string to_string(const Term& term) {
  return term.is_variable() ? term.variable : std::to_string(term.value);
}

std::string to_string(const AtomPattern& atom) {
  std::string out(atom.predicate.name());
  if (!atom.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i) out += ',';
      out += to_string(atom.args[i]);
    }
    out += ')';
  }
  return out;
}

std::string to_string(const Literal& literal) {
  switch (literal.kind) {
    case Literal::Kind::Positive:
      return to_string(literal.atom);
    case Literal::Kind::Negative:
      return "not " + to_string(literal.atom);
    case Literal::Kind::Comparison:
      return guard_string(literal.guard);
  }
  return {};
}

std::string to_string(const Rule& rule) {
  if (rule.body.empty()) return to_string(rule.head) + ".";
  return to_string(rule.head) + " :- " + body_string(rule.body) + ".";
}

std::string to_string(const WeakConstraint& wc) {
  std::string weight;
  if (wc.weight.is_variable) {
    weight = (wc.weight.negated ? "-" : "") + wc.weight.variable;
  } else {
    weight = std::to_string(wc.weight.constant);
  }
  std::string out = ":~ " + body_string(wc.body) + ". [" + weight + "@" + std::to_string(wc.level);
  for (const auto& t : wc.terms) out += ", " + to_string(t);
  return out + "]";
}

std::string to_string(const FactStatement& fact) {
  std::string out(fact.predicate.name());
  if (!fact.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < fact.args.size(); ++i) {
      if (i) out += ',';
      auto [lo, hi] = fact.args[i];
      out += lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
    }
    out += ')';
  }
  return out + ".";
}

std::string to_string(const Program& program) {
  std::string out;
  for (const auto& f : program.fact_statements()) out += to_string(f) + "\n";
  for (const auto& r : program.rules()) out += to_string(r) + "\n";
  for (const auto& w : program.weak_constraints()) out += to_string(w) + "\n";
  return out;
}

}  // namespace aspomcp::logic
