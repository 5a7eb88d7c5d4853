#include "aspomcp/logic/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aspomcp/logic/evaluator.hpp"

namespace aspomcp::logic {

std::string_view to_string(CdpiKind kind) {
  switch (kind) {
    case CdpiKind::Positive: return "positive";
    case CdpiKind::Counterexample: return "counterexample";
    case CdpiKind::OrderingPartner: return "ordering";
  }
  return "unknown";
}

namespace {

using Items = std::map<std::string, std::set<int>>;

class Canonicalizer {
 public:
  explicit Canonicalizer(const Rule& rule) {
    name_atom(rule.head);
    std::vector<const AtomPattern*> positive;
    std::vector<const AtomPattern*> negative;
    for (const auto& lit : rule.body) {
      if (lit.kind == Literal::Kind::Positive) positive.push_back(&lit.atom);
      if (lit.kind == Literal::Kind::Negative) negative.push_back(&lit.atom);
    }
    auto by_name = [](const AtomPattern* a, const AtomPattern* b) {
      if (auto c = a->predicate.name() <=> b->predicate.name(); c != 0) return c < 0;
      return a->args.size() < b->args.size();
    };
    std::ranges::stable_sort(positive, by_name);
    std::ranges::stable_sort(negative, by_name);
    for (const auto* a : positive) name_atom(*a);
    for (const auto* a : negative) name_atom(*a);
  }

  std::string atom(const AtomPattern& a) const {
    std::string out(a.predicate.name());
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      out += a.args[i].is_variable() ? var(a.args[i].variable) : std::to_string(a.args[i].value);
    }
    return out + ')';
  }

  std::string var(const std::string& name) const {
    auto it = names_.find(name);
    return it == names_.end() ? "?" + name : it->second;
  }

 private:
  void name_atom(const AtomPattern& a) {
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (a.args[i].is_variable()) {
        names_.try_emplace(a.args[i].variable, std::string(a.predicate.name()) + "/" + std::to_string(i));
      }
    }
  }

  std::map<std::string, std::string> names_;
};

Items rule_items(const Rule& rule) {
  Canonicalizer canon(rule);
  Items items;
  items["head " + canon.atom(rule.head)];
  for (const auto& lit : rule.body) {
    switch (lit.kind) {
      case Literal::Kind::Positive:
        items[canon.atom(lit.atom)];
        break;
      case Literal::Kind::Negative:
        items["not " + canon.atom(lit.atom)];
        break;
      case Literal::Kind::Comparison:
        if (lit.guard.lower) items["lower " + canon.var(lit.guard.variable)].insert(*lit.guard.lower);
        if (lit.guard.upper) items["upper " + canon.var(lit.guard.variable)].insert(*lit.guard.upper);
        break;
    }
  }
  return items;
}

}  // namespace

int rule_distance(const Rule& a, const Rule& b) {
  auto ia = rule_items(a);
  auto ib = rule_items(b);
  int keys = static_cast<int>(ia.size());
  int same = 0;
  for (const auto& [key, values] : ib) {
    auto it = ia.find(key);
    if (it == ia.end()) {
      ++keys;
    } else if (it->second == values) {
      ++same;
    }
  }
  return keys - same;
}

bool covers(const Program& hypothesis, const Cdpi& example) {
  AnswerSet answer = evaluate(hypothesis, example.context, {.apply_preferences = true});
  if (!answer.includes(example.inclusions)) return false;
  return std::ranges::none_of(example.exclusions, [&](const GroundAtom& a) { return answer.contains(a); });
}

double coverage(const Program& hypothesis, std::span<const Cdpi> examples) {
  if (examples.empty()) return 1.0;
  auto n = std::ranges::count_if(examples, [&](const Cdpi& e) { return covers(hypothesis, e); });
  return static_cast<double>(n) / static_cast<double>(examples.size());
}

}  // namespace aspomcp::logic
