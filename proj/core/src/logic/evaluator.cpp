#include "aspomcp/logic/evaluator.hpp"

#include <algorithm>
#include <set>

#include "compiled.hpp"

namespace aspomcp::logic {

namespace {

using detail::ArgRef;
using detail::CompiledBody;
using detail::CompiledProgram;
using detail::CompiledWeak;
using Slots = std::array<int, detail::kMaxSlots>;

int resolve(const ArgRef& ref, const Slots& slots) {
  return ref.mode == ArgRef::Mode::Constant ? ref.value : slots[ref.value];
}

// Enumerates every assignment under which `body` holds in `db`, calling
// `on_match(slots, matched)` where matched[i] is the atom used by the i-th
// positive literal.
template <typename OnMatch>
class BodyMatcher {
 public:
  BodyMatcher(const CompiledBody& body, const AtomSet& db, OnMatch& on_match)
      : body_(body), db_(db), on_match_(on_match), matched_(body.matches.size(), nullptr) {}

  void run() { step(0); }

 private:
  void step(std::size_t i) {
    if (i == body_.steps.size()) {
      on_match_(slots_, matched_);
      return;
    }
    const auto& s = body_.steps[i];
    switch (s.kind) {
      case detail::Step::Kind::Match: {
        const auto& m = body_.matches[s.index];
        for (const auto& atom : db_.with_predicate(m.predicate)) {
          if (atom.arity() != m.arity || !unify(m, atom)) continue;
          matched_[s.index] = &atom;
          step(i + 1);
        }
        break;
      }
      case detail::Step::Kind::Guard: {
        const auto& g = body_.guards[s.index];
        int v = slots_[g.slot];
        if (v >= g.lower && v <= g.upper) step(i + 1);
        break;
      }
      case detail::Step::Kind::Absent: {
        const auto& a = body_.absents[s.index];
        GroundAtom probe{a.predicate};
        for (std::size_t k = 0; k < a.arity; ++k) probe.args.push_back(resolve(a.args[k], slots_));
        if (!db_.contains(probe)) step(i + 1);
        break;
      }
    }
  }

  bool unify(const detail::MatchStep& m, const GroundAtom& atom) {
    for (std::size_t k = 0; k < m.arity; ++k) {
      const auto& ref = m.args[k];
      int v = atom.args[k];
      switch (ref.mode) {
        case ArgRef::Mode::Constant:
          if (v != ref.value) return false;
          break;
        case ArgRef::Mode::Bind:
          slots_[ref.value] = v;
          break;
        case ArgRef::Mode::Check:
          if (slots_[ref.value] != v) return false;
          break;
      }
    }
    return true;
  }

  const CompiledBody& body_;
  const AtomSet& db_;
  OnMatch& on_match_;
  Slots slots_{};
  std::vector<const GroundAtom*> matched_;
};

template <typename OnMatch>
void match_body(const CompiledBody& body, const AtomSet& db, OnMatch&& on_match) {
  BodyMatcher<std::remove_reference_t<OnMatch>> matcher(body, db, on_match);
  matcher.run();
}

struct WeakSource {
  const CompiledWeak* wc;
  int attribution_match;
};

std::vector<WeakSource> constraints_for(const CompiledProgram& cp, Symbol choice, bool designated_only) {
  std::vector<WeakSource> out;
  if (designated_only) {
    if (auto it = cp.weak_by_choice.find(choice.id()); it != cp.weak_by_choice.end()) {
      for (auto idx : it->second) out.push_back({&cp.weak[idx], cp.weak[idx].choice_match});
    }
    return out;
  }
  for (const auto& wc : cp.weak) {
    for (std::size_t m = 0; m < wc.body.matches.size(); ++m) {
      if (wc.body.matches[m].predicate == choice) {
        out.push_back({&wc, static_cast<int>(m)});
        break;
      }
    }
  }
  return out;
}

std::vector<CostVector> costs(const std::vector<WeakSource>& sources, const AnswerSet& answer,
                              std::span<const GroundAtom> candidates) {
  // ASP counts each distinct [w@l, terms] tuple once.
  std::vector<std::set<std::vector<int>>> tuples(candidates.size());
  for (const auto& src : sources) {
    const auto& wc = *src.wc;
    match_body(wc.body, answer, [&](const Slots& slots, const std::vector<const GroundAtom*>& matched) {
      const GroundAtom* cand = matched[src.attribution_match];
      auto idx = static_cast<std::size_t>(cand - candidates.data());
      if (idx >= candidates.size()) return;
      int w = wc.weight_is_slot ? slots[wc.weight] : wc.weight;
      if (wc.weight_negated) w = -w;
      std::vector<int> key{wc.level, w};
      for (const auto& t : wc.terms) key.push_back(resolve(t, slots));
      tuples[idx].insert(std::move(key));
    });
  }
  std::vector<CostVector> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (const auto& key : tuples[i]) out[i][key[0]] += key[1];
  }
  return out;
}

// -1, 0, 1 comparing cost vectors, missing levels counting as zero.
int compare(const CostVector& a, const CostVector& b) {
  std::set<int, std::greater<>> levels;
  for (const auto& [l, _] : a) levels.insert(l);
  for (const auto& [l, _] : b) levels.insert(l);
  for (int l : levels) {
    long ca = a.contains(l) ? a.at(l) : 0;
    long cb = b.contains(l) ? b.at(l) : 0;
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  return 0;
}

AtomSet prefer_impl(const CompiledProgram& cp, const AnswerSet& answer, Symbol choice, bool designated_only) {
  auto candidates = answer.with_predicate(choice);
  if (candidates.empty()) return {};
  auto sources = constraints_for(cp, choice, designated_only);
  if (sources.empty()) return AtomSet(std::vector<GroundAtom>(candidates.begin(), candidates.end()));
  auto cost = costs(sources, answer, candidates);
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (compare(cost[i], cost[best]) < 0) best = i;
  }
  std::vector<GroundAtom> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (compare(cost[i], cost[best]) == 0) out.push_back(candidates[i]);
  }
  return AtomSet(std::move(out));
}

}  // namespace

AnswerSet evaluate(const Program& program, const AtomSet& facts, const EvalOptions& options) {
  const auto& cp = program.compiled();
  AtomSet db = facts;
  db.insert_all(cp.facts);
  std::vector<GroundAtom> derived;
  for (std::size_t s = 0; s < cp.strata.size(); ++s) {
    derived.clear();
    for (auto ri : cp.rules_by_stratum[s]) {
      const auto& rule = cp.rules[ri];
      match_body(rule.body, db, [&](const Slots& slots, const std::vector<const GroundAtom*>& matched) {
        GroundAtom head{rule.head};
        for (std::size_t k = 0; k < rule.head_arity; ++k) head.args.push_back(resolve(rule.head_args[k], slots));
        derived.push_back(head);
        if (options.derivations) {
          Derivation d{head, rule.source_index, {}};
          for (const auto* a : matched) d.support.push_back(*a);
          options.derivations->push_back(std::move(d));
        }
      });
    }
    db.insert_all(AtomSet(derived));
    if (options.apply_preferences && cp.weak_by_choice.contains(cp.strata[s].id())) {
      AtomSet preferred = prefer_impl(cp, db, cp.strata[s], true);
      db.erase_predicate(cp.strata[s]);
      db.insert_all(preferred);
    }
  }
  if (options.derivations && options.apply_preferences) {
    std::erase_if(*options.derivations, [&](const Derivation& d) { return !db.contains(d.head); });
  }
  return db;
}

CostVector candidate_cost(const Program& program, const AnswerSet& answer, const GroundAtom& candidate) {
  auto candidates = answer.with_predicate(candidate.predicate);
  auto it = std::ranges::find(candidates, candidate);
  if (it == candidates.end()) return {};
  auto sources = constraints_for(program.compiled(), candidate.predicate, false);
  auto all = costs(sources, answer, candidates);
  return all[static_cast<std::size_t>(it - candidates.begin())];
}

AtomSet prefer(const Program& program, const AnswerSet& answer, Symbol choice_predicate) {
  return prefer_impl(program.compiled(), answer, choice_predicate, false);
}

AtomSet suggested_actions(const Program& program, const AtomSet& facts, std::span<const Symbol> action_vocabulary) {
  AnswerSet answer = evaluate(program, facts, {.apply_preferences = true});
  std::vector<GroundAtom> out;
  for (Symbol pred : action_vocabulary) {
    auto range = answer.with_predicate(pred);
    out.insert(out.end(), range.begin(), range.end());
  }
  return AtomSet(std::move(out));
}

}  // namespace aspomcp::logic
