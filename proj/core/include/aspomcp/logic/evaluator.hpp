#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "aspomcp/logic/program.hpp"

namespace aspomcp::logic {

// The fragment is stratified and choice-free, so there is exactly one
// answer set: facts plus everything the rules derive.
using AnswerSet = AtomSet;

// Why an atom is in the answer set: the rule that fired and the positive
// body atoms it matched.
struct Derivation {
  GroundAtom head;
  std::size_t rule_index = 0;
  std::vector<GroundAtom> support;
};

struct EvalOptions {
  // Rank the groundings of every weak-constrained predicate with `prefer`
  // as soon as its stratum is complete, so later strata only see the
  // preferred groundings.
  bool apply_preferences = false;
  std::vector<Derivation>* derivations = nullptr;
};

AnswerSet evaluate(const Program& program, const AtomSet& facts, const EvalOptions& options = {});

// Per-level cost of one candidate; compared from the highest level down.
using CostVector = std::map<int, long, std::greater<>>;

CostVector candidate_cost(const Program& program, const AnswerSet& answer, const GroundAtom& candidate);

// Groundings of `choice_predicate` in `answer` whose weak-constraint cost
// vector is lexicographically minimal (highest level first). Ties keep all
// minimisers; with no applicable constraint every candidate is returned.
AtomSet prefer(const Program& program, const AnswerSet& answer, Symbol choice_predicate);

// Evaluates with preferences applied and keeps the atoms whose predicate is
// in `action_vocabulary`.
AtomSet suggested_actions(const Program& program, const AtomSet& facts, std::span<const Symbol> action_vocabulary);

}  // namespace aspomcp::logic
