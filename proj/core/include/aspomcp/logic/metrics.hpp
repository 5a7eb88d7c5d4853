#pragma once

#include <span>

#include "aspomcp/logic/cdpi.hpp"
#include "aspomcp/logic/program.hpp"

namespace aspomcp::logic {

// Size of the symmetric difference between the atom sets of two rules.
//
// Variables are renamed by the first (predicate, position) they occur at, so
// `dist(R,V)` and `dist(R,D)` are the same atom. Each comparison contributes
// one "bound atom" per variable and direction (lower/upper); two bound atoms
// on the same slot with different constants count as a single difference,
// not two. Under this reading
//   sample(R) :- dist(R,V), V <= 2.
// is at distance 5 from the learned sample rule: target, not sampled, guess
// and V >= 90 are missing, and the bound on the distance differs.
int rule_distance(const Rule& a, const Rule& b);

// True iff evaluating `hypothesis` (preferences applied) on the example's
// context derives every inclusion and no exclusion.
bool covers(const Program& hypothesis, const Cdpi& example);

// Fraction of `examples` covered; 1.0 for an empty list.
double coverage(const Program& hypothesis, std::span<const Cdpi> examples);

}  // namespace aspomcp::logic
