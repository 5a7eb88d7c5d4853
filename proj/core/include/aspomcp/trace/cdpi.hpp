#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aspomcp/logic/cdpi.hpp"
#include "aspomcp/trace/trace.hpp"

namespace aspomcp::trace {

// G(A): the ground atoms of action predicate A in the current instance.
using GroundingFn = std::function<logic::AtomSet(logic::Symbol)>;

// Examples for one trace step with executed action a of predicate A_i:
//   positive        <{a}, G(A_i) \ {a}>       id "p<tag>"
//   counterexample  <{}, G(A_j)>  per A_j != A_i   id "c<tag>_<A_j>"
//   ordering        <G(A_i) \ {a}, {}>         id "o<tag>", ordered below the positive
// all with the step's features as context. Throws std::invalid_argument
// when the action predicate is not in `vocabulary`.
std::vector<logic::Cdpi> make_cdpis(const TraceStep& step, std::span<const logic::Symbol> vocabulary,
                                    const GroundingFn& groundings, const std::string& tag);

// Every step of every trace; tags are "<trace index>_<t>".
std::vector<logic::Cdpi> make_cdpis(std::span<const Trace> traces, std::span<const logic::Symbol> vocabulary,
                                    const GroundingFn& groundings);

// Positive and counterexample CDPIs; ordering partners only make sense
// inside an ordering and are left out.
std::vector<logic::Cdpi> coverage_examples(std::span<const logic::Cdpi> cdpis);

}  // namespace aspomcp::trace
