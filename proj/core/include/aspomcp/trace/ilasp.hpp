#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aspomcp/domains/domain.hpp"
#include "aspomcp/logic/cdpi.hpp"
#include "aspomcp/logic/program.hpp"

namespace aspomcp::trace {

// Search-space declarations of one learning task. Entries are written
// verbatim inside the corresponding ILASP directive, e.g. a body entry
// "guess(var(rock), var(prob))" becomes "#modeb(1, guess(var(rock), var(prob)))."
//
// The learner's exact mode bias is not published; this is a
// reconstruction: heads from the action vocabulary, bodies from the
// feature vocabulary, one-sided integer comparisons against constants of
// the compared variable's type, and (optionally) weak-constraint bodies.
struct ModeBias {
  std::vector<std::string> heads;
  std::vector<std::string> bodies;
  std::vector<std::string> comparison_types;           // var(t) >= const(t), var(t) <= const(t)
  std::map<std::string, std::vector<int>> constants;   // #constant(t, v).
  std::vector<std::string> weak_bodies;                 // #modeo
  std::vector<std::string> weights;                     // #weight
  int max_levels = 0;                                   // #maxp, when weak bodies are given
  int max_vars = 4;
  int max_body = 6;
};

// Mode bias for the task of `action` on the instance `domain`.
ModeBias default_mode_bias(const domains::AnyDomain& domain, logic::Symbol action);

// Integer ranges of the instance, e.g. rock(1..4). or level(0..10).
logic::Program default_background(const domains::AnyDomain& domain);

// Background knowledge: the fact statements of `background` (typically
// integer ranges such as rock(1..4).).
//
// Throws std::invalid_argument when the CDPIs feed more than one action
// predicate. Ordering partners without inclusions are omitted together
// with their ordering.
std::string export_ilasp(std::span<const logic::Cdpi> cdpis, const logic::Program& background,
                         const ModeBias& bias);

// The examples export_ilasp keeps.
bool is_exported(const logic::Cdpi& cdpi);

// Reads back the examples and orderings of an exported task. Example kinds
// come from the id prefix (p/c/o) and the action from the task header.
std::vector<logic::Cdpi> read_ilasp_examples(std::string_view text);

}  // namespace aspomcp::trace
