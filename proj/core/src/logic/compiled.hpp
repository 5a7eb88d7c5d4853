#pragma once

#include <array>
#include <climits>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "aspomcp/logic/program.hpp"

namespace aspomcp::logic::detail {

inline constexpr int kMaxSlots = 32;

struct ArgRef {
  enum class Mode : std::uint8_t { Constant, Bind, Check };
  Mode mode = Mode::Constant;
  int value = 0;  // constant, or variable slot
};

struct MatchStep {
  Symbol predicate;
  std::uint8_t arity = 0;
  std::array<ArgRef, kMaxArity> args{};
  int literal_index = 0;
};

struct GuardStep {
  int slot = 0;
  int lower = INT_MIN;
  int upper = INT_MAX;
};

struct AbsentStep {
  Symbol predicate;
  std::uint8_t arity = 0;
  std::array<ArgRef, kMaxArity> args{};  // Constant or Check only
};

struct Step {
  enum class Kind : std::uint8_t { Match, Guard, Absent };
  Kind kind;
  int index;
};

// Join plan: positive atoms in source order, each guard and negated atom
// scheduled right after the step that binds its last variable.
struct CompiledBody {
  std::vector<Step> steps;
  std::vector<MatchStep> matches;
  std::vector<GuardStep> guards;
  std::vector<AbsentStep> absents;
  int num_slots = 0;
};

struct CompiledRule {
  CompiledBody body;
  Symbol head;
  std::uint8_t head_arity = 0;
  std::array<ArgRef, kMaxArity> head_args{};
  std::size_t source_index = 0;
};

struct CompiledWeak {
  CompiledBody body;
  bool weight_is_slot = false;
  bool weight_negated = false;
  int weight = 0;  // constant or slot
  int level = 0;
  std::vector<ArgRef> terms;
  // Latest-stratum derived predicate in the body; its groundings are the
  // candidates this constraint ranks. Empty when the body is all facts.
  Symbol choice;
  int choice_match = -1;
};

struct CompiledProgram {
  std::vector<Symbol> strata;
  std::vector<std::vector<std::size_t>> rules_by_stratum;
  std::vector<CompiledRule> rules;
  std::vector<CompiledWeak> weak;
  // weak-constraint indices keyed by choice predicate id
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> weak_by_choice;
  AtomSet facts;
};

}  // namespace aspomcp::logic::detail
