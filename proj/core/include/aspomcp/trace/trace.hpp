#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aspomcp/config.hpp"
#include "aspomcp/logic/atom.hpp"

namespace aspomcp::trace {

struct TraceStep {
  int t = 0;
  logic::AtomSet features;  // root grounding when the action was chosen
  logic::GroundAtom action;
  double reward = 0.0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
  std::string domain;
  KeyValueConfig config;  // instance plus planner settings
  std::uint64_t seed = 0;
  double gamma = 1.0;
  std::vector<TraceStep> steps;
  double discounted_return = 0.0;

  // Discounted return recomputed from the step rewards.
  double recompute_return() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Traces whose discounted return is at least the mean over `traces`.
// Throws std::invalid_argument on an empty list.
std::vector<Trace> filter_traces(std::span<const Trace> traces);

}  // namespace aspomcp::trace
