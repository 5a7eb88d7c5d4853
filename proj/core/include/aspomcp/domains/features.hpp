#pragma once

#include <cstddef>

#include "aspomcp/logic/atom.hpp"

namespace aspomcp::domains {

using FeatureSet = logic::AtomSet;

// Probability bucket in {0,10,...,100}: bucket v means the probability lies
// in [v, v+10) percent; 100 is reserved for p == 1. Throws std::domain_error
// outside [0,1].
int discretize_prob(double p);

// Same bucketing for an exact ratio count/total, free of rounding error.
int discretize_fraction(std::size_t count, std::size_t total);

}  // namespace aspomcp::domains
