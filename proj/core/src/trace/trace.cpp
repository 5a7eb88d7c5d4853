#include "aspomcp/trace/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aspomcp/pomdp.hpp"

namespace aspomcp::trace {

double Trace::recompute_return() const {
  std::vector<double> rewards;
  rewards.reserve(steps.size());
  for (const auto& s : steps) rewards.push_back(s.reward);
  return aspomcp::discounted_return(rewards, gamma);
}

std::vector<Trace> filter_traces(std::span<const Trace> traces) {
  if (traces.empty()) throw std::invalid_argument("filter_traces: no traces");
  double sum = 0.0;
  for (const auto& t : traces) sum += t.discounted_return;
  double mean = sum / static_cast<double>(traces.size());
  // Summation rounding can push the mean of equal returns one ulp above them.
  double threshold = mean - 1e-12 * std::max(1.0, std::abs(mean));
  std::vector<Trace> kept;
  for (const auto& t : traces) {
    if (t.discounted_return >= threshold) kept.push_back(t);
  }
  return kept;
}

}  // namespace aspomcp::trace
