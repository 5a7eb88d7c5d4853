#pragma once

#include <cstdint>
#include <vector>

#include "aspomcp/domains/domain.hpp"
#include "aspomcp/planner/pomcp.hpp"
#include "aspomcp/trace/trace.hpp"

namespace aspomcp::planner {

// Plans one episode on a concrete instance: search, act in the environment,
// update the belief, record the step; until terminal or config.step_cap.
// On belief collapse the belief is re-seeded from the prior; if that also
// fails BeliefCollapse propagates.
template <GroundedDomain Sim>
trace::Trace plan_episode(const Sim& sim, const PlannerConfig& config, const logic::Program* rules,
                          EpisodeRngs& rngs, const typename Sim::State& initial_state) {
  const auto capacity = static_cast<std::size_t>(config.num_particles);
  auto belief = ParticleBelief<typename Sim::State>::from_prior(sim, capacity, rngs.belief);
  Pomcp<Sim> planner(sim, config, rules, rngs.search, rngs.rollout);

  trace::Trace trace;
  trace.domain = std::string(Sim::kName);
  trace.gamma = sim.gamma();
  std::vector<double> rewards;
  auto state = initial_state;
  for (int t = 0; t < config.step_cap; ++t) {
    Action action = planner.search(belief, state);
    auto result = sim.step(state, action, rngs.environment);
    trace.steps.push_back(trace::TraceStep{t, planner.root_features(), sim.action_atom(state, action), result.reward});
    rewards.push_back(result.reward);
    if (result.terminal) break;
    try {
      belief = belief_update(belief, action, result.observation, sim, rngs.belief);
    } catch (const BeliefCollapse&) {
      belief = reseed_belief(state, action, result.observation, capacity, sim, rngs.belief, 100 * capacity);
    }
    planner.advance(action, result.observation);
    state = std::move(result.next);
  }
  trace.discounted_return = discounted_return(rewards, sim.gamma());
  return trace;
}

// Builds the instance described by `instance` (unpinned layout drawn from
// the seed's instance stream) and plans one episode. The trace's config
// holds the fully pinned instance plus the planner settings.
trace::Trace run_episode(const KeyValueConfig& instance, const PlannerConfig& config, const logic::Program* rules,
                         std::uint64_t seed);

}  // namespace aspomcp::planner
