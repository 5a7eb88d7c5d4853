#include "aspomcp/planner/episode.hpp"

namespace aspomcp::planner {

trace::Trace run_episode(const KeyValueConfig& instance, const PlannerConfig& config, const logic::Program* rules,
                         std::uint64_t seed) {
  EpisodeRngs rngs(seed);
  auto domain = domains::make_domain(instance, rngs.instance);
  auto trace = std::visit(
      [&](const auto& sim) { return plan_episode(sim, config, rules, rngs, sim.initial_state()); }, domain);
  trace.config = domains::instance_config(domain);
  config.write(trace.config);
  trace.seed = seed;
  return trace;
}

}  // namespace aspomcp::planner
