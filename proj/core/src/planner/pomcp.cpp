#include "aspomcp/planner/pomcp.hpp"

namespace aspomcp::planner {

void PlannerConfig::validate() const {
  if (num_simulations < 1) throw ConfigError("planner: simulations must be at least 1");
  if (num_particles < 1) throw ConfigError("planner: particles must be at least 1");
  if (prior_visits < 0) throw ConfigError("planner: prior_visits must be nonnegative");
  if (max_depth < 1) throw ConfigError("planner: max_depth must be at least 1");
  if (step_cap < 1) throw ConfigError("planner: step_cap must be at least 1");
  if (exploration && !(*exploration >= 0.0)) throw ConfigError("planner: exploration must be nonnegative");
}

PlannerConfig PlannerConfig::from_config(const KeyValueConfig& cfg) {
  PlannerConfig c;
  c.num_simulations = cfg.get_int("simulations", c.num_simulations);
  c.num_particles = cfg.get_int("particles", c.num_simulations);
  if (cfg.contains("exploration")) c.exploration = cfg.get_double("exploration", 0.0);
  c.prior_visits = cfg.get_int("prior_visits", c.prior_visits);
  c.max_depth = cfg.get_int("max_depth", c.max_depth);
  c.rules_enabled = cfg.get_bool("rules", c.rules_enabled);
  c.step_cap = cfg.get_int("step_cap", c.step_cap);
  c.reuse_tree = cfg.get_bool("reuse_tree", c.reuse_tree);
  c.validate();
  return c;
}

void PlannerConfig::write(KeyValueConfig& cfg) const {
  cfg.set("simulations", num_simulations);
  cfg.set("particles", num_particles);
  if (exploration) {
    cfg.set("exploration", *exploration);
  } else {
    cfg.erase("exploration");
  }
  cfg.set("prior_visits", prior_visits);
  cfg.set("max_depth", max_depth);
  cfg.set("rules", std::string(rules_enabled ? "true" : "false"));
  cfg.set("step_cap", step_cap);
  cfg.set("reuse_tree", std::string(reuse_tree ? "true" : "false"));
}

double uct_value(double value, long node_visits, long edge_visits, double c) {
  return value + c * std::sqrt(std::log(static_cast<double>(node_visits)) / static_cast<double>(edge_visits));
}

}  // namespace aspomcp::planner
