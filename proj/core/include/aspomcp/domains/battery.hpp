#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aspomcp/config.hpp"
#include "aspomcp/domains/features.hpp"
#include "aspomcp/pomdp.hpp"

namespace aspomcp::domains {

struct BatteryConfig {
  int path_length = 35;
  std::vector<int> stations;  // sorted, strictly inside (0, path_length)
  int max_level = 10;
  double drain_prob = 0.5;
  double sensor_accuracy = 0.9;
  double goal_reward = 10.0;
  double depletion_reward = -10.0;
  double recharge_cost = -1.0;
  double check_cost = -0.5;
  double gamma = 0.95;
  int min_gap = 1;
  int max_gap = 4;
  double reinvigoration_prob = 0.1;
  std::optional<int> initial_level;  // true starting charge

  void validate() const;

  // Reads `path_length`, `stations`, `levels`, `initial_level`, gap bounds
  // and the reward keys. Missing stations are laid out with gaps drawn
  // uniformly from [min_gap, max_gap]; a missing initial level is drawn
  // uniformly from 1..levels.
  static BatteryConfig from_config(const KeyValueConfig& cfg, Rng& instance_rng);
  void write(KeyValueConfig& cfg) const;
};

struct BatteryState {
  int position = 0;  // observable
  int level = 0;     // hidden
  friend bool operator==(const BatteryState&, const BatteryState&) = default;
};

class Battery {
 public:
  using State = BatteryState;
  using Config = BatteryConfig;
  static constexpr std::string_view kName = "battery";

  enum : Action { Advance = 0, Check = 1, Recharge = 2 };

  explicit Battery(BatteryConfig config);

  const BatteryConfig& config() const { return config_; }
  int num_actions() const { return 3; }
  double gamma() const { return config_.gamma; }
  double reward_span() const;
  bool at_station(int position) const;
  // Distance to the nearest station strictly ahead, or to the goal.
  int distance_to_next(int position) const;

  // A check reports level + 1 as its observation; 0 means no observation.
  StepResult<State> step(const State& state, Action action, Rng& rng) const;
  void legal_actions(const State& state, std::vector<Action>& out) const;
  State initial_state() const;
  State sample_initial_state(Rng& rng) const;
  State mutate_particle(const State& state, Rng& rng) const;
  State resample_hidden(const State& state, Rng& rng) const;
  bool same_observable(const State& a, const State& b) const { return a.position == b.position; }

  FeatureSet belief_features(std::span<const State> particles, const State& observable) const;
  FeatureSet observable_features(const State& state) const;
  bool is_belief_atom(const logic::GroundAtom& atom) const;

  logic::GroundAtom action_atom(const State& state, Action action) const;
  Action action_from_atom(const logic::GroundAtom& atom) const;
  std::span<const logic::Symbol> action_vocabulary() const;
  logic::AtomSet action_groundings(logic::Symbol predicate) const;
  std::string action_name(Action action) const;

 private:
  BatteryConfig config_;
};

static_assert(Simulator<Battery>);

}  // namespace aspomcp::domains
