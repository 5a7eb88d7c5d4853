#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aspomcp/config.hpp"
#include "aspomcp/domains/features.hpp"
#include "aspomcp/pomdp.hpp"

namespace aspomcp::domains {

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct RocksampleConfig {
  int grid_size = 12;
  std::vector<Cell> rocks;
  Cell start;
  double sample_good = 10.0;
  double sample_bad = -10.0;
  double exit_reward = 10.0;
  double half_efficiency_distance = 20.0;
  double gamma = 0.95;
  double reinvigoration_prob = 0.02;
  // True initial rock values, bit r set when rock r is valuable.
  std::optional<std::uint32_t> rock_values;

  void validate() const;

  // Reads `grid_size`, `num_rocks`, `rocks` (x:y pairs), `start`,
  // `rock_values` and the reward keys; anything of the layout left
  // unspecified is drawn from `instance_rng`.
  static RocksampleConfig from_config(const KeyValueConfig& cfg, Rng& instance_rng);
  void write(KeyValueConfig& cfg) const;
};

struct RocksampleState {
  Cell agent;
  std::uint32_t valuable = 0;  // hidden
  std::uint32_t sampled = 0;   // observable

  bool is_valuable(std::size_t rock) const { return (valuable >> rock) & 1u; }
  bool is_sampled(std::size_t rock) const { return (sampled >> rock) & 1u; }
  friend bool operator==(const RocksampleState&, const RocksampleState&) = default;
};

class Rocksample {
 public:
  using State = RocksampleState;
  using Config = RocksampleConfig;
  static constexpr std::string_view kName = "rocksample";

  enum : Action { North = 0, South = 1, East = 2, West = 3, FirstSample = 4 };
  enum : Observation { ObsNone = 0, ObsGood = 1, ObsBad = 2 };

  explicit Rocksample(RocksampleConfig config);

  const RocksampleConfig& config() const { return config_; }
  std::size_t num_rocks() const { return config_.rocks.size(); }
  int num_actions() const { return 4 + 2 * static_cast<int>(num_rocks()); }
  Action sample_action(std::size_t rock) const { return FirstSample + static_cast<Action>(rock); }
  Action check_action(std::size_t rock) const {
    return FirstSample + static_cast<Action>(num_rocks() + rock);
  }
  double gamma() const { return config_.gamma; }
  double reward_span() const;

  StepResult<State> step(const State& state, Action action, Rng& rng) const;
  // Moves that stay on the grid, east (exit at the right edge), the sample
  // of a rock under the agent, and every check.
  void legal_actions(const State& state, std::vector<Action>& out) const;
  State initial_state() const;
  State sample_initial_state(Rng& rng) const;
  State mutate_particle(const State& state, Rng& rng) const;
  State resample_hidden(const State& state, Rng& rng) const;
  bool same_observable(const State& a, const State& b) const {
    return a.agent == b.agent && a.sampled == b.sampled;
  }

  // Probability that checking `rock` from `agent` reports its true value.
  double check_accuracy(Cell agent, std::size_t rock) const;

  FeatureSet belief_features(std::span<const State> particles, const State& observable) const;
  FeatureSet observable_features(const State& state) const;
  bool is_belief_atom(const logic::GroundAtom& atom) const;

  // East at the right edge leaves the grid and is reported as `exit`.
  logic::GroundAtom action_atom(const State& state, Action action) const;
  Action action_from_atom(const logic::GroundAtom& atom) const;
  std::span<const logic::Symbol> action_vocabulary() const;
  logic::AtomSet action_groundings(logic::Symbol predicate) const;
  std::string action_name(Action action) const;

 private:
  RocksampleConfig config_;
};

static_assert(Simulator<Rocksample>);

}  // namespace aspomcp::domains
