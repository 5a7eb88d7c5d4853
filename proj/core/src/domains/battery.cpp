#include "aspomcp/domains/battery.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "aspomcp/domains/vocabulary.hpp"

namespace aspomcp::domains {

using logic::GroundAtom;
using logic::Symbol;

void BatteryConfig::validate() const {
  if (path_length <= 0) throw ConfigError("battery: path_length must be positive");
  if (max_level <= 0) throw ConfigError("battery: levels must be positive");
  if (!(drain_prob >= 0 && drain_prob <= 1)) throw ConfigError("battery: drain_prob must lie in [0,1]");
  if (!(sensor_accuracy > 0.5 && sensor_accuracy <= 1)) {
    throw ConfigError("battery: sensor_accuracy must lie in (0.5,1]");
  }
  if (!(gamma >= 0 && gamma <= 1)) throw ConfigError("battery: gamma must lie in [0,1]");
  if (min_gap < 1 || max_gap < min_gap) throw ConfigError("battery: invalid gap range");
  if (!std::ranges::is_sorted(stations) || std::ranges::adjacent_find(stations) != stations.end()) {
    throw ConfigError("battery: stations must be strictly increasing");
  }
  for (int s : stations) {
    if (s <= 0 || s >= path_length) throw ConfigError("battery: stations must lie strictly inside the path");
  }
  if (initial_level && (*initial_level < 1 || *initial_level > max_level)) {
    throw ConfigError("battery: initial_level must lie in 1..levels");
  }
}

BatteryConfig BatteryConfig::from_config(const KeyValueConfig& cfg, Rng& instance_rng) {
  BatteryConfig c;
  c.path_length = cfg.get_int("path_length", c.path_length);
  c.max_level = cfg.get_int("levels", c.max_level);
  c.min_gap = cfg.get_int("min_gap", c.min_gap);
  c.max_gap = cfg.get_int("max_gap", c.max_gap);
  if (c.min_gap < 1 || c.max_gap < c.min_gap) throw ConfigError("battery: invalid gap range");
  if (cfg.contains("stations")) {
    c.stations = cfg.get_ints("stations");
  } else {
    int pos = 0;
    while (true) {
      pos += random_int(instance_rng, c.min_gap, c.max_gap);
      if (pos >= c.path_length) break;
      c.stations.push_back(pos);
    }
  }
  c.drain_prob = cfg.get_double("drain_prob", c.drain_prob);
  c.sensor_accuracy = cfg.get_double("sensor_accuracy", c.sensor_accuracy);
  c.goal_reward = cfg.get_double("goal_reward", c.goal_reward);
  c.depletion_reward = cfg.get_double("depletion_reward", c.depletion_reward);
  c.recharge_cost = cfg.get_double("recharge_cost", c.recharge_cost);
  c.check_cost = cfg.get_double("check_cost", c.check_cost);
  c.gamma = cfg.get_double("gamma", c.gamma);
  c.reinvigoration_prob = cfg.get_double("reinvigoration_prob", c.reinvigoration_prob);
  if (cfg.contains("initial_level")) {
    c.initial_level = cfg.get_int("initial_level", 0);
  } else {
    c.initial_level = random_int(instance_rng, 1, c.max_level);
  }
  c.validate();
  return c;
}

void BatteryConfig::write(KeyValueConfig& cfg) const {
  cfg.set("path_length", path_length);
  std::string text;
  for (int s : stations) text += (text.empty() ? "" : " ") + std::to_string(s);
  cfg.set("stations", text);
  cfg.set("levels", max_level);
  cfg.set("min_gap", min_gap);
  cfg.set("max_gap", max_gap);
  cfg.set("drain_prob", drain_prob);
  cfg.set("sensor_accuracy", sensor_accuracy);
  cfg.set("goal_reward", goal_reward);
  cfg.set("depletion_reward", depletion_reward);
  cfg.set("recharge_cost", recharge_cost);
  cfg.set("check_cost", check_cost);
  cfg.set("gamma", gamma);
  cfg.set("reinvigoration_prob", reinvigoration_prob);
  if (initial_level) cfg.set("initial_level", *initial_level);
}

Battery::Battery(BatteryConfig config) : config_(std::move(config)) { config_.validate(); }

double Battery::reward_span() const {
  std::array<double, 5> r{config_.goal_reward, config_.depletion_reward, config_.recharge_cost, config_.check_cost, 0.0};
  return std::ranges::max(r) - std::ranges::min(r);
}

bool Battery::at_station(int position) const { return std::ranges::binary_search(config_.stations, position); }

int Battery::distance_to_next(int position) const {
  auto it = std::ranges::upper_bound(config_.stations, position);
  return (it == config_.stations.end() ? config_.path_length : *it) - position;
}

StepResult<Battery::State> Battery::step(const State& state, Action action, Rng& rng) const {
  StepResult<State> r{state};
  switch (action) {
    case Advance:
      ++r.next.position;
      if (bernoulli(rng, config_.drain_prob)) --r.next.level;
      if (r.next.position >= config_.path_length) {
        r.reward = config_.goal_reward;
        r.terminal = true;
      } else if (r.next.level <= 0) {
        r.next.level = 0;
        r.reward = config_.depletion_reward;
        r.terminal = true;
      }
      return r;
    case Check: {
      int reading = state.level;
      if (!bernoulli(rng, config_.sensor_accuracy)) {
        bool down = state.level > 0;
        bool up = state.level < config_.max_level;
        if (down && up) {
          reading += bernoulli(rng, 0.5) ? 1 : -1;
        } else if (down) {
          --reading;
        } else if (up) {
          ++reading;
        }
      }
      r.observation = reading + 1;
      r.reward = config_.check_cost;
      return r;
    }
    case Recharge:
      if (!at_station(state.position)) {
        throw std::invalid_argument("battery: recharge is only legal at a station");
      }
      r.next.level = config_.max_level;
      r.reward = config_.recharge_cost;
      return r;
    default:
      throw std::invalid_argument("battery: malformed action id " + std::to_string(action));
  }
}

void Battery::legal_actions(const State& state, std::vector<Action>& out) const {
  out.clear();
  out.push_back(Advance);
  out.push_back(Check);
  if (at_station(state.position)) out.push_back(Recharge);
}

Battery::State Battery::initial_state() const { return State{0, config_.initial_level.value_or(config_.max_level)}; }

Battery::State Battery::sample_initial_state(Rng& rng) const { return resample_hidden(State{0, 0}, rng); }

Battery::State Battery::resample_hidden(const State& state, Rng& rng) const {
  return State{state.position, random_int(rng, 1, config_.max_level)};
}

Battery::State Battery::mutate_particle(const State& state, Rng& rng) const {
  if (!bernoulli(rng, config_.reinvigoration_prob)) return state;
  State s = state;
  s.level = std::clamp(s.level + (bernoulli(rng, 0.5) ? 1 : -1), 1, config_.max_level);
  return s;
}

FeatureSet Battery::belief_features(std::span<const State> particles, const State& observable) const {
  const auto& v = vocab::symbols();
  FeatureSet features = observable_features(observable);
  if (particles.empty()) return features;
  std::vector<std::size_t> at_least(static_cast<std::size_t>(config_.max_level) + 2, 0);
  for (const auto& p : particles) ++at_least[static_cast<std::size_t>(std::clamp(p.level, 0, config_.max_level))];
  // suffix sums: at_least[L] = #particles with level >= L
  for (int l = config_.max_level - 1; l >= 0; --l) at_least[l] += at_least[l + 1];
  std::vector<GroundAtom> atoms;
  for (int l = 0; l <= config_.max_level; ++l) {
    atoms.emplace_back(v.guess, logic::Args{l, discretize_fraction(at_least[l], particles.size())});
  }
  features.insert_all(FeatureSet(std::move(atoms)));
  return features;
}

FeatureSet Battery::observable_features(const State& state) const {
  const auto& v = vocab::symbols();
  std::vector<GroundAtom> atoms;
  atoms.emplace_back(v.dist_next, logic::Args{distance_to_next(state.position)});
  if (at_station(state.position)) atoms.emplace_back(v.at_station);
  return FeatureSet(std::move(atoms));
}

bool Battery::is_belief_atom(const GroundAtom& atom) const { return atom.predicate == vocab::symbols().guess; }

GroundAtom Battery::action_atom(const State&, Action action) const {
  const auto& v = vocab::symbols();
  switch (action) {
    case Advance: return GroundAtom(v.advance);
    case Check: return GroundAtom(v.check);
    case Recharge: return GroundAtom(v.recharge);
    default: throw std::invalid_argument("battery: malformed action id " + std::to_string(action));
  }
}

Action Battery::action_from_atom(const GroundAtom& atom) const {
  const auto& v = vocab::symbols();
  if (atom.arity() == 0) {
    if (atom.predicate == v.advance) return Advance;
    if (atom.predicate == v.check) return Check;
    if (atom.predicate == v.recharge) return Recharge;
  }
  throw std::invalid_argument("battery: '" + logic::to_string(atom) + "' is not an action atom");
}

std::span<const Symbol> Battery::action_vocabulary() const {
  const auto& v = vocab::symbols();
  static const std::array<Symbol, 3> kVocabulary{v.advance, v.check, v.recharge};
  return kVocabulary;
}

logic::AtomSet Battery::action_groundings(Symbol predicate) const {
  if (std::ranges::find(action_vocabulary(), predicate) == action_vocabulary().end()) {
    throw std::invalid_argument("battery: unknown action predicate " + std::string(predicate.name()));
  }
  return logic::AtomSet{GroundAtom(predicate)};
}

std::string Battery::action_name(Action action) const { return logic::to_string(action_atom(State{}, action)); }

}  // namespace aspomcp::domains
