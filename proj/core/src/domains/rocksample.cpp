#include "aspomcp/domains/rocksample.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "aspomcp/domains/vocabulary.hpp"

namespace aspomcp::domains {

using logic::GroundAtom;
using logic::Symbol;

void RocksampleConfig::validate() const {
  if (grid_size <= 0) throw ConfigError("rocksample: grid_size must be positive");
  if (rocks.empty() || rocks.size() > 32) throw ConfigError("rocksample: need between 1 and 32 rocks");
  auto inside = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < grid_size && c.y < grid_size; };
  for (std::size_t i = 0; i < rocks.size(); ++i) {
    if (!inside(rocks[i])) throw ConfigError("rocksample: rock " + std::to_string(i + 1) + " outside the grid");
    for (std::size_t j = 0; j < i; ++j) {
      if (rocks[i] == rocks[j]) throw ConfigError("rocksample: rocks must occupy distinct cells");
    }
  }
  if (!inside(start)) throw ConfigError("rocksample: start outside the grid");
  if (!(half_efficiency_distance > 0)) throw ConfigError("rocksample: half_efficiency_distance must be positive");
  if (!(gamma >= 0 && gamma <= 1)) throw ConfigError("rocksample: gamma must lie in [0,1]");
  if (rock_values && rocks.size() < 32 && (*rock_values >> rocks.size()) != 0) {
    throw ConfigError("rocksample: rock_values has more entries than rocks");
  }
}

RocksampleConfig RocksampleConfig::from_config(const KeyValueConfig& cfg, Rng& instance_rng) {
  RocksampleConfig c;
  c.grid_size = cfg.get_int("grid_size", c.grid_size);
  if (c.grid_size <= 0) throw ConfigError("rocksample: grid_size must be positive");
  if (cfg.contains("rocks")) {
    auto coords = cfg.get_ints("rocks");
    if (coords.empty() || coords.size() % 2 != 0) throw ConfigError("rocksample: rocks must be x:y pairs");
    for (std::size_t i = 0; i < coords.size(); i += 2) c.rocks.push_back({coords[i], coords[i + 1]});
  } else {
    int m = cfg.get_int("num_rocks", 4);
    if (m <= 0 || m > 32 || m > c.grid_size * c.grid_size) throw ConfigError("rocksample: invalid num_rocks");
    while (static_cast<int>(c.rocks.size()) < m) {
      Cell cell{random_int(instance_rng, 0, c.grid_size - 1), random_int(instance_rng, 0, c.grid_size - 1)};
      if (std::ranges::find(c.rocks, cell) == c.rocks.end()) c.rocks.push_back(cell);
    }
  }
  if (cfg.contains("start")) {
    auto xy = cfg.get_ints("start");
    if (xy.size() != 2) throw ConfigError("rocksample: start must be x:y");
    c.start = {xy[0], xy[1]};
  } else {
    c.start = {random_int(instance_rng, 0, c.grid_size - 1), random_int(instance_rng, 0, c.grid_size - 1)};
  }
  if (cfg.contains("rock_values")) {
    auto bits = cfg.get_ints("rock_values");
    if (bits.size() != c.rocks.size()) throw ConfigError("rocksample: rock_values needs one entry per rock");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i]) v |= 1u << i;
    }
    c.rock_values = v;
  } else {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < c.rocks.size(); ++i) {
      if (bernoulli(instance_rng, 0.5)) v |= 1u << i;
    }
    c.rock_values = v;
  }
  c.sample_good = cfg.get_double("sample_good", c.sample_good);
  c.sample_bad = cfg.get_double("sample_bad", c.sample_bad);
  c.exit_reward = cfg.get_double("exit_reward", c.exit_reward);
  c.half_efficiency_distance = cfg.get_double("half_efficiency_distance", c.half_efficiency_distance);
  c.gamma = cfg.get_double("gamma", c.gamma);
  c.reinvigoration_prob = cfg.get_double("reinvigoration_prob", c.reinvigoration_prob);
  c.validate();
  return c;
}

void RocksampleConfig::write(KeyValueConfig& cfg) const {
  cfg.set("grid_size", grid_size);
  std::string rock_text;
  for (const auto& r : rocks) rock_text += (rock_text.empty() ? "" : " ") + std::to_string(r.x) + ":" + std::to_string(r.y);
  cfg.set("rocks", rock_text);
  cfg.set("num_rocks", static_cast<int>(rocks.size()));
  cfg.set("start", std::to_string(start.x) + ":" + std::to_string(start.y));
  if (rock_values) {
    std::string bits;
    for (std::size_t i = 0; i < rocks.size(); ++i) bits += (i ? " " : "") + std::to_string((*rock_values >> i) & 1u);
    cfg.set("rock_values", bits);
  }
  cfg.set("sample_good", sample_good);
  cfg.set("sample_bad", sample_bad);
  cfg.set("exit_reward", exit_reward);
  cfg.set("half_efficiency_distance", half_efficiency_distance);
  cfg.set("gamma", gamma);
  cfg.set("reinvigoration_prob", reinvigoration_prob);
}

Rocksample::Rocksample(RocksampleConfig config) : config_(std::move(config)) { config_.validate(); }

double Rocksample::reward_span() const {
  double hi = std::max({config_.sample_good, config_.exit_reward, config_.sample_bad, 0.0});
  double lo = std::min({config_.sample_good, config_.exit_reward, config_.sample_bad, 0.0});
  return hi - lo;
}

double Rocksample::check_accuracy(Cell agent, std::size_t rock) const {
  double dx = config_.rocks[rock].x - agent.x;
  double dy = config_.rocks[rock].y - agent.y;
  double efficiency = std::exp2(-std::sqrt(dx * dx + dy * dy) / config_.half_efficiency_distance);
  return 0.5 * (1.0 + efficiency);
}

StepResult<Rocksample::State> Rocksample::step(const State& state, Action action, Rng& rng) const {
  StepResult<State> r{state};
  const int n = config_.grid_size;
  const auto m = static_cast<Action>(num_rocks());
  switch (action) {
    case North:
      if (state.agent.y + 1 < n) ++r.next.agent.y;
      return r;
    case South:
      if (state.agent.y > 0) --r.next.agent.y;
      return r;
    case West:
      if (state.agent.x > 0) --r.next.agent.x;
      return r;
    case East:
      if (state.agent.x + 1 >= n) {
        r.reward = config_.exit_reward;
        r.terminal = true;
      } else {
        ++r.next.agent.x;
      }
      return r;
    default:
      break;
  }
  if (action >= FirstSample && action < FirstSample + m) {
    auto rock = static_cast<std::size_t>(action - FirstSample);
    std::uint32_t bit = 1u << rock;
    if (config_.rocks[rock] == state.agent && !state.is_sampled(rock)) {
      r.reward = state.is_valuable(rock) ? config_.sample_good : config_.sample_bad;
      r.next.sampled |= bit;
      r.next.valuable &= ~bit;
    } else {
      r.reward = config_.sample_bad;
    }
    return r;
  }
  if (action >= FirstSample + m && action < FirstSample + 2 * m) {
    auto rock = static_cast<std::size_t>(action - FirstSample - m);
    bool truth = state.is_valuable(rock);
    bool correct = bernoulli(rng, check_accuracy(state.agent, rock));
    r.observation = (truth == correct) ? ObsGood : ObsBad;
    return r;
  }
  throw std::invalid_argument("rocksample: malformed action id " + std::to_string(action));
}

void Rocksample::legal_actions(const State& state, std::vector<Action>& out) const {
  out.clear();
  if (state.agent.y + 1 < config_.grid_size) out.push_back(North);
  if (state.agent.y > 0) out.push_back(South);
  out.push_back(East);
  if (state.agent.x > 0) out.push_back(West);
  // step() accepts any sample, but only the one for the rock under the
  // agent is offered to the planner; checks are always offered.
  for (std::size_t r = 0; r < num_rocks(); ++r) {
    if (config_.rocks[r] == state.agent) out.push_back(sample_action(r));
  }
  for (std::size_t r = 0; r < num_rocks(); ++r) out.push_back(check_action(r));
}

Rocksample::State Rocksample::initial_state() const {
  return State{config_.start, config_.rock_values.value_or(0), 0};
}

Rocksample::State Rocksample::sample_initial_state(Rng& rng) const {
  State s{config_.start, 0, 0};
  return resample_hidden(s, rng);
}

Rocksample::State Rocksample::resample_hidden(const State& state, Rng& rng) const {
  State s = state;
  s.valuable = 0;
  for (std::size_t i = 0; i < num_rocks(); ++i) {
    if (!state.is_sampled(i) && bernoulli(rng, 0.5)) s.valuable |= 1u << i;
  }
  return s;
}

Rocksample::State Rocksample::mutate_particle(const State& state, Rng& rng) const {
  if (!bernoulli(rng, config_.reinvigoration_prob)) return state;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < num_rocks(); ++i) {
    if (!state.is_sampled(i)) open.push_back(i);
  }
  if (open.empty()) return state;
  State s = state;
  s.valuable ^= 1u << open[random_index(rng, open.size())];
  return s;
}

FeatureSet Rocksample::belief_features(std::span<const State> particles, const State& observable) const {
  const auto& v = vocab::symbols();
  FeatureSet features = observable_features(observable);
  if (particles.empty()) return features;
  std::vector<GroundAtom> atoms;
  for (std::size_t r = 0; r < num_rocks(); ++r) {
    std::size_t good = 0;
    for (const auto& p : particles) good += p.is_valuable(r) ? 1 : 0;
    atoms.emplace_back(v.guess, logic::Args{static_cast<int>(r + 1), discretize_fraction(good, particles.size())});
  }
  features.insert_all(FeatureSet(std::move(atoms)));
  return features;
}

FeatureSet Rocksample::observable_features(const State& state) const {
  const auto& v = vocab::symbols();
  std::vector<GroundAtom> atoms;
  int best = INT_MAX;
  std::vector<int> dist(num_rocks());
  int sampled = 0;
  for (std::size_t r = 0; r < num_rocks(); ++r) {
    int id = static_cast<int>(r + 1);
    int dx = config_.rocks[r].x - state.agent.x;
    int dy = config_.rocks[r].y - state.agent.y;
    dist[r] = std::abs(dx) + std::abs(dy);
    best = std::min(best, dist[r]);
    atoms.emplace_back(v.dist, logic::Args{id, dist[r]});
    atoms.emplace_back(v.delta_x, logic::Args{id, dx});
    atoms.emplace_back(v.delta_y, logic::Args{id, dy});
    if (state.is_sampled(r)) {
      atoms.emplace_back(v.sampled, logic::Args{id});
      ++sampled;
    }
  }
  for (std::size_t r = 0; r < num_rocks(); ++r) {
    if (dist[r] == best) atoms.emplace_back(v.min_dist, logic::Args{static_cast<int>(r + 1)});
  }
  atoms.emplace_back(v.num_sampled, logic::Args{100 * sampled / static_cast<int>(num_rocks())});
  return FeatureSet(std::move(atoms));
}

bool Rocksample::is_belief_atom(const GroundAtom& atom) const { return atom.predicate == vocab::symbols().guess; }

GroundAtom Rocksample::action_atom(const State& state, Action action) const {
  const auto& v = vocab::symbols();
  const auto m = static_cast<Action>(num_rocks());
  switch (action) {
    case North: return GroundAtom(v.north);
    case South: return GroundAtom(v.south);
    case West: return GroundAtom(v.west);
    case East: return GroundAtom(state.agent.x + 1 >= config_.grid_size ? v.exit : v.east);
    default: break;
  }
  if (action >= FirstSample && action < FirstSample + m) {
    return GroundAtom(v.sample, logic::Args{action - FirstSample + 1});
  }
  if (action >= FirstSample + m && action < FirstSample + 2 * m) {
    return GroundAtom(v.check, logic::Args{action - FirstSample - m + 1});
  }
  throw std::invalid_argument("rocksample: malformed action id " + std::to_string(action));
}

Action Rocksample::action_from_atom(const GroundAtom& atom) const {
  const auto& v = vocab::symbols();
  if (atom.arity() == 0) {
    if (atom.predicate == v.north) return North;
    if (atom.predicate == v.south) return South;
    if (atom.predicate == v.west) return West;
    if (atom.predicate == v.east || atom.predicate == v.exit) return East;
  } else if (atom.arity() == 1 && atom.args[0] >= 1 && atom.args[0] <= static_cast<int>(num_rocks())) {
    auto rock = static_cast<std::size_t>(atom.args[0] - 1);
    if (atom.predicate == v.sample) return sample_action(rock);
    if (atom.predicate == v.check) return check_action(rock);
  }
  throw std::invalid_argument("rocksample: '" + logic::to_string(atom) + "' is not an action atom");
}

std::span<const Symbol> Rocksample::action_vocabulary() const {
  const auto& v = vocab::symbols();
  static const std::array<Symbol, 7> kVocabulary{v.north, v.south, v.east, v.west, v.exit, v.sample, v.check};
  return kVocabulary;
}

logic::AtomSet Rocksample::action_groundings(Symbol predicate) const {
  const auto& v = vocab::symbols();
  if (predicate == v.sample || predicate == v.check) {
    std::vector<GroundAtom> atoms;
    for (std::size_t r = 0; r < num_rocks(); ++r) atoms.emplace_back(predicate, logic::Args{static_cast<int>(r + 1)});
    return logic::AtomSet(std::move(atoms));
  }
  if (std::ranges::find(action_vocabulary(), predicate) != action_vocabulary().end()) {
    return logic::AtomSet{GroundAtom(predicate)};
  }
  throw std::invalid_argument("rocksample: unknown action predicate " + std::string(predicate.name()));
}

std::string Rocksample::action_name(Action action) const {
  if (action == East) return "east";
  return logic::to_string(action_atom(initial_state(), action));
}

}  // namespace aspomcp::domains
