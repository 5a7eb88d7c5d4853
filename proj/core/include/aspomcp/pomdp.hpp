#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aspomcp/random.hpp"

namespace aspomcp {

using Action = int;
using Observation = int;

inline constexpr Observation kNoObservation = 0;

template <typename State>
struct StepResult {
  State next;
  Observation observation = kNoObservation;
  double reward = 0.0;
  bool terminal = false;
};

// Generative model. `step` must be a pure function of (state, action, rng
// stream) and `legal_actions` may only look at the observable part.
template <typename D>
concept Simulator = requires(const D& d, const typename D::State& s, Action a, Rng& rng, std::vector<Action>& out) {
  { d.step(s, a, rng) } -> std::same_as<StepResult<typename D::State>>;
  d.legal_actions(s, out);
  { d.sample_initial_state(rng) } -> std::same_as<typename D::State>;
  { d.mutate_particle(s, rng) } -> std::same_as<typename D::State>;
  { d.resample_hidden(s, rng) } -> std::same_as<typename D::State>;
  { d.same_observable(s, s) } -> std::convertible_to<bool>;
  { d.gamma() } -> std::convertible_to<double>;
};

class Discount {
 public:
  explicit Discount(double gamma);
  double value() const { return gamma_; }

 private:
  double gamma_;
};

// Σ_t gamma^t · rewards[t]; throws std::domain_error for gamma outside [0,1].
double discounted_return(std::span<const double> rewards, double gamma);

class BeliefCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename State>
class ParticleBelief {
 public:
  ParticleBelief() = default;
  ParticleBelief(std::vector<State> particles, std::size_t capacity)
      : particles_(std::move(particles)), capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("belief capacity must be positive");
  }

  template <Simulator Sim>
  static ParticleBelief from_prior(const Sim& sim, std::size_t capacity, Rng& rng) {
    std::vector<State> particles;
    particles.reserve(capacity);
    for (std::size_t i = 0; i < capacity; ++i) particles.push_back(sim.sample_initial_state(rng));
    return ParticleBelief(std::move(particles), capacity);
  }

  std::size_t size() const { return particles_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return particles_.empty(); }
  std::span<const State> particles() const { return particles_; }
  const State& sample(Rng& rng) const { return particles_[random_index(rng, particles_.size())]; }

 private:
  std::vector<State> particles_;
  std::size_t capacity_ = 0;
};

// Fraction of particles satisfying `pred`, exactly count / size.
template <typename State, typename Pred>
double marginal_fraction(const ParticleBelief<State>& belief, Pred&& pred) {
  if (belief.empty()) throw std::invalid_argument("marginal_fraction of an empty belief");
  std::size_t n = 0;
  for (const auto& s : belief.particles()) {
    if (pred(s)) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(belief.size());
}

// Tops `survivors` up to `capacity` with mutated copies of uniformly drawn
// survivors; the survivors themselves are kept unmodified.
template <Simulator Sim>
ParticleBelief<typename Sim::State> reinvigorate(std::vector<typename Sim::State> survivors, std::size_t capacity,
                                                 const Sim& sim, Rng& rng) {
  if (survivors.size() > capacity) {
    std::shuffle(survivors.begin(), survivors.end(), rng);
    survivors.resize(capacity);
  }
  std::size_t kept = survivors.size();
  survivors.reserve(capacity);
  while (survivors.size() < capacity) {
    const auto& parent = survivors[random_index(rng, kept)];
    survivors.push_back(sim.mutate_particle(parent, rng));
  }
  return ParticleBelief<typename Sim::State>(std::move(survivors), capacity);
}

// Rejection filter: step every particle with `action`, keep those that
// reproduce `observation` without terminating, then reinvigorate back to
// capacity. Throws BeliefCollapse when nothing survives.
template <Simulator Sim>
ParticleBelief<typename Sim::State> belief_update(const ParticleBelief<typename Sim::State>& belief, Action action,
                                                  Observation observation, const Sim& sim, Rng& rng) {
  if (belief.empty()) throw std::invalid_argument("belief_update on an empty belief");
  std::vector<typename Sim::State> survivors;
  survivors.reserve(belief.capacity());
  for (const auto& particle : belief.particles()) {
    auto result = sim.step(particle, action, rng);
    if (!result.terminal && result.observation == observation) survivors.push_back(std::move(result.next));
  }
  if (survivors.empty()) throw BeliefCollapse("no particle is consistent with the observation");
  return reinvigorate(std::move(survivors), belief.capacity(), sim, rng);
}

// Rebuilds a belief from the prior over hidden state at `before` (the last
// real state before `action`), filtered by the observation that followed.
// Gives up after `max_attempts` draws.
template <Simulator Sim>
ParticleBelief<typename Sim::State> reseed_belief(const typename Sim::State& before, Action action,
                                                  Observation observation, std::size_t capacity, const Sim& sim,
                                                  Rng& rng, std::size_t max_attempts) {
  std::vector<typename Sim::State> survivors;
  for (std::size_t i = 0; i < max_attempts && survivors.size() < capacity; ++i) {
    auto candidate = sim.resample_hidden(before, rng);
    auto result = sim.step(candidate, action, rng);
    if (!result.terminal && result.observation == observation) survivors.push_back(std::move(result.next));
  }
  if (survivors.empty()) throw BeliefCollapse("belief could not be re-seeded from the prior");
  return reinvigorate(std::move(survivors), capacity, sim, rng);
}

}  // namespace aspomcp
