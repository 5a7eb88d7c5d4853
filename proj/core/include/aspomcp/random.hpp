#pragma once

#include <cstdint>
#include <random>

namespace aspomcp {

using Rng = std::mt19937_64;

// Independent random streams of one episode. Each purpose draws from its own
// generator so that, for example, rule evaluation changing the shape of the
// search tree never shifts the environment's random sequence.
enum class Stream : std::uint32_t {
  Instance = 1,     // instance layout and true initial state
  Environment = 2,  // real transitions
  Search = 3,       // particle sampling, tree simulation, tie breaks
  Rollout = 4,      // rollout policy
  Belief = 5,       // initial particles, rejection filtering, reinvigoration
};

inline Rng make_stream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

struct EpisodeRngs {
  explicit EpisodeRngs(std::uint64_t seed)
      : instance(make_stream(seed, Stream::Instance)),
        environment(make_stream(seed, Stream::Environment)),
        search(make_stream(seed, Stream::Search)),
        rollout(make_stream(seed, Stream::Rollout)),
        belief(make_stream(seed, Stream::Belief)) {}

  Rng instance;
  Rng environment;
  Rng search;
  Rng rollout;
  Rng belief;
};

inline std::size_t random_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline int random_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double random_unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline bool bernoulli(Rng& rng, double p) { return random_unit(rng) < p; }

}  // namespace aspomcp
