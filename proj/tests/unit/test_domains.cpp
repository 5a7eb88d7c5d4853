#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

#include "aspomcp/domains/domain.hpp"
#include "aspomcp/domains/vocabulary.hpp"

using namespace aspomcp;
using namespace aspomcp::domains;
using logic::AtomSet;
using logic::GroundAtom;

namespace {

Rocksample two_rocks(int n = 12) {
  RocksampleConfig c;
  c.grid_size = n;
  c.rocks = {{8, 7}, {2, 3}};
  c.start = {8, 7};
  c.rock_values = 0b01;
  return Rocksample(c);
}

Battery small_battery() {
  BatteryConfig c;
  c.path_length = 10;
  c.stations = {3, 6};
  c.initial_level = 10;
  return Battery(c);
}

std::vector<RocksampleState> particles_with(RocksampleState base, std::size_t rock, int good, int total) {
  std::vector<RocksampleState> ps;
  for (int i = 0; i < total; ++i) {
    auto s = base;
    if (i < good) s.valuable |= 1u << rock;
    ps.push_back(s);
  }
  return ps;
}

}  // namespace

TEST_CASE("discretize_prob buckets") {
  CHECK(discretize_prob(0.0) == 0);
  CHECK(discretize_prob(0.73) == 70);
  CHECK(discretize_prob(1.0) == 100);
  CHECK(discretize_prob(0.7) == 70);
  CHECK(discretize_prob(0.999) == 90);
  CHECK_THROWS_AS(discretize_prob(-0.01), std::domain_error);
  CHECK_THROWS_AS(discretize_prob(1.01), std::domain_error);
  CHECK_THROWS_AS(discretize_prob(std::nan("")), std::domain_error);
  for (std::size_t total = 1; total <= 60; ++total) {
    for (std::size_t k = 0; k <= total; ++k) {
      int expected = k == total ? 100 : static_cast<int>(std::floor(10.0 * static_cast<double>(k) / total)) * 10;
      CHECK(discretize_fraction(k, total) == expected);
    }
  }
}

TEST_CASE("rocksample sample on a good rock") {
  auto rs = two_rocks();
  Rng rng(1);
  auto s = rs.initial_state();
  REQUIRE(s.is_valuable(0));
  auto r = rs.step(s, rs.sample_action(0), rng);
  CHECK(r.reward == rs.config().sample_good);
  CHECK(r.next.is_sampled(0));
  CHECK_FALSE(r.next.is_valuable(0));
  CHECK_FALSE(r.terminal);
  // sampling it again is a bad sample
  CHECK(rs.step(r.next, rs.sample_action(0), rng).reward == rs.config().sample_bad);
  // so is sampling a rock the agent is not standing on
  CHECK(rs.step(s, rs.sample_action(1), rng).reward == rs.config().sample_bad);
}

TEST_CASE("rocksample moves and exit") {
  RocksampleConfig c;
  c.grid_size = 4;
  c.rocks = {{1, 1}, {2, 3}};
  Rocksample rs(c);
  Rng rng(1);
  RocksampleState s{{3, 0}, 0, 0};
  auto r = rs.step(s, Rocksample::East, rng);
  CHECK(r.terminal);
  CHECK(r.reward == rs.config().exit_reward);
  CHECK(rs.step(s, Rocksample::North, rng).next.agent == Cell{3, 1});
  CHECK(rs.step(s, Rocksample::West, rng).next.agent == Cell{2, 0});
  CHECK_THROWS_AS(rs.step(s, 99, rng), std::invalid_argument);

  std::vector<Action> legal;
  rs.legal_actions(s, legal);
  CHECK(std::ranges::find(legal, Rocksample::South) == legal.end());
  CHECK(std::ranges::find(legal, Rocksample::East) != legal.end());
  CHECK(std::ranges::find(legal, rs.check_action(0)) != legal.end());
  CHECK(std::ranges::find(legal, rs.sample_action(0)) == legal.end());
}

TEST_CASE("rocksample check accuracy") {
  auto rs = two_rocks();
  const double d0 = rs.config().half_efficiency_distance;
  CHECK(rs.check_accuracy({8, 7}, 0) == 1.0);
  CHECK(rs.check_accuracy({2, 3}, 0) == doctest::Approx((1 + std::pow(2.0, -std::hypot(6.0, 4.0) / d0)) / 2));

  Rng rng(42);
  auto s = rs.initial_state();
  for (int i = 0; i < 1000; ++i) CHECK(rs.step(s, rs.check_action(0), rng).observation == Rocksample::ObsGood);

  // a rock exactly d0 away: correct with probability 0.75
  RocksampleConfig c;
  c.grid_size = 30;
  c.rocks = {{0, 0}, {20, 0}};
  c.rock_values = 0b10;
  Rocksample far(c);
  RocksampleState at_origin{{0, 0}, 0b10, 0};
  int correct = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    if (far.step(at_origin, far.check_action(1), rng).observation == Rocksample::ObsGood) ++correct;
  }
  CHECK(std::abs(correct / double(trials) - 0.75) <= 0.01);
}

TEST_CASE("rocksample features on a constructed belief") {
  auto rs = two_rocks();
  RocksampleState obs{{8, 7}, 0, 0};
  auto ps = particles_with(obs, 0, 90, 100);
  auto f = rs.belief_features(ps, obs);
  AtomSet expected{{"guess", {1, 90}}, {"dist", {1, 0}}, {"delta_x", {1, 0}}, {"delta_y", {1, 0}}, {"min_dist", {1}}};
  CHECK(f.includes(expected));
  CHECK(f.contains({"guess", {2, 0}}));
  CHECK(f.contains({"dist", {2, 10}}));
  CHECK(f.contains({"delta_x", {2, -6}}));
  CHECK(f.contains({"delta_y", {2, -4}}));
  CHECK_FALSE(f.contains({"min_dist", {2}}));
  CHECK(f.contains({"num_sampled", {0}}));
  // same inputs, same atoms
  CHECK(rs.belief_features(ps, obs) == f);
}

TEST_CASE("rocksample num_sampled and min_dist ties") {
  RocksampleConfig c;
  c.grid_size = 8;
  c.rocks = {{1, 0}, {0, 1}, {5, 5}, {7, 7}};
  c.start = {0, 0};
  Rocksample rs(c);
  RocksampleState s{{0, 0}, 0, 0b0100};
  auto f = rs.observable_features(s);
  CHECK(f.contains({"num_sampled", {25}}));
  CHECK(f.contains({"min_dist", {1}}));
  CHECK(f.contains({"min_dist", {2}}));
  CHECK(f.contains({"sampled", {3}}));
  CHECK(f.with_predicate(logic::Symbol("sampled")).size() == 1);
}

TEST_CASE("rocksample feature invariants on random states") {
  RocksampleConfig c;
  c.grid_size = 9;
  c.rocks = {{1, 2}, {4, 4}, {8, 0}, {3, 7}};
  Rocksample rs(c);
  Rng rng(17);
  const auto& v = vocab::symbols();
  for (int trial = 0; trial < 200; ++trial) {
    RocksampleState s{{random_int(rng, 0, 8), random_int(rng, 0, 8)}, 0,
                      static_cast<std::uint32_t>(random_int(rng, 0, 15))};
    std::vector<RocksampleState> ps;
    for (int i = 0; i < 20; ++i) ps.push_back(rs.resample_hidden(s, rng));
    auto f = rs.belief_features(ps, s);
    CHECK(f.with_predicate(v.guess).size() == 4);
    CHECK(f.with_predicate(v.min_dist).size() >= 1);
    for (const auto& d : f.with_predicate(v.dist)) {
      int r = d.args[0];
      GroundAtom dx, dy;
      for (const auto& a : f.with_predicate(v.delta_x)) {
        if (a.args[0] == r) dx = a;
      }
      for (const auto& a : f.with_predicate(v.delta_y)) {
        if (a.args[0] == r) dy = a;
      }
      CHECK(d.args[1] == std::abs(dx.args[1]) + std::abs(dy.args[1]));
    }
  }
}

TEST_CASE("rocksample action map") {
  auto rs = two_rocks();
  auto s = rs.initial_state();
  CHECK(rs.action_atom(s, rs.sample_action(1)) == GroundAtom("sample", {2}));
  CHECK(rs.action_from_atom({"sample", {2}}) == rs.sample_action(1));
  CHECK(rs.action_atom(s, rs.check_action(0)) == GroundAtom("check", {1}));
  CHECK(rs.action_from_atom({"check", {1}}) == rs.check_action(0));
  RocksampleState edge{{11, 3}, 0, 0};
  CHECK(rs.action_atom(edge, Rocksample::East) == GroundAtom("exit"));
  CHECK(rs.action_atom(s, Rocksample::East) == GroundAtom("east"));
  CHECK(rs.action_from_atom(GroundAtom("exit")) == Rocksample::East);
  for (Action a = 0; a < rs.num_actions(); ++a) CHECK(rs.action_from_atom(rs.action_atom(s, a)) == a);
  CHECK_THROWS_AS(rs.action_from_atom({"sample", {3}}), std::invalid_argument);
  CHECK_THROWS_AS(rs.action_from_atom(GroundAtom("advance")), std::invalid_argument);
  CHECK(rs.action_groundings(logic::Symbol("check")) == AtomSet{{"check", {1}}, {"check", {2}}});
}

TEST_CASE("battery step rules") {
  auto b = small_battery();
  Rng rng(3);
  BatteryConfig c = b.config();
  c.drain_prob = 1.0;
  Battery always_drains(c);
  auto r = always_drains.step({4, 1}, Battery::Advance, rng);
  CHECK(r.terminal);
  CHECK(r.reward == c.depletion_reward);

  auto charged = b.step({3, 2}, Battery::Recharge, rng);
  CHECK(charged.next.level == c.max_level);
  CHECK(charged.reward == c.recharge_cost);
  CHECK_THROWS_AS(b.step({4, 2}, Battery::Recharge, rng), std::invalid_argument);

  c.drain_prob = 0.0;
  Battery never_drains(c);
  auto goal = never_drains.step({9, 5}, Battery::Advance, rng);
  CHECK(goal.terminal);
  CHECK(goal.reward == c.goal_reward);
  // goal wins over a simultaneous drain to zero
  auto both = always_drains.step({9, 1}, Battery::Advance, rng);
  CHECK(both.reward == c.goal_reward);
  CHECK_THROWS_AS(b.step({0, 3}, 7, rng), std::invalid_argument);

  std::vector<Action> legal;
  b.legal_actions({3, 5}, legal);
  CHECK(legal == std::vector<Action>{Battery::Advance, Battery::Check, Battery::Recharge});
  b.legal_actions({4, 5}, legal);
  CHECK(legal == std::vector<Action>{Battery::Advance, Battery::Check});
}

TEST_CASE("battery check sensor") {
  auto b = small_battery();
  Rng rng(8);
  int correct = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    auto r = b.step({2, 5}, Battery::Check, rng);
    CHECK(r.reward == b.config().check_cost);
    int reading = r.observation - 1;
    CHECK(std::abs(reading - 5) <= 1);
    if (reading == 5) ++correct;
  }
  CHECK(std::abs(correct / double(trials) - b.config().sensor_accuracy) <= 0.01);
  for (int i = 0; i < 200; ++i) CHECK(b.step({2, 10}, Battery::Check, rng).observation - 1 >= 9);
}

TEST_CASE("battery features") {
  auto b = small_battery();
  std::vector<BatteryState> ps{{0, 3}, {0, 3}, {0, 7}, {0, 9}};
  auto f = b.belief_features(ps, {0, 0});
  CHECK(f.includes(AtomSet{{"guess", {3, 100}}, {"guess", {7, 50}}, {"guess", {9, 20}}, {"guess", {0, 100}}}));
  CHECK(f.contains({"guess", {10, 0}}));
  CHECK(f.contains({"dist_next", {3}}));
  CHECK_FALSE(f.contains(GroundAtom("at_station")));
  auto at = b.belief_features(ps, {3, 0});
  CHECK(at.contains(GroundAtom("at_station")));
  CHECK(at.contains({"dist_next", {3}}));
  CHECK(b.observable_features({7, 0}).contains({"dist_next", {3}}));
}

TEST_CASE("battery guess monotonicity") {
  auto b = small_battery();
  Rng rng(23);
  const auto guess = vocab::symbols().guess;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<BatteryState> ps(static_cast<std::size_t>(random_int(rng, 1, 50)));
    for (auto& p : ps) p = {0, random_int(rng, 0, 10)};
    auto features = b.belief_features(ps, {0, 0});
    auto atoms = features.with_predicate(guess);
    REQUIRE(atoms.size() == 11);
    CHECK(atoms[0] == GroundAtom("guess", {0, 100}));
    for (std::size_t l = 1; l < atoms.size(); ++l) CHECK(atoms[l].args[1] <= atoms[l - 1].args[1]);
  }
}

TEST_CASE("battery action map") {
  auto b = small_battery();
  for (Action a = 0; a < b.num_actions(); ++a) CHECK(b.action_from_atom(b.action_atom({}, a)) == a);
  CHECK_THROWS_AS(b.action_from_atom(GroundAtom("north")), std::invalid_argument);
}

TEST_CASE("instance configs rebuild the same domain") {
  Rng rng(5);
  KeyValueConfig rc = KeyValueConfig::parse("domain = rocksample\ngrid_size = 7\nnum_rocks = 3\n");
  auto d = make_domain(rc, rng);
  CHECK(domain_name(d) == "rocksample");
  Rng other(99);
  auto again = make_domain(instance_config(d), other);
  CHECK(instance_config(again) == instance_config(d));

  KeyValueConfig bc = KeyValueConfig::parse("domain = battery\npath_length = 20\n");
  auto bd = make_domain(bc, rng);
  const auto& battery = std::get<Battery>(bd);
  int prev = 0;
  for (int s : battery.config().stations) {
    CHECK(s - prev >= 1);
    CHECK(s - prev <= 4);
    prev = s;
  }
  CHECK(instance_config(make_domain(instance_config(bd), other)) == instance_config(bd));
  CHECK_THROWS_AS(make_domain(KeyValueConfig::parse("domain = tag\n"), rng), ConfigError);
  CHECK_THROWS_AS(make_domain(KeyValueConfig::parse("domain = battery\nstations = 3 2\npath_length = 9\n"), rng),
                  ConfigError);
}
