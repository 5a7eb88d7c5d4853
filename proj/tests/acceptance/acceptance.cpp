// Acceptance checks with pinned tolerances. One PASS/FAIL line per check;
// `--only NAME` runs a single check, `--list` prints the names.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aspomcp/bench/experiment.hpp"
#include "aspomcp/bench/stats.hpp"
#include "aspomcp/domains/domain.hpp"
#include "aspomcp/domains/vocabulary.hpp"
#include "aspomcp/logic/evaluator.hpp"
#include "aspomcp/logic/metrics.hpp"
#include "aspomcp/logic/parser.hpp"
#include "aspomcp/planner/episode.hpp"
#include "aspomcp/trace/cdpi.hpp"
#include "aspomcp/trace/trace_io.hpp"

using namespace aspomcp;
using logic::AtomSet;
using logic::CdpiKind;
using logic::GroundAtom;
using logic::parse_atom_set;
using logic::Symbol;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  const char* name;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

logic::Program shipped(const char* name) { return logic::load_program(std::string(ASPOMCP_RULES_DIR) + "/" + name); }

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

const char* kSampleRule = "sample(R) :- guess(R,V), V>60.\n";
const char* kSampleRanking = ":~ sample(R), guess(R,V). [-V@1, R, V]\n";

Outcome rule_engine_ground_truth() {
  auto answer = logic::evaluate(logic::parse_program(kSampleRule), parse_atom_set("guess(1,50) guess(2,70)"));
  auto expected = parse_atom_set("guess(1,50) guess(2,70) sample(2)");
  return {answer == expected, "answer set {" + logic::to_string(answer, ", ") + "}"};
}

Outcome preference_ground_truth() {
  auto p = logic::parse_program(std::string(kSampleRule) + kSampleRanking);
  auto answer = logic::evaluate(p, parse_atom_set("guess(1,70) guess(2,80)"));
  auto preferred = logic::prefer(p, answer, Symbol("sample"));
  return {preferred == parse_atom_set("sample(2)"), "preferred {" + logic::to_string(preferred, ", ") + "}"};
}

Outcome cdpi_construction() {
  domains::RocksampleConfig c;
  c.grid_size = 5;
  c.rocks = {{1, 1}, {3, 3}};
  domains::Rocksample rs(c);
  auto features = parse_atom_set("guess(1,70) guess(2,80)");
  trace::TraceStep step{0, features, GroundAtom("sample", {2}), 10.0};
  auto cdpis = trace::make_cdpis(step, rs.action_vocabulary(), [&](Symbol p) { return rs.action_groundings(p); }, "0");

  const logic::Cdpi* pos = nullptr;
  const logic::Cdpi* partner = nullptr;
  const logic::Cdpi* check = nullptr;
  int positives = 0, partners = 0;
  for (const auto& e : cdpis) {
    if (e.kind == CdpiKind::Positive) pos = &e, ++positives;
    if (e.kind == CdpiKind::OrderingPartner) partner = &e, ++partners;
    if (e.kind == CdpiKind::Counterexample && e.action == Symbol("check")) check = &e;
  }
  bool ok = positives == 1 && partners == 1 && pos && partner && check;
  ok = ok && pos->inclusions == parse_atom_set("sample(2)") && pos->exclusions == parse_atom_set("sample(1)") &&
       pos->context == features;
  ok = ok && partner->inclusions == parse_atom_set("sample(1)") && partner->exclusions.empty() &&
       partner->context == features && partner->ordering &&
       *partner->ordering == std::make_pair(pos->id, partner->id);
  ok = ok && check->inclusions.empty() && check->exclusions == parse_atom_set("check(1) check(2)") &&
       check->context == features;
  return {ok, fmt("%zu CDPIs; positive, ordering partner (positive preferred) and check counterexample %s",
                  cdpis.size(), ok ? "match" : "differ")};
}

Outcome rule_distance() {
  auto candidate = logic::parse_program("sample(R) :- dist(R,V), V <= 2.").rules().at(0);
  auto learned = shipped("rocksample.lp").rules_for(Symbol("sample")).at(0);
  int d = logic::rule_distance(candidate, learned);
  return {d == 5, fmt("distance %d", d)};
}

Outcome uct_formula() {
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    long nh = std::uniform_int_distribution<long>(1, 1'000'000)(rng);
    long nha = std::uniform_int_distribution<long>(1, nh)(rng);
    double v = std::uniform_real_distribution<double>(-50, 50)(rng);
    double c = std::uniform_real_distribution<double>(0, 40)(rng);
    double reference = v + c * std::sqrt(std::log(static_cast<double>(nh)) / static_cast<double>(nha));
    worst = std::max(worst, std::abs(planner::uct_value(v, nh, nha, c) - reference));
  }
  bool boundary = planner::uct_value(1, 1, 1, 2) == 1.0 && planner::uct_value(0, 8, 2, 0) == 0.0 &&
                  std::abs(planner::uct_value(1, 5, 1, 1) - (1 + std::sqrt(std::log(5.0)))) <= 1e-9;
  return {worst <= 1e-9 && boundary, fmt("max abs error %.3g over 20 inputs; boundary cases %s", worst,
                                         boundary ? "ok" : "wrong")};
}

Outcome prior_injection() {
  domains::RocksampleConfig c;
  c.grid_size = 5;
  c.rocks = {{2, 2}, {4, 0}};
  c.start = {2, 2};
  c.rock_values = 0b01;
  domains::Rocksample rs(c);
  auto rules = shipped("rocksample.lp");
  planner::PlannerConfig cfg;
  cfg.num_simulations = 1;
  cfg.rules_enabled = true;
  Rng sr(1), rr(2);
  planner::Pomcp<domains::Rocksample> pomcp(rs, cfg, &rules, sr, rr);
  // 95% of the particles say rock 1 is valuable: guess(1,90) fires the sample rule
  std::vector<domains::RocksampleState> ps(100, rs.initial_state());
  for (std::size_t i = 0; i < 5; ++i) ps[i].valuable = 0;
  pomcp.search(ParticleBelief<domains::RocksampleState>(ps, 100), rs.initial_state());
  const auto* edge = pomcp.root().find_edge(rs.sample_action(0));
  bool fired = pomcp.root_features().contains({"guess", {1, 90}});
  bool ok = fired && edge && edge->visits == 10 && edge->value == pomcp.exploration() && edge->bias_applied;
  return {ok, edge ? fmt("sample(1) edge N=%ld V=%g (c=%g)", edge->visits, edge->value, pomcp.exploration())
                   : std::string("sample(1) edge missing")};
}

std::vector<bench::ResultRow> paired_runs(const std::string& spec_text, const std::string& rules_file) {
  auto spec = bench::ExperimentSpec::from_config(KeyValueConfig::parse(spec_text + "rules = " + rules_file + "\n"));
  bench::RunOptions opts;
  opts.jobs = jobs();
  return bench::run_experiment(spec, opts);
}

struct Arms {
  std::vector<double> plain, rules;
  int errors = 0;
};

Arms split(const std::vector<bench::ResultRow>& rows) {
  Arms a;
  for (const auto& r : rows) {
    if (r.error) {
      ++a.errors;
      continue;
    }
    (r.rules ? a.rules : a.plain).push_back(r.discounted_return);
  }
  return a;
}

Outcome optimality_preservation() {
  auto rows = paired_runs(
      "domain = battery\nparam = path_length\nvalues = 5\nstations = 2\nepisodes = 200\nsimulations = 100000\n"
      "seed_base = 1\n",
      std::string(ASPOMCP_TEST_DATA) + "/always_check.lp");
  auto arms = split(rows);
  if (arms.errors) return {false, fmt("%d error rows", arms.errors)};
  double plain = bench::mean(arms.plain);
  double biased = bench::mean(arms.rules);
  double rel = std::abs(biased - plain) / std::abs(plain);
  return {rel <= 0.05, fmt("mean unbiased %.4f, biased %.4f, relative difference %.4f (limit 0.05)", plain, biased, rel)};
}

Outcome directional_gain(const std::string& spec_text, const std::string& rules_file) {
  auto rows = paired_runs(spec_text, rules_file);
  auto arms = split(rows);
  if (arms.errors) return {false, fmt("%d error rows", arms.errors)};
  double plain = bench::mean(arms.plain);
  double with_rules = bench::mean(arms.rules);
  auto ratio = bench::improvement_ratio(with_rules, plain);
  auto ci = bench::paired_bootstrap_ci(arms.plain, arms.rules, 0.90, 4000, 7);
  bool ok = with_rules >= plain && ci && ci->low >= -0.05;
  return {ok, fmt("mean plain %.4f, rules %.4f, improvement %.4f, 90%% CI [%.4f, %.4f] (lower limit -0.05)", plain,
                  with_rules, ratio.value_or(NAN), ci ? ci->low : NAN, ci ? ci->high : NAN)};
}

Outcome directional_gain_rocksample() {
  return directional_gain(
      "domain = rocksample\nparam = grid_size\nvalues = 18\nnum_rocks = 4\nepisodes = 25\nsimulations = 4096\n"
      "seed_base = 1\n",
      std::string(ASPOMCP_RULES_DIR) + "/rocksample.lp");
}

Outcome directional_gain_battery() {
  return directional_gain(
      "domain = battery\nparam = path_length\nvalues = 75\nepisodes = 25\nsimulations = 4096\nseed_base = 1\n",
      std::string(ASPOMCP_RULES_DIR) + "/battery.lp");
}

Outcome coverage_regression() {
  auto instance = KeyValueConfig::parse("domain = rocksample\ngrid_size = 12\nnum_rocks = 4\n");
  planner::PlannerConfig cfg;
  cfg.num_simulations = 4096;
  cfg.num_particles = 4096;
  std::vector<trace::Trace> traces(100);
  std::vector<std::jthread> pool;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < jobs(); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < traces.size();) traces[i] = planner::run_episode(instance, cfg, nullptr, 5000 + i);
    });
  }
  pool.clear();
  auto kept = trace::filter_traces(traces);
  auto rules = shipped("rocksample.lp");
  std::vector<logic::Cdpi> examples;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Rng unused(0);
    auto rs = std::get<domains::Rocksample>(domains::make_domain(kept[i].config, unused));
    std::vector<trace::Trace> one{kept[i]};
    auto cdpis = trace::make_cdpis(one, rs.action_vocabulary(), [&](Symbol p) { return rs.action_groundings(p); });
    for (auto& c : trace::coverage_examples(cdpis)) examples.push_back(std::move(c));
  }
  double cov = logic::coverage(rules, examples);
  return {cov >= 0.55, fmt("%zu of 100 traces kept, %zu examples, coverage %.4f (limit 0.55)", kept.size(),
                           examples.size(), cov)};
}

Outcome invariant_suites() {
  std::vector<std::string> failed;
  Rng rng(99);

  domains::BatteryConfig bc;
  bc.path_length = 20;
  bc.stations = {5, 10, 15};
  bc.initial_level = 10;
  domains::Battery battery(bc);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<domains::BatteryState> ps(static_cast<std::size_t>(random_int(rng, 1, 64)));
    for (auto& p : ps) p = {0, random_int(rng, 0, 10)};
    int prev = 101;
    auto features = battery.belief_features(ps, {0, 0});
    for (const auto& g : features.with_predicate(Symbol("guess"))) {
      if (g.args[1] > prev) {
        failed.push_back("battery guess monotonicity");
        trial = 1000;
        break;
      }
      prev = g.args[1];
    }
  }

  {
    auto belief = ParticleBelief<domains::BatteryState>::from_prior(battery, 500, rng);
    domains::BatteryState truth{0, 6};
    bool conserved = true;
    for (int t = 0; t < 200; ++t) {
      Action a = random_int(rng, 0, 1);
      auto r = battery.step(truth, a, rng);
      if (r.terminal) {
        truth = {0, 6};
        belief = ParticleBelief<domains::BatteryState>::from_prior(battery, 500, rng);
        continue;
      }
      try {
        belief = belief_update(belief, a, r.observation, battery, rng);
      } catch (const BeliefCollapse&) {
        belief = reseed_belief(truth, a, r.observation, 500, battery, rng, 50000);
      }
      conserved = conserved && belief.size() == belief.capacity();
      truth = r.next;
    }
    if (!conserved) failed.push_back("particle capacity conservation");
  }

  for (const char* f : {"rocksample.lp", "battery.lp"}) {
    auto p = shipped(f);
    if (!(logic::parse_program(logic::to_string(p)) == p)) failed.push_back(std::string("round trip of ") + f);
  }

  auto instance = KeyValueConfig::parse("domain = rocksample\ngrid_size = 7\nnum_rocks = 3\n");
  planner::PlannerConfig cfg;
  cfg.num_simulations = 512;
  auto rules = shipped("rocksample.lp");
  auto t1 = planner::run_episode(instance, cfg, nullptr, 77);
  auto t2 = planner::run_episode(instance, cfg, nullptr, 77);
  cfg.rules_enabled = true;
  auto r1 = planner::run_episode(instance, cfg, &rules, 77);
  auto r2 = planner::run_episode(instance, cfg, &rules, 77);
  if (!(t1 == t2) || !(r1 == r2)) failed.push_back("determinism under fixed seeds");

  std::stringstream io;
  trace::write_trace(io, r1);
  if (!(trace::read_trace(io) == r1)) failed.push_back("trace round trip");

  domains::RocksampleConfig rc;
  rc.grid_size = 41;
  rc.rocks = {{0, 0}, {20, 0}, {40, 0}};
  domains::Rocksample rs(rc);
  const double d0 = rc.half_efficiency_distance;
  std::string sensor;
  for (std::size_t rock = 0; rock < 3; ++rock) {
    double d = 20.0 * static_cast<double>(rock);
    double expected = (1 + std::pow(2.0, -d / d0)) / 2;
    domains::RocksampleState s{{0, 0}, 1u << rock, 0};
    int correct = 0;
    for (int i = 0; i < 100000; ++i) correct += rs.step(s, rs.check_action(rock), rng).observation == 1;
    double acc = correct / 100000.0;
    sensor += fmt(" d=%g:%.4f/%.4f", d, acc, expected);
    if (std::abs(acc - expected) > 0.01) failed.push_back(fmt("sensor accuracy at d=%g", d));
  }

  std::string detail = failed.empty() ? "all suites hold;" : "failed:";
  for (const auto& f : failed) detail += " " + f + ";";
  return {failed.empty(), detail + " sensor" + sensor};
}

Outcome rule_eval_throughput() {
  auto rules = shipped("rocksample.lp");
  domains::RocksampleConfig c;
  c.grid_size = 12;
  c.rocks = {{2, 3}, {7, 1}, {5, 8}, {10, 10}};
  domains::Rocksample rs(c);
  Rng rng(3);
  std::vector<AtomSet> feature_sets;
  for (int i = 0; i < 64; ++i) {
    domains::RocksampleState s{{random_int(rng, 0, 11), random_int(rng, 0, 11)}, 0,
                               static_cast<std::uint32_t>(random_int(rng, 0, 15))};
    std::vector<domains::RocksampleState> ps;
    for (int k = 0; k < 200; ++k) ps.push_back(rs.resample_hidden(s, rng));
    feature_sets.push_back(rs.belief_features(ps, s));
  }
  std::vector<double> us;
  std::size_t sink = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto& f = feature_sets[static_cast<std::size_t>(i) % feature_sets.size()];
    auto start = std::chrono::steady_clock::now();
    sink += logic::suggested_actions(rules, f, rs.action_vocabulary()).size();
    us.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count());
  }
  std::ranges::nth_element(us, us.begin() + static_cast<long>(us.size() / 2));
  double median = us[us.size() / 2];
  return {median <= 1000.0, fmt("median %.2f us per call (limit 1000 us; %zu suggestions)", median, sink)};
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all{
      {"rule_engine_ground_truth", rule_engine_ground_truth},
      {"preference_ground_truth", preference_ground_truth},
      {"cdpi_construction", cdpi_construction},
      {"rule_distance", rule_distance},
      {"uct_formula", uct_formula},
      {"prior_injection", prior_injection},
      {"optimality_preservation", optimality_preservation},
      {"directional_gain_rocksample", directional_gain_rocksample},
      {"directional_gain_battery", directional_gain_battery},
      {"coverage_regression", coverage_regression},
      {"invariant_suites", invariant_suites},
      {"rule_eval_throughput", rule_eval_throughput},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> only;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--list") {
      for (const auto& c : checks()) std::printf("%s\n", c.name);
      return 0;
    }
    if (arg == "--only" && i + 1 < argc) {
      only.emplace_back(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--list] [--only NAME]...\n", argv[0]);
      return 1;
    }
  }
  for (const auto& name : only) {
    if (std::ranges::none_of(checks(), [&](const Check& c) { return name == c.name; })) {
      std::fprintf(stderr, "unknown check '%s'\n", name.c_str());
      return 1;
    }
  }
  int failures = 0;
  for (const auto& c : checks()) {
    if (!only.empty() && std::ranges::find(only, c.name) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
