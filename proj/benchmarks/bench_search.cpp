#include <benchmark/benchmark.h>

#include "aspomcp/domains/battery.hpp"
#include "aspomcp/domains/rocksample.hpp"
#include "aspomcp/logic/parser.hpp"
#include "aspomcp/planner/pomcp.hpp"

using namespace aspomcp;

namespace {

domains::Rocksample rocksample() {
  domains::RocksampleConfig c;
  c.grid_size = 12;
  c.rocks = {{2, 3}, {7, 1}, {5, 8}, {10, 10}};
  c.start = {0, 5};
  return domains::Rocksample(c);
}

template <typename Sim>
void run_search(benchmark::State& state, const Sim& sim, const char* rules_file) {
  auto rules = logic::load_program(std::string(ASPOMCP_RULES_DIR) + "/" + rules_file);
  planner::PlannerConfig cfg;
  cfg.num_simulations = static_cast<int>(state.range(0));
  cfg.rules_enabled = state.range(1) != 0;
  Rng br(1);
  auto belief = ParticleBelief<typename Sim::State>::from_prior(sim, 4096, br);
  auto truth = sim.initial_state();
  for (auto _ : state) {
    Rng sr(2), rr(3);
    planner::Pomcp<Sim> pomcp(sim, cfg, &rules, sr, rr);
    benchmark::DoNotOptimize(pomcp.search(belief, truth));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SearchRocksample(benchmark::State& state) { run_search(state, rocksample(), "rocksample.lp"); }
BENCHMARK(BM_SearchRocksample)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SearchBattery(benchmark::State& state) {
  domains::BatteryConfig c;
  c.path_length = 35;
  c.stations = {3, 7, 10, 14, 17, 21, 24, 28, 31};
  c.initial_level = 6;
  run_search(state, domains::Battery(c), "battery.lp");
}
BENCHMARK(BM_SearchBattery)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_BeliefUpdate(benchmark::State& state) {
  auto rs = rocksample();
  Rng rng(4);
  auto belief = ParticleBelief<domains::RocksampleState>::from_prior(rs, static_cast<std::size_t>(state.range(0)), rng);
  auto truth = rs.initial_state();
  for (auto _ : state) {
    auto obs = rs.step(truth, rs.check_action(0), rng).observation;
    benchmark::DoNotOptimize(belief_update(belief, rs.check_action(0), obs, rs, rng));
  }
}
BENCHMARK(BM_BeliefUpdate)->Arg(1024)->Arg(4096);

}  // namespace
