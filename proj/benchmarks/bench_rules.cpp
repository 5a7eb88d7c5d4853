#include <benchmark/benchmark.h>

#include <vector>

#include "aspomcp/domains/rocksample.hpp"
#include "aspomcp/logic/evaluator.hpp"
#include "aspomcp/logic/parser.hpp"

using namespace aspomcp;

namespace {

std::vector<logic::AtomSet> feature_sets(const domains::Rocksample& rs, int count) {
  Rng rng(3);
  const int n = rs.config().grid_size;
  std::vector<logic::AtomSet> out;
  for (int i = 0; i < count; ++i) {
    domains::RocksampleState s{{random_int(rng, 0, n - 1), random_int(rng, 0, n - 1)}, 0,
                               static_cast<std::uint32_t>(random_int(rng, 0, (1 << rs.num_rocks()) - 1))};
    std::vector<domains::RocksampleState> ps;
    for (int k = 0; k < 256; ++k) ps.push_back(rs.resample_hidden(s, rng));
    out.push_back(rs.belief_features(ps, s));
  }
  return out;
}

domains::Rocksample instance(int rocks) {
  domains::RocksampleConfig c;
  c.grid_size = 12;
  Rng rng(1);
  while (static_cast<int>(c.rocks.size()) < rocks) {
    domains::Cell cell{random_int(rng, 0, 11), random_int(rng, 0, 11)};
    if (std::ranges::find(c.rocks, cell) == c.rocks.end()) c.rocks.push_back(cell);
  }
  return domains::Rocksample(c);
}

void BM_SuggestedActions(benchmark::State& state) {
  auto rules = logic::load_program(std::string(ASPOMCP_RULES_DIR) + "/rocksample.lp");
  auto rs = instance(static_cast<int>(state.range(0)));
  auto sets = feature_sets(rs, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(logic::suggested_actions(rules, sets[i++ % sets.size()], rs.action_vocabulary()));
  }
}
BENCHMARK(BM_SuggestedActions)->Arg(4)->Arg(8)->Arg(16);

void BM_Evaluate(benchmark::State& state) {
  auto rules = logic::load_program(std::string(ASPOMCP_RULES_DIR) + "/rocksample.lp");
  auto rs = instance(4);
  auto sets = feature_sets(rs, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(logic::evaluate(rules, sets[i++ % sets.size()]));
}
BENCHMARK(BM_Evaluate);

void BM_ParseShippedRules(benchmark::State& state) {
  auto path = std::string(ASPOMCP_RULES_DIR) + "/rocksample.lp";
  for (auto _ : state) benchmark::DoNotOptimize(logic::load_program(path));
}
BENCHMARK(BM_ParseShippedRules);

}  // namespace

BENCHMARK_MAIN();
