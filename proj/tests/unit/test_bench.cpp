#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "aspomcp/bench/experiment.hpp"
#include "aspomcp/bench/stats.hpp"

using namespace aspomcp;
using namespace aspomcp::bench;

namespace {

ExperimentSpec tiny_spec(const std::string& extra = "") {
  auto cfg = KeyValueConfig::parse(
      "domain = battery\nparam = path_length\nvalues = 6\nepisodes = 2\nsimulations = 64\nseed_base = 10\n"
      "rules = battery.lp\n" +
      extra);
  return ExperimentSpec::from_config(cfg, ASPOMCP_RULES_DIR);
}

ResultRow row(int value, std::uint64_t seed, bool rules, double ret) {
  ResultRow r;
  r.domain = "battery";
  r.param = "path_length";
  r.value = value;
  r.seed = seed;
  r.rules = rules;
  r.discounted_return = ret;
  return r;
}

}  // namespace

TEST_CASE("summary statistics") {
  std::vector<double> xs{1, 2, 3};
  CHECK(mean(xs) == 2.0);
  CHECK(sample_std(xs) == 1.0);
  CHECK(sample_std(std::vector<double>{5}) == 0.0);
  CHECK(improvement_ratio(4, 2) == 1.0);
  CHECK(improvement_ratio(-1, -2) == 0.5);
  CHECK_FALSE(improvement_ratio(4, 0).has_value());
}

TEST_CASE("paired bootstrap") {
  std::vector<double> plain{1, 2, 3, 4, 5};
  std::vector<double> doubled{2, 4, 6, 8, 10};
  auto ci = paired_bootstrap_ci(plain, doubled, 0.9, 2000, 1);
  REQUIRE(ci.has_value());
  CHECK(ci->low == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ci->high == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> noisy_rules{1.5, 1.0, 4.5, 3.0, 6.5};
  auto a = paired_bootstrap_ci(plain, noisy_rules, 0.9, 2000, 3);
  auto b = paired_bootstrap_ci(plain, noisy_rules, 0.9, 2000, 3);
  REQUIRE(a.has_value());
  CHECK(a->low == b->low);
  CHECK(a->high == b->high);
  double point = *improvement_ratio(mean(noisy_rules), mean(plain));
  CHECK(a->low <= point);
  CHECK(point <= a->high);
  auto wide = paired_bootstrap_ci(plain, noisy_rules, 0.99, 2000, 3);
  CHECK(wide->low <= a->low);
  CHECK(wide->high >= a->high);
  CHECK_FALSE(paired_bootstrap_ci(std::vector<double>{0, 0}, std::vector<double>{1, 1}, 0.9, 100, 1).has_value());
}

TEST_CASE("aggregate") {
  std::vector<ResultRow> rows{row(5, 1, false, 1), row(5, 1, true, 4), row(5, 2, false, 2),
                              row(5, 2, true, 4),  row(5, 3, false, 3), row(5, 3, true, 4)};
  auto s = aggregate(rows);
  REQUIRE(s.groups.size() == 2);
  CHECK(s.groups[0].mean == 2.0);
  CHECK(s.groups[0].std == 1.0);
  CHECK(s.groups[0].count == 3);
  CHECK(s.groups[1].mean == 4.0);
  REQUIRE(s.improvements.size() == 1);
  CHECK(s.improvements[0].pairs == 3);
  CHECK(*s.improvements[0].ratio == 1.0);

  std::vector<ResultRow> zero{row(1, 1, false, 0), row(1, 1, true, 3)};
  auto z = aggregate(zero);
  CHECK_FALSE(z.improvements[0].ratio.has_value());
  CHECK(z.groups[0].std == 0.0);
  std::ostringstream out;
  write_summary(out, z);
  CHECK(out.str().find("undefined") != std::string::npos);
}

TEST_CASE("spec validation") {
  CHECK_NOTHROW(tiny_spec());
  CHECK(tiny_spec().rules == std::filesystem::path(ASPOMCP_RULES_DIR) / "battery.lp");
  auto parse = [](const char* text) { return ExperimentSpec::from_config(KeyValueConfig::parse(text)); };
  CHECK_THROWS_AS(parse("domain = battery\nparam = path_length\nvalues = 8 6\n"), ConfigError);
  CHECK_THROWS_AS(parse("domain = battery\nparam = path_length\nvalues = 6\nepisodes = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse("domain = battery\nparam = grid_size\nvalues = 6\n"), ConfigError);
  CHECK_THROWS_AS(parse("domain = tag\nparam = particles\nvalues = 6\n"), ConfigError);
  CHECK_THROWS_AS(parse("domain = battery\nparam = path_length\n"), ConfigError);
  auto p = parse("domain = rocksample\nparam = particles\nvalues = 256 512\n").point_config(512);
  CHECK(p.get_int("particles", 0) == 512);
  CHECK(p.get_int("simulations", 0) == 512);
}

TEST_CASE("run_experiment: paired rows, ordered and reproducible") {
  auto spec = tiny_spec();
  auto rows = run_experiment(spec);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].seed == rows[i + 1].seed);
    CHECK_FALSE(rows[i].rules);
    CHECK(rows[i + 1].rules);
    CHECK_FALSE(rows[i].error.has_value());
    CHECK(rows[i].steps > 0);
  }
  CHECK(rows[0].seed == 10);
  CHECK(rows[2].seed == 11);

  RunOptions two;
  two.jobs = 2;
  auto again = run_experiment(spec, two);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].seed == rows[i].seed);
    CHECK(again[i].rules == rows[i].rules);
    CHECK(again[i].discounted_return == rows[i].discounted_return);
    CHECK(again[i].steps == rows[i].steps);
  }
}

TEST_CASE("run_experiment: failures become paired error rows") {
  auto cfg = KeyValueConfig::parse(
      "domain = rocksample\nparam = grid_size\nvalues = 1 3\nepisodes = 2\nnum_rocks = 4\nsimulations = 32\n"
      "step_cap = 10\nrules = rocksample.lp\n");
  auto spec = ExperimentSpec::from_config(cfg, ASPOMCP_RULES_DIR);
  auto rows = run_experiment(spec);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 0; i < 4; ++i) CHECK(rows[i].error.has_value());
  for (std::size_t i = 4; i < 8; ++i) CHECK_FALSE(rows[i].error.has_value());

  std::ostringstream out;
  write_csv(out, rows);
  std::istringstream in(out.str());
  auto back = read_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i].error.has_value() == (i < 4));
  auto s = aggregate(back);
  REQUIRE(s.groups.size() == 2);
  CHECK(s.groups[0].value == 3);
  CHECK(s.groups[0].count == 2);
}

TEST_CASE("CSV round trip") {
  std::vector<ResultRow> rows{row(6, 1, false, 1.25), row(6, 1, true, -0.1)};
  rows[0].wall_time_s = 0.5;
  rows[1].steps = 7;
  std::ostringstream out;
  write_csv(out, rows);
  CHECK(out.str().rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  std::istringstream in(out.str());
  auto back = read_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].discounted_return == 1.25);
  CHECK(back[1].discounted_return == -0.1);
  CHECK(back[1].steps == 7);
  CHECK(back[0].wall_time_s == 0.5);
  std::istringstream bad("wrong,header\n");
  CHECK_THROWS(read_csv(bad));
}

TEST_CASE("shipped experiment specs load") {
  int loaded = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(ASPOMCP_SPECS_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    auto spec = ExperimentSpec::load(entry.path());
    REQUIRE(spec.rules.has_value());
    CHECK(std::filesystem::exists(*spec.rules));
    CHECK(spec.episodes >= 25);
    ++loaded;
  }
  CHECK(loaded == 8);
}
