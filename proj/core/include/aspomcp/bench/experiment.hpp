#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aspomcp/bench/stats.hpp"
#include "aspomcp/config.hpp"

namespace aspomcp::bench {

// Key-value spec file:
//
//   domain = rocksample
//   param = grid_size            # particles | grid_size | path_length
//   values = 12 14 16
//   episodes = 25
//   rules = ../rules/rocksample.lp   # relative to the spec file
//   seed_base = 1000
//
// Every other key is passed through to the instance and planner configs.
// Sweeping `particles` sets both particles and simulations.
struct ExperimentSpec {
  std::string domain;
  std::string param;
  std::vector<int> values;
  int episodes = 25;
  std::optional<std::filesystem::path> rules;
  std::uint64_t seed_base = 1;
  KeyValueConfig base;

  void validate() const;
  static ExperimentSpec from_config(const KeyValueConfig& cfg, const std::filesystem::path& relative_to = {});
  static ExperimentSpec load(const std::filesystem::path& path);

  // Instance + planner config of one sweep point.
  KeyValueConfig point_config(int value) const;
  std::uint64_t seed(int episode) const { return seed_base + static_cast<std::uint64_t>(episode); }
};

struct ResultRow {
  std::string domain;
  std::string param;
  int value = 0;
  std::uint64_t seed = 0;
  bool rules = false;
  double discounted_return = 0.0;
  double wall_time_s = 0.0;
  int steps = 0;
  std::optional<std::string> error;  // set on error rows
};

struct RunOptions {
  int jobs = 1;
  // Called from the worker threads after each finished (value, seed) pair.
  std::function<void(std::size_t done, std::size_t total)> progress;
};

// Runs every (value, seed) pair with rules off and on, same instance and
// seed for both arms. Rows come back ordered by value, seed, arm (plain
// first) whatever the number of jobs. A failing episode turns both rows of
// its pair into error rows.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

inline constexpr const char* kCsvHeader = "domain,param,value,seed,rules,discounted_return,wall_time_s,steps";

// Error rows carry "error" in the return column.
void write_csv(std::ostream& out, std::span<const ResultRow> rows);
std::vector<ResultRow> read_csv(std::istream& in);

struct GroupStats {
  int value = 0;
  bool rules = false;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1)
};

struct PointImprovement {
  int value = 0;
  std::size_t pairs = 0;
  std::optional<double> ratio;  // (mean rules - mean plain) / |mean plain|
  std::optional<Interval> ci;   // paired bootstrap
};

struct Summary {
  std::string domain;
  std::string param;
  std::vector<GroupStats> groups;
  std::vector<PointImprovement> improvements;
};

struct AggregateOptions {
  double confidence = 0.90;
  int resamples = 4000;
  std::uint64_t seed = 7;
  double epsilon = 1e-9;
};

// Error rows are skipped; bootstrap pairs are matched by seed.
Summary aggregate(std::span<const ResultRow> rows, const AggregateOptions& options = {});

// value,rules,count,mean,sample_std and value,pairs,improvement,ci_low,ci_high
void write_summary(std::ostream& out, const Summary& summary);

}  // namespace aspomcp::bench
