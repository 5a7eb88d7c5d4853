#include "aspomcp/bench/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "aspomcp/logic/parser.hpp"
#include "aspomcp/planner/episode.hpp"

namespace aspomcp::bench {

namespace {

const char* const kSpecKeys[] = {"domain", "param", "values", "episodes", "rules", "seed_base"};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (domain != "rocksample" && domain != "battery") throw ConfigError("spec: unknown domain '" + domain + "'");
  if (param != "particles" && param != "grid_size" && param != "path_length") {
    throw ConfigError("spec: param must be particles, grid_size or path_length");
  }
  if (param == "grid_size" && domain != "rocksample") throw ConfigError("spec: grid_size sweeps need rocksample");
  if (param == "path_length" && domain != "battery") throw ConfigError("spec: path_length sweeps need battery");
  if (values.empty()) throw ConfigError("spec: values must not be empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) throw ConfigError("spec: values must be strictly increasing");
  }
  if (episodes < 1) throw ConfigError("spec: episodes must be at least 1");
}

ExperimentSpec ExperimentSpec::from_config(const KeyValueConfig& cfg, const std::filesystem::path& relative_to) {
  ExperimentSpec spec;
  spec.domain = cfg.get_string("domain", "");
  spec.param = cfg.get_string("param", "");
  spec.values = cfg.get_ints("values");
  spec.episodes = cfg.get_int("episodes", spec.episodes);
  spec.seed_base = cfg.get_u64("seed_base", spec.seed_base);
  if (auto r = cfg.get("rules"); r && !r->empty()) {
    std::filesystem::path p(*r);
    spec.rules = p.is_relative() && !relative_to.empty() ? relative_to / p : p;
  }
  spec.base = cfg;
  for (const char* key : kSpecKeys) spec.base.erase(key);
  spec.base.set("domain", spec.domain);
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::load(const std::filesystem::path& path) {
  return from_config(KeyValueConfig::load(path), path.parent_path());
}

KeyValueConfig ExperimentSpec::point_config(int value) const {
  KeyValueConfig cfg = base;
  if (param == "particles") {
    cfg.set("particles", value);
    cfg.set("simulations", value);
  } else {
    cfg.set(param, value);
  }
  return cfg;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  spec.validate();
  std::optional<logic::Program> rules;
  if (spec.rules) rules = logic::load_program(*spec.rules);

  const std::size_t per_value = static_cast<std::size_t>(spec.episodes);
  const std::size_t total = spec.values.size() * per_value;
  std::vector<ResultRow> rows(2 * total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};

  auto run_pair = [&](std::size_t job) {
    int value = spec.values[job / per_value];
    std::uint64_t seed = spec.seed(static_cast<int>(job % per_value));
    KeyValueConfig cfg = spec.point_config(value);
    std::optional<std::string> error;
    for (int arm = 0; arm < 2; ++arm) {
      ResultRow& row = rows[2 * job + static_cast<std::size_t>(arm)];
      row.domain = spec.domain;
      row.param = spec.param;
      row.value = value;
      row.seed = seed;
      row.rules = arm == 1;
      if (error) continue;
      auto start = std::chrono::steady_clock::now();
      try {
        KeyValueConfig arm_cfg = cfg;
        arm_cfg.set("rules", std::string(arm == 1 ? "true" : "false"));
        auto planner_cfg = planner::PlannerConfig::from_config(arm_cfg);
        if (planner_cfg.rules_enabled && !rules) throw ConfigError("spec has no rules file");
        auto trace = planner::run_episode(arm_cfg, planner_cfg, rules ? &*rules : nullptr, seed);
        row.discounted_return = trace.discounted_return;
        row.steps = static_cast<int>(trace.steps.size());
      } catch (const std::exception& e) {
        error = e.what();
      }
      row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    if (error) {
      for (int arm = 0; arm < 2; ++arm) rows[2 * job + static_cast<std::size_t>(arm)].error = error;
    }
    auto finished = ++done;
    if (options.progress) options.progress(finished, total);
  };

  auto worker = [&] {
    for (std::size_t job; (job = next++) < total;) run_pair(job);
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(total)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.6f", r.wall_time_s);
    out << r.domain << ',' << r.param << ',' << r.value << ',' << r.seed << ',' << (r.rules ? 1 : 0) << ','
        << (r.error ? std::string("error") : format_double(r.discounted_return)) << ',' << wall << ',' << r.steps
        << '\n';
  }
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kCsvHeader) throw std::runtime_error("CSV: unexpected header '" + line + "'");
      continue;
    }
    auto f = split_csv(line);
    if (f.size() != 8) throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected 8 fields");
    try {
      ResultRow r;
      r.domain = f[0];
      r.param = f[1];
      r.value = std::stoi(f[2]);
      r.seed = std::stoull(f[3]);
      r.rules = f[4] == "1";
      if (f[5] == "error") {
        r.error = "error";
      } else {
        r.discounted_return = parse_double(f[5]);
      }
      r.wall_time_s = parse_double(f[6]);
      r.steps = std::stoi(f[7]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

Summary aggregate(std::span<const ResultRow> rows, const AggregateOptions& options) {
  Summary s;
  // value -> seed -> {plain, rules}
  std::map<int, std::map<std::uint64_t, std::pair<std::optional<double>, std::optional<double>>>> points;
  std::map<std::pair<int, bool>, std::vector<double>> groups;
  for (const auto& r : rows) {
    if (s.domain.empty()) {
      s.domain = r.domain;
      s.param = r.param;
    }
    if (r.error) continue;
    groups[{r.value, r.rules}].push_back(r.discounted_return);
    auto& pair = points[r.value][r.seed];
    (r.rules ? pair.second : pair.first) = r.discounted_return;
  }
  for (const auto& [key, xs] : groups) {
    s.groups.push_back(GroupStats{key.first, key.second, xs.size(), mean(xs), sample_std(xs)});
  }
  for (const auto& [value, seeds] : points) {
    std::vector<double> plain;
    std::vector<double> with_rules;
    for (const auto& [seed, pair] : seeds) {
      if (pair.first && pair.second) {
        plain.push_back(*pair.first);
        with_rules.push_back(*pair.second);
      }
    }
    PointImprovement p;
    p.value = value;
    p.pairs = plain.size();
    if (!plain.empty()) {
      p.ratio = improvement_ratio(mean(with_rules), mean(plain), options.epsilon);
      p.ci = paired_bootstrap_ci(plain, with_rules, options.confidence, options.resamples,
                                 options.seed + static_cast<std::uint64_t>(value), options.epsilon);
    }
    s.improvements.push_back(p);
  }
  return s;
}

void write_summary(std::ostream& out, const Summary& summary) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("undefined"); };
  out << "value,rules,count,mean,sample_std\n";
  for (const auto& g : summary.groups) {
    out << g.value << ',' << (g.rules ? 1 : 0) << ',' << g.count << ',' << format_double(g.mean) << ','
        << format_double(g.std) << '\n';
  }
  out << "\nvalue,pairs,improvement,ci_low,ci_high\n";
  for (const auto& p : summary.improvements) {
    out << p.value << ',' << p.pairs << ',' << opt(p.ratio) << ','
        << (p.ci ? format_double(p.ci->low) : "undefined") << ',' << (p.ci ? format_double(p.ci->high) : "undefined")
        << '\n';
  }
}

}  // namespace aspomcp::bench
