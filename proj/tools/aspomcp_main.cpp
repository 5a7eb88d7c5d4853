#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aspomcp/bench/experiment.hpp"
#include "aspomcp/domains/domain.hpp"
#include "aspomcp/domains/vocabulary.hpp"
#include "aspomcp/logic/evaluator.hpp"
#include "aspomcp/logic/metrics.hpp"
#include "aspomcp/logic/parser.hpp"
#include "aspomcp/planner/episode.hpp"
#include "aspomcp/trace/cdpi.hpp"
#include "aspomcp/trace/ilasp.hpp"
#include "aspomcp/trace/trace_io.hpp"

namespace fs = std::filesystem;
using namespace aspomcp;

namespace {

// Flags shared by `run` and `gen-traces`; any flag given on the command
// line overrides the same key of --config.
struct EpisodeFlags {
  std::string config_file;
  std::string domain;
  int grid_size = 0;
  int rocks = 0;
  int path_length = 0;
  int sims = 0;
  int particles = 0;
  double exploration = 0.0;
  int max_depth = 0;
  int step_cap = 0;
  std::string rules_file;
  bool no_rules = false;
  std::uint64_t seed = 1;
  std::vector<CLI::Option*> set;

  void add_to(CLI::App& app) {
    app.add_option("--config", config_file, "Key-value file with instance and planner settings")
        ->check(CLI::ExistingFile);
    set.push_back(app.add_option("--domain", domain, "rocksample or battery"));
    set.push_back(app.add_option("--grid-size", grid_size, "Rocksample grid size N"));
    set.push_back(app.add_option("--rocks", rocks, "Rocksample number of rocks M"));
    set.push_back(app.add_option("--path-length", path_length, "Battery path length"));
    set.push_back(app.add_option("--sims", sims, "Simulations per step (also the particle count unless --particles)"));
    set.push_back(app.add_option("--particles", particles, "Belief particles"));
    set.push_back(app.add_option("--exploration", exploration, "UCT exploration constant (default: reward span)"));
    set.push_back(app.add_option("--max-depth", max_depth, "Simulation depth limit"));
    set.push_back(app.add_option("--step-cap", step_cap, "Maximum steps per episode"));
    set.push_back(app.add_option("--rules", rules_file, "Rule file biasing the search")->check(CLI::ExistingFile));
    app.add_flag("--no-rules", no_rules, "Ignore any rule file and plan without bias");
    app.add_option("--seed", seed, "Seed; the only source of randomness")->capture_default_str();
  }

  KeyValueConfig resolve() const {
    KeyValueConfig cfg;
    if (!config_file.empty()) cfg = KeyValueConfig::load(config_file);
    auto given = [&](std::size_t i) { return set[i]->count() > 0; };
    if (given(0)) cfg.set("domain", domain);
    if (given(1)) cfg.set("grid_size", grid_size);
    if (given(2)) cfg.set("num_rocks", rocks);
    if (given(3)) cfg.set("path_length", path_length);
    if (given(4)) {
      cfg.set("simulations", sims);
      if (!given(5)) cfg.set("particles", sims);
    }
    if (given(5)) cfg.set("particles", particles);
    if (given(6)) cfg.set("exploration", exploration);
    if (given(7)) cfg.set("max_depth", max_depth);
    if (given(8)) cfg.set("step_cap", step_cap);
    if (given(9)) cfg.set("rules_file", rules_file);
    if (no_rules) {
      cfg.set("rules", std::string("false"));
    } else if (cfg.contains("rules_file") && !cfg.contains("rules")) {
      cfg.set("rules", std::string("true"));
    }
    return cfg;
  }
};

std::optional<logic::Program> load_rules(const KeyValueConfig& cfg) {
  if (!cfg.get_bool("rules", false)) return std::nullopt;
  auto path = cfg.get_string("rules_file", "");
  if (path.empty()) throw ConfigError("rules enabled but no rule file given");
  return logic::load_program(path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_run(const EpisodeFlags& flags, const std::string& trace_out) {
  auto cfg = flags.resolve();
  auto rules = load_rules(cfg);
  auto planner_cfg = planner::PlannerConfig::from_config(cfg);
  auto trace = planner::run_episode(cfg, planner_cfg, rules ? &*rules : nullptr, flags.seed);
  std::cout << "domain " << trace.domain << "\n"
            << "seed " << trace.seed << "\n"
            << "rules " << (planner_cfg.rules_enabled ? "on" : "off") << "\n"
            << "steps " << trace.steps.size() << "\n"
            << "discounted_return " << format_double(trace.discounted_return) << "\n"
            << "actions";
  for (const auto& s : trace.steps) std::cout << ' ' << logic::to_string(s.action);
  std::cout << "\n";
  if (!trace_out.empty()) trace::save_trace(trace_out, trace);
  return 0;
}

int cmd_gen_traces(const EpisodeFlags& flags, int count, const std::string& out_dir) {
  auto cfg = flags.resolve();
  auto rules = load_rules(cfg);
  auto planner_cfg = planner::PlannerConfig::from_config(cfg);
  fs::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    auto seed = flags.seed + static_cast<std::uint64_t>(i);
    auto trace = planner::run_episode(cfg, planner_cfg, rules ? &*rules : nullptr, seed);
    std::ostringstream name;
    name << "trace_" << std::setw(5) << std::setfill('0') << i << ".trace";
    trace::save_trace(fs::path(out_dir) / name.str(), trace);
    std::cerr << "trace " << i + 1 << "/" << count << " return " << format_double(trace.discounted_return) << "\n";
  }
  return 0;
}

std::vector<fs::path> trace_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".trace") files.push_back(e.path());
      }
    } else {
      files.emplace_back(in);
    }
  }
  std::ranges::sort(files);
  return files;
}

int cmd_export_ilasp(const std::vector<std::string>& inputs, const std::string& out_dir, bool no_filter) {
  std::vector<trace::Trace> traces;
  for (const auto& f : trace_files(inputs)) traces.push_back(trace::load_trace(f));
  if (traces.empty()) throw std::runtime_error("no trace files found");
  auto kept = no_filter ? traces : trace::filter_traces(traces);

  std::vector<logic::Cdpi> cdpis;
  std::optional<domains::AnyDomain> first;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Rng unused(0);
    auto domain = domains::make_domain(kept[i].config, unused);
    auto vocab = std::visit([](const auto& d) { return d.action_vocabulary(); }, domain);
    auto groundings = [&](logic::Symbol p) {
      return std::visit([&](const auto& d) { return d.action_groundings(p); }, domain);
    };
    for (const auto& step : kept[i].steps) {
      auto more = trace::make_cdpis(step, vocab, groundings, std::to_string(i) + "_" + std::to_string(step.t));
      cdpis.insert(cdpis.end(), more.begin(), more.end());
    }
    if (!first) first = std::move(domain);
  }

  fs::create_directories(out_dir);
  auto background = trace::default_background(*first);
  auto vocab = std::visit([](const auto& d) { return d.action_vocabulary(); }, *first);
  for (logic::Symbol action : vocab) {
    std::vector<logic::Cdpi> task;
    std::ranges::copy_if(cdpis, std::back_inserter(task), [&](const logic::Cdpi& c) { return c.action == action; });
    auto path = fs::path(out_dir) / (std::string(action.name()) + ".las");
    std::ofstream out(path);
    out << trace::export_ilasp(task, background, trace::default_mode_bias(*first, action));
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  std::cout << "traces " << traces.size() << " kept " << kept.size() << " examples " << cdpis.size() << "\n";
  return 0;
}

int cmd_bench(const std::string& spec_path, const std::string& out_csv, const std::string& summary_path, int jobs) {
  auto spec = bench::ExperimentSpec::load(spec_path);
  bench::RunOptions options;
  options.jobs = jobs;
  std::mutex mu;
  options.progress = [&](std::size_t done, std::size_t total) {
    std::lock_guard lock(mu);
    std::cerr << "\rpairs " << done << "/" << total << std::flush;
  };
  auto rows = bench::run_experiment(spec, options);
  std::cerr << "\n";
  {
    std::ofstream out(out_csv);
    if (!out) throw std::runtime_error("cannot write " + out_csv);
    bench::write_csv(out, rows);
  }
  auto summary = bench::aggregate(rows);
  if (summary_path.empty()) {
    bench::write_summary(std::cout, summary);
  } else {
    std::ofstream out(summary_path);
    bench::write_summary(out, summary);
  }
  std::size_t errors = std::ranges::count_if(rows, [](const bench::ResultRow& r) { return r.error.has_value(); });
  if (errors > 0) std::cerr << errors << " error rows\n";
  return 0;
}

std::vector<logic::Symbol> vocabulary_for(const std::string& domain) {
  const auto& v = domains::vocab::symbols();
  if (domain == "rocksample") return {v.north, v.south, v.east, v.west, v.exit, v.sample, v.check};
  if (domain == "battery") return {v.advance, v.check, v.recharge};
  if (domain.empty()) return {v.north, v.south, v.east, v.west, v.exit, v.sample, v.check, v.advance, v.recharge};
  throw ConfigError("unknown domain '" + domain + "'");
}

int cmd_rule_check(const std::string& rules_path, const std::string& facts_path, const std::string& domain) {
  auto program = logic::load_program(rules_path);
  auto facts = logic::parse_atom_set(read_file(facts_path));
  logic::EvalOptions opts;
  opts.apply_preferences = true;
  auto answer = logic::evaluate(program, facts, opts);
  auto vocab = vocabulary_for(domain);
  auto suggested = logic::suggested_actions(program, facts, vocab);
  std::cout << "answer set: " << logic::to_string(answer) << "\n";
  std::cout << "suggested:";
  for (const auto& a : logic::sorted_strings(suggested)) std::cout << ' ' << a;
  std::cout << "\n";
  return 0;
}

int cmd_rule_diff(const std::string& a_path, const std::string& b_path) {
  auto a = logic::load_program(a_path);
  auto b = logic::load_program(b_path);
  for (const auto& ra : a.rules()) {
    for (const auto& rb : b.rules()) {
      if (ra.head.predicate != rb.head.predicate) continue;
      std::cout << logic::rule_distance(ra, rb) << '\t' << logic::to_string(ra) << '\t' << logic::to_string(rb)
                << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"POMCP planning biased by logic policy rules"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Plan one episode and print its summary");
  EpisodeFlags run_flags;
  run_flags.add_to(*run);
  std::string trace_out;
  run->add_option("--trace-out", trace_out, "Also write the trace to this file");

  auto* gen = app.add_subcommand("gen-traces", "Plan seeded episodes and write one trace file each");
  EpisodeFlags gen_flags;
  gen_flags.add_to(*gen);
  int count = 10;
  std::string gen_out;
  gen->add_option("--count", count, "Number of episodes (seeds seed, seed+1, ...)")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();

  auto* exp = app.add_subcommand("export-ilasp", "Filter traces and write one ILASP task per action");
  std::vector<std::string> exp_inputs;
  std::string exp_out;
  bool no_filter = false;
  exp->add_option("traces", exp_inputs, "Trace files or directories")->required();
  exp->add_option("--out", exp_out, "Output directory")->required();
  exp->add_flag("--no-filter", no_filter, "Keep every trace, not only those at or above the mean return");

  auto* bench_cmd = app.add_subcommand("bench", "Run a paired experiment spec to CSV");
  std::string spec_path;
  std::string out_csv;
  std::string summary_path;
  int jobs = 1;
  bench_cmd->add_option("--spec", spec_path, "Experiment spec file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", out_csv, "Result CSV")->required();
  bench_cmd->add_option("--summary", summary_path, "Write the aggregate here instead of stdout");
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("rule-check", "Evaluate a rule file on a facts file");
  std::string rules_path;
  std::string facts_path;
  std::string check_domain;
  check->add_option("rules", rules_path, "Rule file")->required()->check(CLI::ExistingFile);
  check->add_option("facts", facts_path, "Facts file (ground atoms)")->required()->check(CLI::ExistingFile);
  check->add_option("--domain", check_domain, "Restrict suggestions to this domain's actions");

  auto* diff = app.add_subcommand("rule-diff", "Print distances between same-head rules of two files");
  std::string diff_a;
  std::string diff_b;
  diff->add_option("a", diff_a, "First rule file")->required()->check(CLI::ExistingFile);
  diff->add_option("b", diff_b, "Second rule file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_flags, trace_out);
    if (*gen) return cmd_gen_traces(gen_flags, count, gen_out);
    if (*exp) return cmd_export_ilasp(exp_inputs, exp_out, no_filter);
    if (*bench_cmd) return cmd_bench(spec_path, out_csv, summary_path, jobs);
    if (*check) return cmd_rule_check(rules_path, facts_path, check_domain);
    if (*diff) return cmd_rule_diff(diff_a, diff_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
