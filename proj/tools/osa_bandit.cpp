// osa_bandit: run, bench and sweep the multi-play spectrum access policies.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "osa/errors.hpp"
#include "osa/harness/experiment.hpp"

namespace {

using namespace osa;

struct Options {
  harness::RunConfig run;
  std::string scenario_file;
  std::string feedback = "full";
  std::string target_mode = "observed";
  std::string index_mode = "composite";
  std::string seeds = "1,2,3,4,5";
  bool per_arm = false;
  std::size_t jobs = 1;
  std::string out = "results";
  std::string trace;
  std::string axis = "beta";
  std::string values;
  std::vector<std::string> scenarios;
  std::vector<std::string> policies;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& s : split(text)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw ConfigError("invalid seed '" + s + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  return seeds;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  for (const auto& s : split(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw ConfigError("invalid sweep value '" + s + "'");
    values.push_back(v);
  }
  return values;
}

void add_common(CLI::App* cmd, Options& o) {
  auto& p = o.run.policy.params;
  cmd->add_option("--scenario", o.run.scenario, "Built-in scenario S1..S4");
  cmd->add_option("--scenario-file", o.scenario_file, "Custom scenario file");
  cmd->add_option("--T", o.run.T, "Horizon");
  cmd->add_option("--M", o.run.M, "Channels selected per round");
  cmd->add_option("--d", o.run.d, "Context dimension");
  cmd->add_option("--seeds", o.seeds, "Comma-separated seed list");
  cmd->add_option("--beta", p.beta, "MP-LUCB exploration weight");
  cmd->add_option("--gamma", p.neural.gamma, "MP-NUCB exploration weight");
  cmd->add_option("--depth", p.neural.depth, "MP-NUCB network depth");
  cmd->add_option("--width", p.neural.width, "MP-NUCB network width (even)");
  cmd->add_option("--dropout", p.neural.dropout, "MP-NUCB dropout rate");
  cmd->add_option("--lr", p.neural.learning_rate, "MP-NUCB Adam learning rate");
  cmd->add_option("--buffer", p.neural.buffer_capacity, "MP-NUCB replay buffer size");
  cmd->add_flag("--mirror-input", p.neural.mirror_input, "Feed (x, x) to the network");
  cmd->add_option("--feedback", o.feedback, "full|bandit");
  cmd->add_option("--target-mode", o.target_mode, "literal|observed");
  cmd->add_option("--index-mode", o.index_mode, "literal|composite");
  cmd->add_flag("--per-arm", o.per_arm, "One perturbation model per channel");
  cmd->add_option("--rca-exploration", p.contextual.rca.exploration, "RCA exploration constant L");
  cmd->add_option("--noise-stddev", o.run.noise_stddev, "Extra Gaussian perturbation noise");
  cmd->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  cmd->add_option("--out", o.out, "Output directory");
}

void resolve(Options& o) {
  auto& p = o.run.policy.params;
  if (!o.scenario_file.empty()) o.run.scenario_file = o.scenario_file;
  o.run.seeds = parse_seeds(o.seeds);
  o.run.feedback = env::parse_feedback_mode(o.feedback);
  p.contextual.target_mode = ctx::parse_target_mode(o.target_mode);
  p.contextual.index_mode = ctx::parse_index_mode(o.index_mode);
  p.contextual.shared_model = !o.per_arm;
}

void write_trace(const harness::Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(12) << "t,slot,channel,state,reward,noise,net_value\n";
  for (std::size_t i = 0; i < trace.length(); ++i) {
    const auto s = trace.step(i);
    for (std::size_t j = 0; j < s.selected.size(); ++j) {
      out << (i + 1) << ',' << j << ',' << (s.selected[j] + 1) << ','
          << static_cast<int>(s.states[j]) << ',' << s.rewards[j] << ',' << s.noise[j] << ','
          << s.net_values[j] << '\n';
    }
  }
  if (!out) throw std::runtime_error("I/O failure while writing " + path);
}

int cmd_run(Options& o) {
  resolve(o);
  o.run.validate();
  auto results = harness::run_seeds(o.run, o.jobs);
  harness::emit_results(results, o.out);
  nlohmann::ordered_json manifest;
  manifest["command"] = "run";
  manifest["runs"] = nlohmann::ordered_json::array({harness::describe(o.run)});
  harness::write_manifest(manifest, o.out);
  if (!o.trace.empty()) write_trace(harness::run_episode(o.run, o.run.seeds.front()), o.trace);

  for (const auto& r : results) {
    std::cout << r.scenario << ' ' << r.policy << " seed=" << r.seed
              << " regret=" << r.metrics.regret.back()
              << " normalized=" << r.metrics.normalized_regret.back()
              << " suboptimal=" << r.metrics.suboptimal_total.back() << '\n';
  }
  return 0;
}

int cmd_bench(Options& o) {
  resolve(o);
  harness::BenchConfig bench;
  bench.base = o.run;
  if (!o.scenarios.empty()) bench.scenarios = o.scenarios;
  for (const auto& name : o.policies) {
    if (!harness::is_known_policy(name)) throw ConfigError("unknown policy '" + name + "'");
    bench.policies.push_back({name, o.run.policy.params});
  }
  const auto results = harness::run_bench(bench, o.out, o.jobs);
  std::cout << "wrote " << results.size() << " runs to " << o.out << '\n';
  return 0;
}

int cmd_sweep(Options& o) {
  resolve(o);
  o.run.validate();
  const auto axis = harness::parse_sweep_axis(o.axis);
  std::vector<double> values = parse_values(o.values);
  if (values.empty()) {
    values = axis == harness::SweepAxis::beta ? std::vector<double>{0.1, 0.5, 1, 10, 100, 1000}
                                              : std::vector<double>{2, 3, 4, 5, 6, 7, 8};
  }
  const auto result = harness::sweep(o.run, axis, values, o.jobs);
  harness::emit_sweep(result, o.out);
  nlohmann::ordered_json manifest;
  manifest["command"] = "sweep";
  manifest["axis"] = std::string(harness::to_string(axis));
  manifest["values"] = values;
  manifest["base"] = harness::describe(o.run);
  harness::write_manifest(manifest, o.out);
  for (const auto& row : result.rows) {
    std::cout << harness::to_string(axis) << '=' << row.value
              << " mean_normalized=" << row.mean_final_normalized
              << " stddev=" << row.stddev_final_normalized
              << " mean_regret=" << row.mean_final_regret << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-play opportunistic spectrum access bandit simulator"};
  app.require_subcommand(1);

  Options o;
  auto* run = app.add_subcommand("run", "One scenario and policy over the seed list");
  add_common(run, o);
  run->add_option("--policy", o.run.policy.name, "random|ucb|klucb|rca|lucb|nucb");
  run->add_option("--trace", o.trace, "Write the first seed's per-step trace to this CSV");

  auto* bench = app.add_subcommand("bench", "Scenario x policy x seed grid");
  add_common(bench, o);
  bench->add_option("--scenarios", o.scenarios, "Scenarios to include")->delimiter(',');
  bench->add_option("--policies", o.policies, "Policies to include")->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Sweep beta or M for one policy");
  add_common(sweep, o);
  sweep->add_option("--policy", o.run.policy.name, "random|ucb|klucb|rca|lucb|nucb");
  sweep->add_option("--axis", o.axis, "beta|M");
  sweep->add_option("--values", o.values, "Comma-separated axis values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(o);
    if (*bench) return cmd_bench(o);
    return cmd_sweep(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const EpisodeFailure& e) {
    std::cerr << "episode failed at step " << e.step() << ": " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
