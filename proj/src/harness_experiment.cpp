#include "osa/harness/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <thread>

#include "osa/errors.hpp"

namespace osa::harness {

namespace {

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12) << v;
  return out.str();
}

template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("I/O failure while writing " + path.string());
}

}  // namespace

RunResult run_and_measure(const RunConfig& cfg, std::uint64_t seed) {
  const Trace trace = run_episode(cfg, seed);
  const env::OracleStats oracle = env::oracle_stats(cfg.scenario_config(seed));
  RunResult r;
  r.scenario = trace.scenario();
  r.policy = trace.policy();
  r.seed = seed;
  r.M = cfg.M;
  r.metrics = compute_regret(trace, oracle);
  r.optimal_set = oracle.optimal_set;
  return r;
}

std::vector<RunResult> run_many(std::span<const RunConfig> configs, std::size_t jobs) {
  struct Task {
    const RunConfig* cfg;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& cfg : configs) {
    cfg.validate();
    for (std::uint64_t seed : cfg.seeds) tasks.push_back({&cfg, seed});
  }
  std::vector<RunResult> results(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    results[i] = run_and_measure(*tasks[i].cfg, tasks[i].seed);
  });
  return results;
}

std::vector<RunResult> run_seeds(const RunConfig& cfg, std::size_t jobs) {
  return run_many(std::span<const RunConfig>(&cfg, 1), jobs);
}

std::vector<std::size_t> checkpoints(std::size_t T) {
  std::vector<std::size_t> out;
  for (std::size_t c = 100; c < T; c *= 10) out.push_back(c);
  out.push_back(T);
  return out;
}

void emit_results(std::span<const RunResult> results, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const auto results_path = dir / "results.csv";
  auto out = open_output(results_path);
  out << "scenario,policy,seed,t,regret,normalized_regret,quantized_regret,suboptimal_total\n";
  for (const auto& r : results) {
    const std::size_t T = r.metrics.length();
    if (T == 0) continue;
    for (std::size_t t : checkpoints(T)) {
      const std::size_t i = t - 1;
      out << r.scenario << ',' << r.policy << ',' << r.seed << ',' << t << ','
          << format_number(r.metrics.regret[i]) << ',' << format_number(r.metrics.normalized_regret[i])
          << ',' << format_number(r.metrics.quantized_regret[i]) << ','
          << r.metrics.suboptimal_total[i] << '\n';
    }
  }
  check_written(out, results_path);

  const auto counts_path = dir / "channel_counts.csv";
  auto counts = open_output(counts_path);
  counts << "scenario,policy,seed,M,channel,optimal,selections,suboptimal_selections\n";
  for (const auto& r : results) {
    for (std::size_t k = 0; k < r.metrics.selection_counts.size(); ++k) {
      const bool optimal =
          std::find(r.optimal_set.begin(), r.optimal_set.end(), k) != r.optimal_set.end();
      counts << r.scenario << ',' << r.policy << ',' << r.seed << ',' << r.M << ',' << (k + 1) << ','
             << (optimal ? 1 : 0) << ',' << r.metrics.selection_counts[k] << ','
             << r.metrics.suboptimal_counts[k] << '\n';
    }
  }
  check_written(counts, counts_path);

  const auto summary_path = dir / "summary.csv";
  auto summary = open_output(summary_path);
  summary << "scenario,policy,seed,M,T,regret,normalized_regret,expected_regret,quantized_regret,"
             "suboptimal_total\n";
  for (const auto& r : results) {
    const std::size_t T = r.metrics.length();
    if (T == 0) continue;
    const std::size_t i = T - 1;
    summary << r.scenario << ',' << r.policy << ',' << r.seed << ',' << r.M << ',' << T << ','
            << format_number(r.metrics.regret[i]) << ',' << format_number(r.metrics.normalized_regret[i])
            << ',' << format_number(r.metrics.expected_regret[i]) << ','
            << format_number(r.metrics.quantized_regret[i]) << ',' << r.metrics.suboptimal_total[i]
            << '\n';
  }
  check_written(summary, summary_path);
}

nlohmann::ordered_json describe(const RunConfig& cfg) {
  const PolicyParams& p = cfg.policy.params;
  nlohmann::ordered_json j;
  j["scenario"] = cfg.scenario_file ? cfg.scenario_file->string() : cfg.scenario;
  j["policy"] = cfg.policy.name;
  j["label"] = cfg.policy.label();
  j["T"] = cfg.T;
  j["M"] = cfg.M;
  j["d"] = cfg.d;
  j["seeds"] = cfg.seeds;
  j["feedback"] = std::string(env::to_string(cfg.feedback));
  j["noise_stddev"] = cfg.noise_stddev;
  j["context_scale"] = 1.0 / std::sqrt(static_cast<double>(cfg.d));
  j["beta"] = p.beta;
  j["gamma"] = p.neural.gamma;
  j["depth"] = p.neural.depth;
  j["width"] = p.neural.width;
  j["dropout"] = p.neural.dropout;
  j["lr"] = p.neural.learning_rate;
  j["buffer"] = p.neural.buffer_capacity;
  j["train_window"] = p.neural.train_window;
  j["minibatch"] = p.neural.minibatch;
  j["mirror_input"] = p.neural.mirror_input;
  j["target_mode"] = std::string(ctx::to_string(p.contextual.target_mode));
  j["index_mode"] = std::string(ctx::to_string(p.contextual.index_mode));
  j["shared_model"] = p.contextual.shared_model;
  j["rca_exploration"] = p.contextual.rca.exploration;
  j["rca_anchor"] = p.contextual.rca.anchor == rca::AnchorChoice::fixed_good ? "good" : "first_observed";
  j["h_levels"] = {1.0, 0.1};
  return j;
}

void write_manifest(const nlohmann::ordered_json& manifest, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / "manifest.json";
  auto out = open_output(path);
  out << manifest.dump(2) << '\n';
  check_written(out, path);
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "beta") return SweepAxis::beta;
  if (text == "M") return SweepAxis::M;
  throw ConfigError("unknown sweep axis '" + std::string(text) + "' (expected beta|M)");
}

std::string_view to_string(SweepAxis axis) { return axis == SweepAxis::beta ? "beta" : "M"; }

SweepResult sweep(const RunConfig& base, SweepAxis axis, std::span<const double> values, std::size_t jobs) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<RunConfig> configs;
  for (double v : values) {
    RunConfig cfg = base;
    if (axis == SweepAxis::beta) {
      cfg.policy.params.beta = v;
    } else {
      if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("M sweep values must be positive integers");
      cfg.M = static_cast<std::size_t>(v);
    }
    configs.push_back(std::move(cfg));
  }
  SweepResult result;
  result.axis = axis;
  result.runs = run_many(configs, jobs);

  const std::size_t seeds = base.seeds.size();
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    SweepRow row;
    row.value = values[vi];
    double sum = 0.0;
    double sum_regret = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) {
      RunResult& run = result.runs[vi * seeds + s];
      run.policy += "@" + std::string(to_string(axis)) + "=" + format_number(values[vi]);
      const double n = run.metrics.normalized_regret.back();
      row.per_seed_normalized.push_back(n);
      sum += n;
      sum_regret += run.metrics.regret.back();
    }
    row.mean_final_normalized = sum / static_cast<double>(seeds);
    row.mean_final_regret = sum_regret / static_cast<double>(seeds);
    double var = 0.0;
    for (double n : row.per_seed_normalized) var += (n - row.mean_final_normalized) * (n - row.mean_final_normalized);
    row.stddev_final_normalized = seeds > 1 ? std::sqrt(var / static_cast<double>(seeds - 1)) : 0.0;
    result.rows.push_back(std::move(row));
  }
  return result;
}

void emit_sweep(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / ("sweep_" + std::string(to_string(result.axis)) + ".csv");
  auto out = open_output(path);
  out << "axis,value,seeds,mean_final_normalized_regret,stddev_final_normalized_regret,mean_final_regret\n";
  for (const auto& row : result.rows) {
    out << to_string(result.axis) << ',' << format_number(row.value) << ',' << row.per_seed_normalized.size()
        << ',' << format_number(row.mean_final_normalized) << ','
        << format_number(row.stddev_final_normalized) << ',' << format_number(row.mean_final_regret) << '\n';
  }
  check_written(out, path);
  emit_results(result.runs, dir);
}

std::vector<PolicySpec> default_bench_policies(const PolicyParams& params) {
  std::vector<PolicySpec> out;
  for (const char* name : {"random", "ucb", "klucb", "rca", "lucb", "nucb"}) {
    PolicySpec spec{name, params};
    if (is_contextual_policy(name)) {
      spec.params.contextual.index_mode = ctx::IndexMode::composite;
      out.push_back(spec);
      spec.params.contextual.index_mode = ctx::IndexMode::literal;
    }
    out.push_back(spec);
  }
  return out;
}

std::vector<RunResult> run_bench(const BenchConfig& bench, const std::filesystem::path& dir, std::size_t jobs) {
  if (bench.scenarios.empty()) throw ConfigError("bench needs at least one scenario");
  const auto policies =
      bench.policies.empty() ? default_bench_policies(bench.base.policy.params) : bench.policies;

  std::vector<RunConfig> configs;
  nlohmann::ordered_json manifest;
  manifest["command"] = "bench";
  manifest["runs"] = nlohmann::ordered_json::array();
  for (const auto& scenario : bench.scenarios) {
    for (const auto& spec : policies) {
      RunConfig cfg = bench.base;
      cfg.scenario = scenario;
      cfg.scenario_file.reset();
      cfg.policy = spec;
      manifest["runs"].push_back(describe(cfg));
      configs.push_back(std::move(cfg));
    }
  }
  auto results = run_many(configs, jobs);
  emit_results(results, dir);
  write_manifest(manifest, dir);
  return results;
}

}  // namespace osa::harness
