#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osa/harness/metrics.hpp"
#include "osa/harness/run.hpp"
#include "json.hpp"

namespace osa::harness {

struct RunResult {
  std::string scenario;
  std::string policy;
  std::uint64_t seed = 0;
  std::size_t M = 0;
  MetricsSeries metrics;
  std::vector<std::size_t> optimal_set;
};

/// One episode plus its metrics against the scenario's oracle.
RunResult run_and_measure(const RunConfig& cfg, std::uint64_t seed);

/// All seeds of `cfg`, results in seed order. Episodes are distributed over
/// `jobs` threads (0 = hardware concurrency).
std::vector<RunResult> run_seeds(const RunConfig& cfg, std::size_t jobs = 1);

/// Run several configurations; results are concatenated in input order.
std::vector<RunResult> run_many(std::span<const RunConfig> configs, std::size_t jobs = 1);

/// 10², 10³, … below T, then T itself.
std::vector<std::size_t> checkpoints(std::size_t T);

/// results.csv (one row per run × checkpoint) and channel_counts.csv.
void emit_results(std::span<const RunResult> results, const std::filesystem::path& dir);

/// Resolved settings of one configuration, for the run manifest.
nlohmann::ordered_json describe(const RunConfig& cfg);
void write_manifest(const nlohmann::ordered_json& manifest, const std::filesystem::path& dir);

enum class SweepAxis { beta, M };
SweepAxis parse_sweep_axis(std::string_view text);
std::string_view to_string(SweepAxis axis);

struct SweepRow {
  double value = 0.0;
  double mean_final_normalized = 0.0;
  double stddev_final_normalized = 0.0;
  double mean_final_regret = 0.0;
  std::vector<double> per_seed_normalized;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::beta;
  std::vector<SweepRow> rows;
  std::vector<RunResult> runs;
};

/// Runs every seed of `base` once per value of the axis and aggregates the
/// final normalized regret. Throws ConfigError for an empty value list.
SweepResult sweep(const RunConfig& base, SweepAxis axis, std::span<const double> values,
                  std::size_t jobs = 1);
void emit_sweep(const SweepResult& result, const std::filesystem::path& dir);

struct BenchConfig {
  std::vector<std::string> scenarios{"S1", "S2", "S3", "S4"};
  std::vector<PolicySpec> policies;  // empty: the default comparison set
  RunConfig base;
};

/// random, ucb, klucb, rca, and both index modes of lucb and nucb.
std::vector<PolicySpec> default_bench_policies(const PolicyParams& params);

/// Full scenario × policy × seed grid; writes results, counts and manifest.
std::vector<RunResult> run_bench(const BenchConfig& bench, const std::filesystem::path& dir,
                                 std::size_t jobs = 1);

}  // namespace osa::harness
