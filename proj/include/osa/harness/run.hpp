#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osa/contextual/contextual_policy.hpp"
#include "osa/environment/environment.hpp"
#include "osa/policies/policy.hpp"
#include "osa/rca/cycle.hpp"

namespace osa::harness {

/// Every tunable of every policy; each policy reads the fields it needs.
struct PolicyParams {
  double beta = 1.0;
  ctx::NeuralConfig neural;
  ctx::ContextualConfig contextual;
};

struct PolicySpec {
  std::string name = "lucb";  // random | ucb | klucb | rca | lucb | nucb
  PolicyParams params;

  // Name used in result files: the policy name, suffixed with "-literal"
  // for contextual policies running the literal index mode.
  std::string label() const;
};

bool is_known_policy(std::string_view name);
bool is_contextual_policy(std::string_view name);

std::unique_ptr<policy::Policy> make_policy(const PolicySpec& spec, std::size_t K, std::size_t M,
                                            std::size_t d, std::uint64_t seed);

struct RunConfig {
  std::string scenario = "S1";
  std::optional<std::filesystem::path> scenario_file;
  PolicySpec policy;
  std::size_t T = 100000;
  std::size_t M = 5;
  std::size_t d = 8;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  env::FeedbackMode feedback = env::FeedbackMode::full_information;
  double noise_stddev = 0.0;
  bool record_indices = false;

  // Throws ConfigError.
  void validate() const;
  env::ScenarioConfig scenario_config(std::uint64_t seed) const;
};

/// Per-step record of one episode, stored flat with stride M.
class Trace {
 public:
  Trace(std::string scenario, std::string policy, std::uint64_t seed, std::size_t K, std::size_t M);

  struct StepView {
    std::span<const std::size_t> selected;
    std::span<const double> rewards;
    std::span<const double> noise;
    std::span<const double> net_values;
    std::span<const env::ChannelState> states;
    std::span<const double> indices;  // empty unless recorded
  };

  void append(const policy::ActionSet& action, const env::StepOutcome& outcome,
              std::span<const double> indices);

  std::size_t length() const { return length_; }
  std::size_t K() const { return K_; }
  std::size_t M() const { return M_; }
  StepView step(std::size_t i) const;  // i = t − 1
  policy::ActionSet action(std::size_t i) const;

  const std::string& scenario() const { return scenario_; }
  const std::string& policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::string scenario_;
  std::string policy_;
  std::uint64_t seed_;
  std::size_t K_;
  std::size_t M_;
  std::size_t length_ = 0;
  std::vector<std::size_t> selected_;
  std::vector<double> rewards_;
  std::vector<double> noise_;
  std::vector<double> net_values_;
  std::vector<env::ChannelState> states_;
  std::vector<double> indices_;
};

/// Runs one episode of T rounds. Contract violations are rethrown as
/// EpisodeFailure carrying the step index.
Trace run_episode(const RunConfig& cfg, std::uint64_t seed);

}  // namespace osa::harness
