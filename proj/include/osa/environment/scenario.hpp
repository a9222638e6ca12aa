#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "osa/environment/channel.hpp"
#include "osa/numkit/dense.hpp"

namespace osa::env {

enum class FeedbackMode { full_information, bandit };

std::string_view to_string(FeedbackMode mode);
FeedbackMode parse_feedback_mode(std::string_view text);

/// Complete setup of one simulated spectrum-access experiment.
struct ScenarioConfig {
  std::string name;
  std::vector<ChannelSpec> channels;
  std::size_t M = 5;
  std::size_t d = 8;
  double context_scale = 0.0;
  // Hidden linear noise parameter: entries ≥ 0, ‖θ*‖₂ ≤ 1.
  numkit::DenseVector theta_star;
  std::size_t horizon = 100000;
  std::uint64_t seed = 0;
  FeedbackMode feedback = FeedbackMode::full_information;
  // Optional zero-mean Gaussian term added to θ*ᵀx; 0 disables it.
  double noise_stddev = 0.0;

  std::size_t K() const { return channels.size(); }
  // Throws ConfigError on any violated invariant.
  void validate() const;
};

/// Channel transition probabilities of the four built-in scenarios S1..S4.
struct ScenarioTable {
  std::string_view name;
  std::array<double, 10> p01;
  std::array<double, 10> p10;
  // Published mean rewards, rounded as printed.
  std::array<double, 10> published_mean;
};

const std::array<ScenarioTable, 4>& builtin_scenarios();
const ScenarioTable& builtin_scenario(std::string_view name);

/// θ* with entries U(0,1) keyed by `seed`, rescaled to unit norm if longer.
numkit::DenseVector draw_theta_star(std::size_t d, std::uint64_t seed);

/// Built-in scenario (S1..S4) with h = (1, 0.1), context scale 1/√d and θ*
/// drawn from the seed.
ScenarioConfig load_scenario(std::string_view name, std::size_t M, std::size_t T, std::size_t d,
                             std::uint64_t seed);

/// Plain-text scenario file:
///
///   # comment
///   [scenario]
///   name = custom
///   h_good = 1
///   h_bad = 0.1
///   [channels]
///   1 0.01 0.08
///   2 0.01 0.07
///
/// Channel lines are "k p01 p10" with k running 1..K in order.
ScenarioConfig load_scenario_file(const std::filesystem::path& path, std::size_t M, std::size_t T,
                                  std::size_t d, std::uint64_t seed);
ScenarioConfig parse_scenario_text(std::string_view text, std::size_t M, std::size_t T,
                                   std::size_t d, std::uint64_t seed);

}  // namespace osa::env
