#pragma once

#include <cstdint>

#include "osa/numkit/rng.hpp"

namespace osa::env {

enum class ChannelState : std::uint8_t { bad = 0, good = 1 };

/// Two-state (Gilbert-Elliot) channel: a Markov chain over {bad, good}.
struct ChannelSpec {
  double p01 = 0.0;  // bad -> good
  double p10 = 0.0;  // good -> bad
  double h_good = 1.0;
  double h_bad = 0.1;

  // Throws ConfigError unless the chain is irreducible, aperiodic and
  // h_good > h_bad.
  void validate() const;
  double level(ChannelState s) const { return s == ChannelState::good ? h_good : h_bad; }

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

struct StationaryDistribution {
  double bad;
  double good;
};

StationaryDistribution stationary_distribution(const ChannelSpec& spec);

// h_good·α_good + h_bad·α_bad − mean_noise
double mean_reward(const ChannelSpec& spec, double mean_noise);

// One transition driven by a uniform draw u ∈ [0, 1).
ChannelState step_chain(ChannelState state, const ChannelSpec& spec, double u);
ChannelState step_chain(ChannelState state, const ChannelSpec& spec, numkit::RngStream& rng);

/// Quantized reward: h_good when 𝕀(state = good) − noise > 0, else h_bad.
double emit_reward(ChannelState state, double noise, double h_good = 1.0, double h_bad = 0.1);

}  // namespace osa::env
