#include "osa/environment/channel.hpp"

#include <sstream>

#include "osa/errors.hpp"

namespace osa::env {

void ChannelSpec::validate() const {
  std::ostringstream why;
  if (!(p01 >= 0.0 && p01 <= 1.0 && p10 >= 0.0 && p10 <= 1.0)) {
    why << "transition probabilities must lie in [0,1] (p01=" << p01 << ", p10=" << p10 << ")";
  } else if (p01 + p10 <= 0.0) {
    why << "chain is reducible (p01 + p10 = 0)";
  } else if (p01 == 1.0 && p10 == 1.0) {
    why << "chain is periodic (p01 = p10 = 1)";
  } else if (!(h_good > h_bad)) {
    why << "h_good must exceed h_bad";
  } else {
    return;
  }
  throw ConfigError("ChannelSpec: " + why.str());
}

StationaryDistribution stationary_distribution(const ChannelSpec& spec) {
  const double total = spec.p01 + spec.p10;
  if (!(total > 0.0)) throw DegeneracyError("stationary_distribution: p01 + p10 = 0");
  const double good = spec.p01 / total;
  return {1.0 - good, good};
}

double mean_reward(const ChannelSpec& spec, double mean_noise) {
  const auto alpha = stationary_distribution(spec);
  return spec.h_good * alpha.good + spec.h_bad * alpha.bad - mean_noise;
}

ChannelState step_chain(ChannelState state, const ChannelSpec& spec, double u) {
  if (state == ChannelState::bad) return u < spec.p01 ? ChannelState::good : ChannelState::bad;
  return u < spec.p10 ? ChannelState::bad : ChannelState::good;
}

ChannelState step_chain(ChannelState state, const ChannelSpec& spec, numkit::RngStream& rng) {
  return step_chain(state, spec, rng.uniform());
}

double emit_reward(ChannelState state, double noise, double h_good, double h_bad) {
  const double indicator = state == ChannelState::good ? 1.0 : 0.0;
  return indicator - noise > 0.0 ? h_good : h_bad;
}

}  // namespace osa::env
