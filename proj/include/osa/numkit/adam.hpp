#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace osa::numkit {

struct AdamConfig {
  double learning_rate = 0.005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OptimizerState {
  explicit OptimizerState(std::size_t parameter_count, AdamConfig config = {})
      : config(config), first_moment(parameter_count, 0.0), second_moment(parameter_count, 0.0) {}

  AdamConfig config;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t steps = 0;
};

// One bias-corrected Adam update of `params` in place.
void adam_step(OptimizerState& opt, std::span<double> params, std::span<const double> grad);

}  // namespace osa::numkit
