#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "osa/environment/channel.hpp"
#include "osa/environment/scenario.hpp"
#include "osa/numkit/dense.hpp"
#include "osa/numkit/rng.hpp"

namespace osa::env {

/// What the learner sees before committing to an action set.
struct Observation {
  std::size_t t = 0;
  numkit::DenseMatrix contexts;  // K×d, row k is x_k^t
  // Present only in full-information mode.
  std::optional<std::vector<ChannelState>> states;
};

/// Realized per-channel quantities of one round, revealed after selection.
struct StepOutcome {
  std::vector<ChannelState> states;
  std::vector<double> noise;
  std::vector<double> reward;     // quantized: h_good or h_bad
  std::vector<double> net_value;  // h(s) − n
};

struct OracleStats {
  std::vector<double> stationary_good;
  std::vector<double> mu;
  std::vector<std::size_t> optimal_set;  // ascending channel indices
  double mean_noise = 0.0;

  bool is_optimal(std::size_t k) const;
  double optimal_sum() const;
};

/// Draws d entries from `uniform` (each in [0,1)) and scales them by `scale`.
template <class Uniform>
numkit::DenseVector sample_context(std::size_t d, double scale, Uniform&& uniform) {
  numkit::DenseVector x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = uniform() * scale;
  return x;
}

inline numkit::DenseVector sample_context(std::size_t d, double scale, numkit::RngStream& rng) {
  return sample_context(d, scale, [&rng] { return rng.uniform(); });
}

// θ*ᵀx
double realize_noise(std::span<const double> theta_star, std::span<const double> x);

/// Top-M by μ with ties resolved toward the lower index.
std::vector<std::size_t> top_m_by_mean(std::span<const double> mu, std::size_t M);

/// Stationary statistics; the common mean noise is θ*ᵀE[x] = θ*ᵀ(scale/2 · 1).
OracleStats oracle_stats(const ScenarioConfig& cfg);

/// Restless environment: every chain evolves each round whatever is played.
/// All randomness is keyed by (seed, purpose, channel, t) so two environments
/// with equal configs produce identical realizations.
class Environment {
 public:
  explicit Environment(ScenarioConfig cfg);

  const ScenarioConfig& config() const { return cfg_; }
  std::size_t t() const { return t_; }
  bool done() const { return t_ >= cfg_.horizon; }
  const std::vector<ChannelState>& states() const { return states_; }

  /// Moves to the next round and returns its observation. The matching
  /// outcome is available from outcome() until the next call.
  const Observation& advance();
  const Observation& observation() const { return observation_; }
  const StepOutcome& outcome() const { return outcome_; }

 private:
  ScenarioConfig cfg_;
  numkit::CounterRng rng_;
  std::size_t t_ = 0;
  std::vector<ChannelState> states_;
  Observation observation_;
  StepOutcome outcome_;
};

}  // namespace osa::env
