#include "osa/environment/environment.hpp"

#include <algorithm>
#include <numeric>

#include "osa/errors.hpp"

namespace osa::env {

using numkit::Purpose;

bool OracleStats::is_optimal(std::size_t k) const {
  return std::binary_search(optimal_set.begin(), optimal_set.end(), k);
}

double OracleStats::optimal_sum() const {
  double s = 0.0;
  for (std::size_t k : optimal_set) s += mu[k];
  return s;
}

double realize_noise(std::span<const double> theta_star, std::span<const double> x) {
  return numkit::dot(theta_star, x);
}

std::vector<std::size_t> top_m_by_mean(std::span<const double> mu, std::size_t M) {
  detail::require(M <= mu.size(), "top_m_by_mean: M exceeds channel count");
  std::vector<std::size_t> order(mu.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mu[a] > mu[b]; });
  order.resize(M);
  std::sort(order.begin(), order.end());
  return order;
}

OracleStats oracle_stats(const ScenarioConfig& cfg) {
  OracleStats stats;
  numkit::DenseVector mean_context(cfg.d, 0.5 * cfg.context_scale);
  stats.mean_noise = realize_noise(cfg.theta_star, mean_context);
  for (const auto& c : cfg.channels) {
    stats.stationary_good.push_back(stationary_distribution(c).good);
    stats.mu.push_back(mean_reward(c, stats.mean_noise));
  }
  stats.optimal_set = top_m_by_mean(stats.mu, cfg.M);
  return stats;
}

Environment::Environment(ScenarioConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
  cfg_.validate();
  const std::size_t K = cfg_.K();
  states_.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double alpha_good = stationary_distribution(cfg_.channels[k]).good;
    states_[k] = rng_.uniform(Purpose::initial_state, k, 0) < alpha_good ? ChannelState::good
                                                                          : ChannelState::bad;
  }
  observation_.contexts = numkit::DenseMatrix(K, cfg_.d);
  outcome_.states.resize(K);
  outcome_.noise.resize(K);
  outcome_.reward.resize(K);
  outcome_.net_value.resize(K);
}

const Observation& Environment::advance() {
  if (done()) {
    throw EpisodeComplete("environment: horizon T = " + std::to_string(cfg_.horizon) +
                          " already reached");
  }
  ++t_;
  const std::size_t K = cfg_.K();
  for (std::size_t k = 0; k < K; ++k) {
    const ChannelSpec& spec = cfg_.channels[k];
    states_[k] = step_chain(states_[k], spec, rng_.uniform(Purpose::transition, k, t_));

    auto row = observation_.contexts.row(k);
    for (std::size_t j = 0; j < cfg_.d; ++j) {
      row[j] = rng_.uniform(Purpose::context, k, t_, j) * cfg_.context_scale;
    }
    double noise = realize_noise(cfg_.theta_star, row);
    if (cfg_.noise_stddev > 0.0) {
      noise = std::max(0.0, noise + cfg_.noise_stddev * rng_.standard_normal(Purpose::noise, k, t_));
    }
    outcome_.states[k] = states_[k];
    outcome_.noise[k] = noise;
    outcome_.reward[k] = emit_reward(states_[k], noise, spec.h_good, spec.h_bad);
    outcome_.net_value[k] = spec.level(states_[k]) - noise;
  }
  observation_.t = t_;
  if (cfg_.feedback == FeedbackMode::full_information) {
    observation_.states = states_;
  } else {
    observation_.states.reset();
  }
  return observation_;
}

}  // namespace osa::env
