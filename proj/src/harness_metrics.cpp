#include "osa/harness/metrics.hpp"

#include <cmath>
#include <limits>

#include "osa/errors.hpp"

namespace osa::harness {

MetricsSeries compute_regret(const Trace& trace, const env::OracleStats& oracle) {
  detail::require(oracle.mu.size() == trace.K(), "compute_regret: oracle has wrong channel count");
  detail::require(oracle.optimal_set.size() == trace.M(), "compute_regret: oracle built for another M");

  const double best = oracle.optimal_sum();
  const double best_noise_free = best + static_cast<double>(trace.M()) * oracle.mean_noise;
  const std::size_t T = trace.length();

  MetricsSeries m;
  m.regret.reserve(T);
  m.normalized_regret.reserve(T);
  m.expected_regret.reserve(T);
  m.quantized_regret.reserve(T);
  m.suboptimal_total.reserve(T);
  m.suboptimal_counts.assign(trace.K(), 0);
  m.selection_counts.assign(trace.K(), 0);

  double gained = 0.0;
  double gained_expected = 0.0;
  double gained_quantized = 0.0;
  std::uint64_t suboptimal = 0;
  for (std::size_t i = 0; i < T; ++i) {
    const auto s = trace.step(i);
    for (std::size_t j = 0; j < s.selected.size(); ++j) {
      const std::size_t k = s.selected[j];
      gained += s.net_values[j];
      gained_expected += oracle.mu[k];
      gained_quantized += s.rewards[j];
      ++m.selection_counts[k];
      if (!oracle.is_optimal(k)) {
        ++m.suboptimal_counts[k];
        ++suboptimal;
      }
    }
    const double t = static_cast<double>(i + 1);
    const double r = t * best - gained;
    m.regret.push_back(r);
    m.normalized_regret.push_back(i == 0 ? std::numeric_limits<double>::quiet_NaN() : r / std::log(t));
    m.expected_regret.push_back(t * best - gained_expected);
    m.quantized_regret.push_back(t * best_noise_free - gained_quantized);
    m.suboptimal_total.push_back(suboptimal);
  }
  return m;
}

std::vector<std::uint64_t> suboptimal_counts(const Trace& trace, const env::OracleStats& oracle) {
  std::vector<std::uint64_t> counts(trace.K(), 0);
  for (std::size_t i = 0; i < trace.length(); ++i) {
    for (std::size_t k : trace.step(i).selected) {
      if (!oracle.is_optimal(k)) ++counts[k];
    }
  }
  return counts;
}

env::OracleStats oracle_from_means(std::vector<double> mu, std::size_t M) {
  env::OracleStats o;
  o.optimal_set = env::top_m_by_mean(mu, M);
  o.mu = std::move(mu);
  o.stationary_good.assign(o.mu.size(), std::numeric_limits<double>::quiet_NaN());
  return o;
}

double step_expected_regret(std::span<const std::size_t> selection, const env::OracleStats& oracle) {
  double chosen = 0.0;
  for (std::size_t k : selection) chosen += oracle.mu.at(k);
  return oracle.optimal_sum() - chosen;
}

}  // namespace osa::harness
