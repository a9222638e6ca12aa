#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "osa/environment/environment.hpp"
#include "osa/harness/run.hpp"

namespace osa::harness {

/// Regret series of one episode; entry i describes t = i + 1.
///
///   regret(t)           = t Σ_{opt} μ − Σ_{τ≤t} Σ_{a∈A^τ} (h(s_a^τ) − n_a^τ)
///   expected_regret(t)  = t Σ_{opt} μ − Σ_{τ≤t} Σ_{a∈A^τ} μ_a
///   quantized_regret(t) = t Σ_{opt} μ⁰ − Σ_{τ≤t} Σ_{a∈A^τ} r_a^τ
///
/// μ includes the common mean noise; μ⁰ = μ + n̄ is the noise-free mean,
/// which is what the quantized rewards average to.
struct MetricsSeries {
  std::vector<double> regret;
  std::vector<double> normalized_regret;  // regret / ln t; NaN at t = 1
  std::vector<double> expected_regret;
  std::vector<double> quantized_regret;
  std::vector<std::uint64_t> suboptimal_total;  // cumulative sub-optimal selections
  std::vector<std::uint64_t> suboptimal_counts;  // per channel over the whole episode
  std::vector<std::uint64_t> selection_counts;   // per channel over the whole episode

  std::size_t length() const { return regret.size(); }
};

MetricsSeries compute_regret(const Trace& trace, const env::OracleStats& oracle);

/// Per-channel number of selections outside the optimal set.
std::vector<std::uint64_t> suboptimal_counts(const Trace& trace, const env::OracleStats& oracle);

/// Oracle statistics built directly from given means (no mean noise).
env::OracleStats oracle_from_means(std::vector<double> mu, std::size_t M);

/// One-round expected regret of playing `selection`: Σ_{opt} μ − Σ_{sel} μ.
double step_expected_regret(std::span<const std::size_t> selection, const env::OracleStats& oracle);

}  // namespace osa::harness
