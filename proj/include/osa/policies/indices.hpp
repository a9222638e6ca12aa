#pragma once

#include <cstddef>

#include "osa/policies/policy.hpp"

namespace osa::policy {

// +∞ for an unplayed arm, else μ̂ + √(2 ln t / N).
double ucb1_index(const ArmStats& stats, std::size_t t);

/// Bernoulli KL divergence kl(p, q) with 0·ln 0 = 0. Returns +∞ when q sits
/// on a boundary that p does not.
double kl_bernoulli(double p, double q);

/// Largest q ∈ [p, 1] with plays · kl(p, q) ≤ budget, by bisection to 1e-6.
double kl_upper_bound(double p, double plays, double budget);

/// Rewards live on [low, high]; they are mapped to [0,1] for the Bernoulli KL
/// and the bound is mapped back.
struct RewardRange {
  double low = 0.1;
  double high = 1.0;
};

/// +∞ for an unplayed arm, else the KL-UCB index with exploration budget ln t.
double kl_ucb_index(const ArmStats& stats, std::size_t t, RewardRange range = {});

}  // namespace osa::policy
