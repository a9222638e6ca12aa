#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "osa/errors.hpp"
#include "osa/policies/baselines.hpp"
#include "osa/policies/indices.hpp"
#include "osa/policies/policy.hpp"
#include "osa/policies/selection.hpp"

namespace osa::policy {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// ActionSet / Feedback

ActionSet ActionSet::from_selected(std::vector<std::size_t> selected, std::size_t K) {
  std::vector<bool> taken(K, false);
  for (std::size_t k : selected) {
    detail::require(k < K, "ActionSet: channel index out of range");
    detail::require(!taken[k], "ActionSet: channel selected twice");
    taken[k] = true;
  }
  ActionSet a;
  a.selected = std::move(selected);
  for (std::size_t k = 0; k < K; ++k) {
    if (!taken[k]) a.complement.push_back(k);
  }
  return a;
}

bool ActionSet::contains(std::size_t k) const {
  return std::find(selected.begin(), selected.end(), k) != selected.end();
}

bool ActionSet::is_partition(std::size_t K, std::size_t M) const {
  if (selected.size() != M || selected.size() + complement.size() != K) return false;
  std::vector<int> seen(K, 0);
  for (std::size_t k : selected) {
    if (k >= K || seen[k]++) return false;
  }
  for (std::size_t k : complement) {
    if (k >= K || seen[k]++) return false;
  }
  return true;
}

Feedback make_feedback(std::size_t t, const ActionSet& action, const env::StepOutcome& outcome,
                       env::FeedbackMode mode) {
  Feedback fb;
  fb.t = t;
  fb.arms = action.selected;
  for (std::size_t k : action.selected) {
    fb.rewards.push_back(outcome.reward[k]);
    fb.states.push_back(outcome.states[k]);
    fb.noise.push_back(outcome.noise[k]);
  }
  if (mode == env::FeedbackMode::full_information) {
    fb.all_states = outcome.states;
    fb.all_noise = outcome.noise;
    fb.all_rewards = outcome.reward;
  }
  return fb;
}

void update_stats(std::vector<ArmStats>& stats, const Feedback& feedback) {
  detail::require(feedback.rewards.size() == feedback.arms.size(),
                  "update_stats: feedback does not cover the action set");
  for (std::size_t i = 0; i < feedback.arms.size(); ++i) {
    ArmStats& s = stats.at(feedback.arms[i]);
    s.plays += 1;
    s.reward_sum += feedback.rewards[i];
  }
}

// ---------------------------------------------------------------------------
// Selection

ActionSet top_m(std::span<const double> indices, std::size_t M, numkit::RngStream& rng) {
  const std::size_t K = indices.size();
  detail::require(M <= K, "top_m: M exceeds the number of channels");
  struct Key {
    double index;
    std::uint64_t tie;
    std::size_t arm;
  };
  std::vector<Key> keys;
  keys.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    detail::require(!std::isnan(indices[k]), "top_m: NaN index");
    keys.push_back({indices[k], rng.next_u64(), k});
  }
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(M), keys.end(),
                    [](const Key& a, const Key& b) {
                      if (a.index != b.index) return a.index > b.index;
                      return a.tie < b.tie;
                    });
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < M; ++i) chosen.push_back(keys[i].arm);
  return ActionSet::from_selected(std::move(chosen), K);
}

ActionSet mp_random_select(std::size_t K, std::size_t M, numkit::RngStream& rng) {
  detail::require(M <= K, "mp_random_select: M exceeds K");
  std::vector<std::size_t> arms(K);
  std::iota(arms.begin(), arms.end(), std::size_t{0});
  // Partial Fisher-Yates: the first M slots end up a uniform M-subset.
  for (std::size_t i = 0; i < M; ++i) {
    const std::size_t j = i + rng.index(K - i);
    std::swap(arms[i], arms[j]);
  }
  arms.resize(M);
  return ActionSet::from_selected(std::move(arms), K);
}

ForcedInitialization::ForcedInitialization(std::size_t K, std::size_t M)
    : K_(K), M_(M), rounds_(M == 0 ? 0 : (K + M - 1) / M) {
  detail::require(M > 0 && M <= K, "ForcedInitialization: need 1 <= M <= K");
}

std::optional<ActionSet> ForcedInitialization::next(numkit::RngStream& rng) {
  if (finished()) return std::nullopt;
  if (order_.empty()) {
    order_.resize(K_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    for (std::size_t i = K_; i > 1; --i) std::swap(order_[i - 1], order_[rng.index(i)]);
  }
  const std::size_t begin = next_round_ * M_;
  const std::size_t end = std::min(begin + M_, K_);
  std::vector<std::size_t> block(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                                 order_.begin() + static_cast<std::ptrdiff_t>(end));
  if (block.size() < M_) {
    std::vector<std::size_t> others(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(begin));
    for (std::size_t i = 0; block.size() < M_; ++i) {
      const std::size_t j = i + rng.index(others.size() - i);
      std::swap(others[i], others[j]);
      block.push_back(others[i]);
    }
  }
  ++next_round_;
  return ActionSet::from_selected(std::move(block), K_);
}

// ---------------------------------------------------------------------------
// Indices

double ucb1_index(const ArmStats& stats, std::size_t t) {
  if (stats.plays == 0) return kInf;
  detail::require(t >= 1, "ucb1_index: t must be at least 1");
  return stats.mean() + std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                                  static_cast<double>(stats.plays));
}

double kl_bernoulli(double p, double q) {
  detail::require(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0, "kl_bernoulli: argument outside [0,1]");
  auto term = [](double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0) return kInf;
    return a * std::log(a / b);
  };
  return term(p, q) + term(1.0 - p, 1.0 - q);
}

double kl_upper_bound(double p, double plays, double budget) {
  detail::require(plays > 0.0, "kl_upper_bound: plays must be positive");
  if (budget <= 0.0 || p >= 1.0) return p;
  double lo = p;
  double hi = 1.0;
  for (int iter = 0; iter < 64 && hi - lo > 1e-6; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (plays * kl_bernoulli(p, mid) <= budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > 1e-6) throw NumericError("kl_upper_bound: bisection did not converge");
  return lo;
}

double kl_ucb_index(const ArmStats& stats, std::size_t t, RewardRange range) {
  if (stats.plays == 0) return kInf;
  detail::require(t >= 1, "kl_ucb_index: t must be at least 1");
  const double span = range.high - range.low;
  const double p = std::clamp((stats.mean() - range.low) / span, 0.0, 1.0);
  const double budget = std::log(static_cast<double>(t));
  const double q = kl_upper_bound(p, static_cast<double>(stats.plays), budget);
  return range.low + span * q;
}

// ---------------------------------------------------------------------------
// Baselines

RandomPolicy::RandomPolicy(std::size_t K, std::size_t M, numkit::RngStream rng)
    : K_(K), M_(M), rng_(std::move(rng)), warmup_(K, M) {}

ActionSet RandomPolicy::select(const env::Observation&) {
  if (auto warm = warmup_.next(rng_)) return *warm;
  return mp_random_select(K_, M_, rng_);
}

IndexPolicy::IndexPolicy(std::size_t K, std::size_t M, numkit::RngStream rng)
    : M_(M), rng_(std::move(rng)), warmup_(K, M), stats_(K), indices_(K, kInf) {}

ActionSet IndexPolicy::select(const env::Observation& obs) {
  if (auto warm = warmup_.next(rng_)) return *warm;
  for (std::size_t k = 0; k < stats_.size(); ++k) indices_[k] = index(stats_[k], obs.t);
  return top_m(indices_, M_, rng_);
}

void IndexPolicy::learn(const ActionSet&, const Feedback& feedback) { update_stats(stats_, feedback); }

}  // namespace osa::policy
