#include <algorithm>
#include <cmath>
#include <limits>

#include "osa/errors.hpp"
#include "osa/policies/selection.hpp"
#include "osa/rca/cycle.hpp"
#include "osa/rca/rca_policy.hpp"

namespace osa::rca {

namespace {
void record(CycleState& c, double reward) {
  c.reward_sum += reward;
  c.samples += 1;
  c.open_reward += reward;
  c.open_samples += 1;
}
}  // namespace

bool block_update(CycleState& cycle, env::ChannelState observed, double reward) {
  if (!cycle.anchor) cycle.anchor = observed;
  const bool at_anchor = observed == *cycle.anchor;

  if (cycle.phase == CyclePhase::awaiting_anchor) {
    if (!at_anchor) return false;
    cycle.phase = CyclePhase::recording;
    cycle.open_reward = 0.0;
    cycle.open_samples = 0;
    cycle.left_anchor = false;
    record(cycle, reward);
    return false;
  }

  if (at_anchor && cycle.left_anchor) {
    cycle.blocks += 1;
    cycle.open_reward = 0.0;
    cycle.open_samples = 0;
    cycle.left_anchor = false;
    record(cycle, reward);
    return true;
  }
  record(cycle, reward);
  if (!at_anchor) cycle.left_anchor = true;
  return false;
}

void abandon_open_block(CycleState& cycle) {
  cycle.reward_sum -= cycle.open_reward;
  cycle.samples -= cycle.open_samples;
  if (cycle.samples == 0) cycle.reward_sum = 0.0;
  cycle.open_reward = 0.0;
  cycle.open_samples = 0;
  cycle.left_anchor = false;
  cycle.phase = CyclePhase::awaiting_anchor;
}

double rca_index(const CycleState& cycle, const RcaConfig& cfg, std::uint64_t t2_global) {
  if (cycle.samples == 0) return std::numeric_limits<double>::infinity();
  detail::require(t2_global >= 1, "rca_index: virtual time must be at least 1");
  const double n = static_cast<double>(cycle.samples);
  return cycle.mean() + std::sqrt(cfg.exploration * std::log(static_cast<double>(t2_global)) / n);
}

RegenerativePaths::RegenerativePaths(std::size_t K, AnchorChoice anchor) : cycles_(K) {
  if (anchor == AnchorChoice::first_observed) {
    for (auto& c : cycles_) c.anchor.reset();
  }
}

bool RegenerativePaths::observe(std::size_t k, env::ChannelState observed, double reward) {
  CycleState& c = cycles_.at(k);
  const std::uint64_t before = c.samples;
  const bool completed = block_update(c, observed, reward);
  virtual_time_ += c.samples - before;
  return completed;
}

void RegenerativePaths::abandon(std::size_t k) {
  CycleState& c = cycles_.at(k);
  virtual_time_ -= c.open_samples;
  abandon_open_block(c);
}

double RegenerativePaths::index(std::size_t k, const RcaConfig& cfg) const {
  return rca_index(cycles_.at(k), cfg, std::max<std::uint64_t>(virtual_time_, 1));
}

// ---------------------------------------------------------------------------

bool BlockEpochScheduler::decision_due() const { return !current_ || pending_.empty(); }

void BlockEpochScheduler::begin_epoch(policy::ActionSet next, RegenerativePaths& paths) {
  if (current_) {
    for (std::size_t k : current_->selected) {
      if (std::find(next.selected.begin(), next.selected.end(), k) == next.selected.end()) {
        paths.abandon(k);
      }
    }
  }
  pending_ = next.selected;
  current_ = std::move(next);
  ++epochs_;
}

void BlockEpochScheduler::mark_completed(std::size_t k) {
  pending_.erase(std::remove(pending_.begin(), pending_.end(), k), pending_.end());
}

// ---------------------------------------------------------------------------

RcaPolicy::RcaPolicy(std::size_t K, std::size_t M, RcaConfig cfg, numkit::RngStream rng)
    : M_(M), cfg_(cfg), rng_(std::move(rng)), paths_(K, cfg.anchor),
      indices_(K, std::numeric_limits<double>::infinity()) {
  detail::require(cfg_.exploration > 0.0, "RcaConfig: exploration constant must be positive");
  detail::require(M > 0 && M <= K, "RcaPolicy: need 1 <= M <= K");
}

policy::ActionSet RcaPolicy::select(const env::Observation&) {
  if (scheduler_.decision_due()) {
    for (std::size_t k = 0; k < paths_.size(); ++k) indices_[k] = paths_.index(k, cfg_);
    scheduler_.begin_epoch(policy::top_m(indices_, M_, rng_), paths_);
  }
  return scheduler_.current();
}

void RcaPolicy::learn(const policy::ActionSet&, const policy::Feedback& feedback) {
  for (std::size_t i = 0; i < feedback.arms.size(); ++i) {
    if (paths_.observe(feedback.arms[i], feedback.states[i], feedback.rewards[i])) {
      scheduler_.mark_completed(feedback.arms[i]);
    }
  }
}

}  // namespace osa::rca
