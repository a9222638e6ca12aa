#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "osa/numkit/rng.hpp"
#include "osa/policies/indices.hpp"
#include "osa/policies/policy.hpp"
#include "osa/policies/selection.hpp"

namespace osa::policy {

// Context-free baselines. They learn from the played arms' quantized rewards
// only, whatever the environment's feedback mode.

class RandomPolicy final : public Policy {
 public:
  RandomPolicy(std::size_t K, std::size_t M, numkit::RngStream rng);

  std::string name() const override { return "random"; }
  ActionSet select(const env::Observation& obs) override;
  void learn(const ActionSet&, const Feedback&) override {}

 private:
  std::size_t K_;
  std::size_t M_;
  numkit::RngStream rng_;
  ForcedInitialization warmup_;
};

/// Shared machinery for policies that play the top-M of a per-arm index
/// computed from ArmStats.
class IndexPolicy : public Policy {
 public:
  IndexPolicy(std::size_t K, std::size_t M, numkit::RngStream rng);

  ActionSet select(const env::Observation& obs) override;
  void learn(const ActionSet& action, const Feedback& feedback) override;
  std::span<const double> last_indices() const override { return indices_; }
  const std::vector<ArmStats>& stats() const { return stats_; }

 protected:
  virtual double index(const ArmStats& stats, std::size_t t) const = 0;

 private:
  std::size_t M_;
  numkit::RngStream rng_;
  ForcedInitialization warmup_;
  std::vector<ArmStats> stats_;
  std::vector<double> indices_;
};

class UcbPolicy final : public IndexPolicy {
 public:
  using IndexPolicy::IndexPolicy;
  std::string name() const override { return "ucb"; }

 protected:
  double index(const ArmStats& stats, std::size_t t) const override { return ucb1_index(stats, t); }
};

class KlUcbPolicy final : public IndexPolicy {
 public:
  KlUcbPolicy(std::size_t K, std::size_t M, numkit::RngStream rng, RewardRange range = {})
      : IndexPolicy(K, M, std::move(rng)), range_(range) {}
  std::string name() const override { return "klucb"; }

 protected:
  double index(const ArmStats& stats, std::size_t t) const override {
    return kl_ucb_index(stats, t, range_);
  }

 private:
  RewardRange range_;
};

}  // namespace osa::policy
