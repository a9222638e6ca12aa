#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "osa/numkit/rng.hpp"
#include "osa/policies/policy.hpp"
#include "osa/rca/cycle.hpp"

namespace osa::rca {

/// Multi-play block epochs: an action set is held until every arm in it has
/// completed at least one block, then a new decision is due. Arms dropped at
/// a decision lose their open block so every recorded path stays a union of
/// complete renewal cycles.
class BlockEpochScheduler {
 public:
  bool decision_due() const;
  const policy::ActionSet& current() const { return *current_; }
  bool has_current() const { return current_.has_value(); }
  std::size_t epochs() const { return epochs_; }

  void begin_epoch(policy::ActionSet next, RegenerativePaths& paths);
  void mark_completed(std::size_t k);

 private:
  std::optional<policy::ActionSet> current_;
  std::vector<std::size_t> pending_;  // arms of the current set still inside their first block
  std::size_t epochs_ = 0;
};

/// RCA-M: top-M arms by rca_index, held for a block epoch. Learns from the
/// played arms' observed states and quantized rewards.
class RcaPolicy final : public policy::Policy {
 public:
  RcaPolicy(std::size_t K, std::size_t M, RcaConfig cfg, numkit::RngStream rng);

  std::string name() const override { return "rca"; }
  policy::ActionSet select(const env::Observation& obs) override;
  void learn(const policy::ActionSet& action, const policy::Feedback& feedback) override;
  std::span<const double> last_indices() const override { return indices_; }

  const RegenerativePaths& paths() const { return paths_; }
  const BlockEpochScheduler& scheduler() const { return scheduler_; }

 private:
  std::size_t M_;
  RcaConfig cfg_;
  numkit::RngStream rng_;
  RegenerativePaths paths_;
  BlockEpochScheduler scheduler_;
  std::vector<double> indices_;
};

}  // namespace osa::rca
