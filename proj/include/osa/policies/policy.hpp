#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osa/environment/environment.hpp"

namespace osa::policy {

/// The M channels played this round and the K−M left idle.
struct ActionSet {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> complement;

  /// Builds the complement of `selected` in {0..K-1}; keeps `selected` order.
  /// Throws ContractViolation on duplicates or out-of-range indices.
  static ActionSet from_selected(std::vector<std::size_t> selected, std::size_t K);

  bool contains(std::size_t k) const;
  // Partition invariant: disjoint, covers 0..K-1, |selected| = M.
  bool is_partition(std::size_t K, std::size_t M) const;
};

struct ArmStats {
  std::uint64_t plays = 0;
  double reward_sum = 0.0;

  double mean() const { return plays > 0 ? reward_sum / static_cast<double>(plays) : 0.0; }
};

/// Revealed after the action set is committed. The per-arm vectors are
/// parallel to `arms`; the all_* members are filled in full-information mode.
struct Feedback {
  std::size_t t = 0;
  std::vector<std::size_t> arms;
  std::vector<double> rewards;
  std::vector<env::ChannelState> states;
  std::vector<double> noise;
  std::optional<std::vector<env::ChannelState>> all_states;
  std::optional<std::vector<double>> all_noise;
  std::optional<std::vector<double>> all_rewards;
};

Feedback make_feedback(std::size_t t, const ActionSet& action, const env::StepOutcome& outcome,
                       env::FeedbackMode mode);

// For each played arm: plays += 1, reward_sum += r.
void update_stats(std::vector<ArmStats>& stats, const Feedback& feedback);

class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  virtual ActionSet select(const env::Observation& obs) = 0;
  virtual void learn(const ActionSet& action, const Feedback& feedback) = 0;

  // Per-channel index values behind the latest select(); empty if none.
  virtual std::span<const double> last_indices() const { return {}; }
};

}  // namespace osa::policy
