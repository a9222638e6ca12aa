#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "osa/environment/channel.hpp"

namespace osa::rca {

enum class CyclePhase {
  awaiting_anchor,  // samples are discarded until the anchor state shows up
  recording,        // samples join the arm's concatenated path
};

/// Regenerative-path bookkeeping for one arm.
///
/// A block opens on the anchor state and completes on the first return to
/// the anchor after at least one off-anchor sample. The closing anchor sample
/// is recorded as the first sample of the next block, so uninterrupted play
/// tiles the path with complete renewal cycles. Totals include the open
/// block; abandon_open_block() removes it when the arm stops being played.
struct CycleState {
  std::optional<env::ChannelState> anchor = env::ChannelState::good;
  CyclePhase phase = CyclePhase::awaiting_anchor;
  double reward_sum = 0.0;    // Y_k
  std::uint64_t samples = 0;  // T_k
  std::uint64_t blocks = 0;   // B_k

  double open_reward = 0.0;
  std::uint64_t open_samples = 0;
  bool left_anchor = false;

  double mean() const { return samples > 0 ? reward_sum / static_cast<double>(samples) : 0.0; }
};

/// Feeds one played-round observation. Returns true when a block completes.
/// An unset anchor is fixed to the first observed state.
bool block_update(CycleState& cycle, env::ChannelState observed, double reward);

/// Drops the samples of the currently open block and waits for the anchor again.
void abandon_open_block(CycleState& cycle);

enum class AnchorChoice { fixed_good, first_observed };

struct RcaConfig {
  double exploration = 2.0;  // L_exp
  AnchorChoice anchor = AnchorChoice::fixed_good;
};

// +∞ when T_k = 0, else Y_k/T_k + √(L_exp · ln t2 / T_k).
double rca_index(const CycleState& cycle, const RcaConfig& cfg, std::uint64_t t2_global);

/// Cycle states of all K arms plus the virtual time t₂ = Σ_k T_k.
class RegenerativePaths {
 public:
  RegenerativePaths(std::size_t K, AnchorChoice anchor);

  std::size_t size() const { return cycles_.size(); }
  const CycleState& operator[](std::size_t k) const { return cycles_[k]; }
  std::uint64_t virtual_time() const { return virtual_time_; }

  bool observe(std::size_t k, env::ChannelState observed, double reward);
  void abandon(std::size_t k);
  double index(std::size_t k, const RcaConfig& cfg) const;

 private:
  std::vector<CycleState> cycles_;
  std::uint64_t virtual_time_ = 0;
};

}  // namespace osa::rca
