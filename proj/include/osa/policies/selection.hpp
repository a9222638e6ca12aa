#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "osa/numkit/rng.hpp"
#include "osa/policies/policy.hpp"

namespace osa::policy {

/// M channels with the largest index; ties are broken uniformly at random.
/// +∞ entries are allowed and always win over finite ones.
ActionSet top_m(std::span<const double> indices, std::size_t M, numkit::RngStream& rng);

/// Uniform M-subset of {0..K-1}.
ActionSet mp_random_select(std::size_t K, std::size_t M, numkit::RngStream& rng);

/// Round-robin warm start: a random permutation of the arms is played in
/// blocks of M, so every arm is played once within ⌈K/M⌉ rounds. The last
/// block is padded with random arms from outside it.
class ForcedInitialization {
 public:
  ForcedInitialization(std::size_t K, std::size_t M);

  std::size_t rounds() const { return rounds_; }
  bool finished() const { return next_round_ >= rounds_; }
  // The next warm-start block, or nullopt once every arm has been played.
  std::optional<ActionSet> next(numkit::RngStream& rng);

 private:
  std::size_t K_;
  std::size_t M_;
  std::size_t rounds_;
  std::size_t next_round_ = 0;
  std::vector<std::size_t> order_;
};

}  // namespace osa::policy
