#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osa/contextual/linear_model.hpp"
#include "osa/contextual/neural_model.hpp"
#include "osa/numkit/rng.hpp"
#include "osa/policies/policy.hpp"
#include "osa/policies/selection.hpp"
#include "osa/rca/cycle.hpp"
#include "osa/rca/rca_policy.hpp"

namespace osa::ctx {

/// Regression target fed to the perturbation model for a played arm.
enum class TargetMode {
  literal,   // the model's own prediction θᵀx (a fixed point: never learns)
  observed,  // the realized perturbation reported in the feedback
};

/// How the per-arm selection index is formed.
enum class IndexMode {
  literal,    // u = n̂ + δ
  composite,  // u = RCA index − n̂ + δ: optimistic net value of the channel
};

std::string_view to_string(TargetMode mode);
std::string_view to_string(IndexMode mode);
TargetMode parse_target_mode(std::string_view text);
IndexMode parse_index_mode(std::string_view text);

struct ContextualConfig {
  TargetMode target_mode = TargetMode::observed;
  IndexMode index_mode = IndexMode::composite;
  bool shared_model = true;
  rca::RcaConfig rca;
  double h_good = 1.0;
  double h_bad = 0.1;
};

class PerturbationModel {
 public:
  virtual ~PerturbationModel() = default;
  virtual PerturbationEstimate estimate(std::span<const double> x) const = 0;
  virtual double predict(std::span<const double> x) const = 0;
  virtual void add(std::span<const double> x, double target) = 0;
  // Called once per round after all of the round's samples were added.
  virtual void finish_round(numkit::RngStream&) {}
};

class LinearPerturbationModel final : public PerturbationModel {
 public:
  LinearPerturbationModel(std::size_t d, double beta) : state_(d, beta) {}

  PerturbationEstimate estimate(std::span<const double> x) const override {
    return lin_ucb_index(state_, x);
  }
  double predict(std::span<const double> x) const override {
    return numkit::dot(state_.theta.values(), x);
  }
  void add(std::span<const double> x, double target) override { lin_update(state_, x, target); }

  const LinearModelState& state() const { return state_; }

 private:
  LinearModelState state_;
};

class NeuralPerturbationModel final : public PerturbationModel {
 public:
  explicit NeuralPerturbationModel(NeuralModelState state) : state_(std::move(state)) {}

  PerturbationEstimate estimate(std::span<const double> x) const override {
    return neural_ucb_index(state_, x);
  }
  double predict(std::span<const double> x) const override {
    return numkit::mlp_forward(state_.params, state_.network_input(x));
  }
  void add(std::span<const double> x, double target) override { neural_add_sample(state_, x, target); }
  void finish_round(numkit::RngStream& rng) override { neural_train_pass(state_, rng); }

  const NeuralModelState& state() const { return state_; }

 private:
  NeuralModelState state_;
};

/// Swaps non-positive candidates for non-negative complements. Candidates are
/// scanned in ascending net value, complements in descending net value, and
/// each complement is used at most once. |selected| never changes.
policy::ActionSet replacement_pass(const policy::ActionSet& candidates,
                                   std::span<const double> net_values);

/// Sort by index, take the top M as candidates, then run the replacement pass.
policy::ActionSet select_with_replacement(std::span<const double> indices,
                                          std::span<const double> net_values, std::size_t M,
                                          numkit::RngStream& rng);

/// MP-LUCB / MP-NUCB hosted in the regenerative-cycle framework.
///
/// Full-information mode: every channel's state is observed each round, so
/// all K regenerative paths advance every round and a fresh selection with
/// state-aware replacement is made each round. Bandit mode: only played arms
/// are observed, so selections are held for block epochs as in RCA-M and the
/// replacement pass is skipped (states are unknown at selection time).
/// The perturbation model learns from every played arm every round.
class ContextualPolicy final : public policy::Policy {
 public:
  ContextualPolicy(std::string name, std::size_t K, std::size_t M, ContextualConfig config,
                   std::vector<std::unique_ptr<PerturbationModel>> models, numkit::RngStream rng,
                   numkit::RngStream train_rng);

  std::string name() const override { return name_; }
  policy::ActionSet select(const env::Observation& obs) override;
  void learn(const policy::ActionSet& action, const policy::Feedback& feedback) override;
  std::span<const double> last_indices() const override { return indices_; }

  const PerturbationModel& model(std::size_t k) const { return *models_[model_slot(k)]; }
  const rca::RegenerativePaths& paths() const { return paths_; }
  std::span<const PerturbationEstimate> last_estimates() const { return estimates_; }
  const ContextualConfig& config() const { return config_; }

 private:
  std::size_t model_slot(std::size_t k) const { return config_.shared_model ? 0 : k; }
  void compute_indices(const env::Observation& obs);

  std::string name_;
  std::size_t K_;
  std::size_t M_;
  ContextualConfig config_;
  std::vector<std::unique_ptr<PerturbationModel>> models_;
  numkit::RngStream rng_;
  numkit::RngStream train_rng_;
  policy::ForcedInitialization warmup_;
  rca::RegenerativePaths paths_;
  rca::BlockEpochScheduler scheduler_;
  numkit::DenseMatrix contexts_;
  std::vector<PerturbationEstimate> estimates_;
  std::vector<double> indices_;
};

std::unique_ptr<ContextualPolicy> make_mp_lucb(std::size_t K, std::size_t M, std::size_t d,
                                               double beta, const ContextualConfig& config,
                                               std::uint64_t seed);

std::unique_ptr<ContextualPolicy> make_mp_nucb(std::size_t K, std::size_t M, std::size_t d,
                                               const NeuralConfig& neural,
                                               const ContextualConfig& config, std::uint64_t seed);

}  // namespace osa::ctx
