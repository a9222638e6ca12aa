#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "osa/contextual/linear_model.hpp"
#include "osa/numkit/adam.hpp"
#include "osa/numkit/dense.hpp"
#include "osa/numkit/mlp.hpp"
#include "osa/numkit/rng.hpp"

namespace osa::ctx {

struct NeuralConfig {
  std::size_t depth = 2;
  std::size_t width = 16;
  double dropout = 0.1;
  double gamma = 1.0;
  double learning_rate = 0.005;
  std::size_t buffer_capacity = 4096;
  std::size_t train_window = 256;  // most recent samples used per training pass
  std::size_t minibatch = 32;
  bool mirror_input = false;  // feed (x, x) instead of x
};

struct ReplaySample {
  std::vector<double> input;
  double target;
};

/// MLP perturbation model with a gradient-feature confidence width.
/// `gram` is Z = I + Σ g gᵀ / D and `gram_inverse` its inverse.
struct NeuralModelState {
  NeuralModelState(numkit::MlpParams params, NeuralConfig config);

  numkit::MlpParams params;
  NeuralConfig config;
  numkit::DenseMatrix gram;
  numkit::DenseMatrix gram_inverse;
  numkit::OptimizerState optimizer;
  std::deque<ReplaySample> buffer;

  std::size_t parameter_count() const { return params.parameter_count(); }
  // Network input for a context (mirrored when configured).
  std::vector<double> network_input(std::span<const double> x) const;
};

/// Block-Gaussian initialization: each hidden layer is diag(W, W) with
/// W entries ~ N(0, 4/D); the head is [wᵀ, −wᵀ] with w entries ~ N(0, 2/D).
/// `input_dim` is the network input size (2d when mirroring). Throws
/// ConfigError for odd input_dim or width.
numkit::MlpParams neural_init_params(std::size_t input_dim, std::size_t width, std::size_t depth,
                                     double dropout, numkit::RngStream& rng);

/// Fresh model for contexts of dimension d: block init, Z = I.
NeuralModelState neural_init(std::size_t d, const NeuralConfig& config, numkit::RngStream& rng);

/// n̂ = network output (dropout off), δ = γ √(gᵀ Z⁻¹ g) with g = ∇_θ n̂.
PerturbationEstimate neural_ucb_index(const NeuralModelState& state, std::span<const double> x);

/// Stores (x, target) in the replay buffer and adds g gᵀ / D to Z.
void neural_add_sample(NeuralModelState& state, std::span<const double> x, double target);

/// One pass of squared-error minibatch Adam over the most recent
/// min(buffer, train_window) samples with dropout active. Returns the mean
/// training loss seen during the pass.
double neural_train_pass(NeuralModelState& state, numkit::RngStream& rng);

/// Adds every (x, target) pair, then runs one training pass.
void neural_learn(NeuralModelState& state, std::span<const std::vector<double>> contexts,
                  std::span<const double> targets, numkit::RngStream& rng);

// Mean squared error of the current network (dropout off) over samples.
double neural_loss(const NeuralModelState& state, std::span<const ReplaySample> samples);

}  // namespace osa::ctx
