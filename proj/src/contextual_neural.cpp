#include <algorithm>
#include <cmath>

#include "osa/contextual/neural_model.hpp"
#include "osa/errors.hpp"

namespace osa::ctx {

NeuralModelState::NeuralModelState(numkit::MlpParams p, NeuralConfig c)
    : params(std::move(p)),
      config(c),
      gram(numkit::DenseMatrix::identity(params.parameter_count())),
      gram_inverse(numkit::DenseMatrix::identity(params.parameter_count())),
      optimizer(params.parameter_count(), numkit::AdamConfig{c.learning_rate}) {
  detail::require(config.gamma > 0.0, "NeuralConfig: gamma must be positive");
  detail::require(config.buffer_capacity > 0 && config.train_window > 0 && config.minibatch > 0,
                  "NeuralConfig: buffer, window and minibatch must be positive");
}

std::vector<double> NeuralModelState::network_input(std::span<const double> x) const {
  std::vector<double> in(x.begin(), x.end());
  if (config.mirror_input) in.insert(in.end(), x.begin(), x.end());
  return in;
}

numkit::MlpParams neural_init_params(std::size_t input_dim, std::size_t width, std::size_t depth,
                                     double dropout, numkit::RngStream& rng) {
  if (input_dim == 0 || input_dim % 2 != 0) throw ConfigError("neural_init: input dimension must be even");
  if (width == 0 || width % 2 != 0) throw ConfigError("neural_init: width must be even");
  if (depth < 2) throw ConfigError("neural_init: depth must be at least 2");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("neural_init: dropout must lie in [0, 1)");

  auto params = numkit::MlpParams::zeros(input_dim, width, depth, dropout);
  const double hidden_sd = std::sqrt(4.0 / static_cast<double>(width));
  const double head_sd = std::sqrt(2.0 / static_cast<double>(width));
  const std::size_t half_rows = width / 2;

  for (std::size_t layer = 0; layer + 1 < depth; ++layer) {
    numkit::DenseMatrix& w = params.weights[layer];
    const std::size_t half_cols = w.cols() / 2;
    for (std::size_t r = 0; r < half_rows; ++r) {
      for (std::size_t c = 0; c < half_cols; ++c) {
        const double v = rng.normal(0.0, hidden_sd);
        w(r, c) = v;
        w(r + half_rows, c + half_cols) = v;
      }
    }
  }
  numkit::DenseMatrix& head = params.weights.back();
  for (std::size_t c = 0; c < half_rows; ++c) {
    const double v = rng.normal(0.0, head_sd);
    head(0, c) = v;
    head(0, c + half_rows) = -v;
  }
  return params;
}

NeuralModelState neural_init(std::size_t d, const NeuralConfig& config, numkit::RngStream& rng) {
  const std::size_t input_dim = config.mirror_input ? 2 * d : d;
  return NeuralModelState(
      neural_init_params(input_dim, config.width, config.depth, config.dropout, rng), config);
}

PerturbationEstimate neural_ucb_index(const NeuralModelState& state, std::span<const double> x) {
  const auto in = state.network_input(x);
  numkit::DenseVector g(state.parameter_count());
  PerturbationEstimate e;
  e.estimate = numkit::mlp_accumulate_gradient(state.params, in, 1.0, g.values(), nullptr);
  e.width = state.config.gamma *
            std::sqrt(std::max(0.0, numkit::quadratic_form(state.gram_inverse, g.values())));
  return e;
}

void neural_add_sample(NeuralModelState& state, std::span<const double> x, double target) {
  detail::require(std::isfinite(target), "neural_add_sample: non-finite target");
  auto in = state.network_input(x);
  numkit::DenseVector g = numkit::mlp_gradient(state.params, in);
  const double scale = 1.0 / std::sqrt(static_cast<double>(state.params.width));
  bool nonzero = false;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    g[i] *= scale;
    nonzero = nonzero || g[i] != 0.0;
  }
  if (nonzero) {
    numkit::add_outer(state.gram, g.values());
    numkit::rank1_inverse_update_in_place(state.gram_inverse, g.values());
  }
  state.buffer.push_back({std::move(in), target});
  while (state.buffer.size() > state.config.buffer_capacity) state.buffer.pop_front();
}

double neural_train_pass(NeuralModelState& state, numkit::RngStream& rng) {
  const std::size_t n = std::min(state.buffer.size(), state.config.train_window);
  if (n == 0) return 0.0;
  const std::size_t first = state.buffer.size() - n;
  const std::size_t P = state.parameter_count();

  numkit::DenseVector flat = state.params.flatten();
  std::vector<double> grad(P);
  std::vector<double> sample_grad(P);
  double loss_sum = 0.0;
  for (std::size_t begin = first; begin < state.buffer.size(); begin += state.config.minibatch) {
    const std::size_t end = std::min(begin + state.config.minibatch, state.buffer.size());
    const double batch = static_cast<double>(end - begin);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = begin; i < end; ++i) {
      const ReplaySample& s = state.buffer[i];
      std::fill(sample_grad.begin(), sample_grad.end(), 0.0);
      const double out = numkit::mlp_accumulate_gradient(state.params, s.input, 1.0, sample_grad, &rng);
      const double residual = out - s.target;
      // d/dθ (out − y)² = 2 (out − y) ∇out, averaged over the minibatch.
      const double coeff = 2.0 * residual / batch;
      for (std::size_t j = 0; j < P; ++j) grad[j] += coeff * sample_grad[j];
      loss_sum += residual * residual;
    }
    numkit::adam_step(state.optimizer, flat.values(), grad);
    state.params.assign(flat.values());
  }
  return loss_sum / static_cast<double>(n);
}

void neural_learn(NeuralModelState& state, std::span<const std::vector<double>> contexts,
                  std::span<const double> targets, numkit::RngStream& rng) {
  detail::require(contexts.size() == targets.size(), "neural_learn: contexts and targets differ in length");
  for (std::size_t i = 0; i < contexts.size(); ++i) neural_add_sample(state, contexts[i], targets[i]);
  neural_train_pass(state, rng);
}

double neural_loss(const NeuralModelState& state, std::span<const ReplaySample> samples) {
  if (samples.empty()) return 0.0;
  double s = 0.0;
  for (const auto& sample : samples) {
    const double r = numkit::mlp_forward(state.params, sample.input) - sample.target;
    s += r * r;
  }
  return s / static_cast<double>(samples.size());
}

}  // namespace osa::ctx
