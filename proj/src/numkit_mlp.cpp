#include "osa/numkit/mlp.hpp"

#include <cmath>
#include <string>

#include "osa/errors.hpp"

namespace osa::numkit {

MlpParams MlpParams::zeros(std::size_t input_dim, std::size_t width, std::size_t depth,
                           double dropout) {
  MlpParams p;
  p.input_dim = input_dim;
  p.width = width;
  p.depth = depth;
  p.dropout = dropout;
  detail::require(depth >= 2, "MlpParams: depth must be at least 2");
  detail::require(width > 0 && input_dim > 0, "MlpParams: empty layer");
  p.weights.emplace_back(width, input_dim);
  for (std::size_t i = 2; i < depth; ++i) p.weights.emplace_back(width, width);
  p.weights.emplace_back(1, width);
  p.validate();
  return p;
}

std::size_t MlpParams::parameter_count() const {
  return width * input_dim + (depth - 2) * width * width + width;
}

void MlpParams::validate() const {
  detail::require(depth >= 2, "MlpParams: depth must be at least 2");
  detail::require(dropout >= 0.0 && dropout < 1.0, "MlpParams: dropout must lie in [0, 1)");
  detail::require(weights.size() == depth, "MlpParams: expected one matrix per layer");
  std::size_t in = input_dim;
  for (std::size_t i = 0; i + 1 < depth; ++i) {
    detail::require(weights[i].rows() == width && weights[i].cols() == in,
                    "MlpParams: hidden layer " + std::to_string(i + 1) + " has wrong shape");
    in = width;
  }
  detail::require(weights.back().rows() == 1 && weights.back().cols() == width,
                  "MlpParams: output layer must be 1 x width");
}

DenseVector MlpParams::flatten() const {
  DenseVector flat(parameter_count());
  std::size_t at = 0;
  for (const auto& w : weights) {
    for (double v : w.values()) flat[at++] = v;
  }
  return flat;
}

void MlpParams::assign(std::span<const double> flat) {
  detail::require(flat.size() == parameter_count(), "MlpParams::assign: length mismatch");
  std::size_t at = 0;
  for (auto& w : weights) {
    for (double& v : w.values()) v = flat[at++];
  }
}

namespace {

struct ForwardCache {
  // inputs[i] feeds weights[i]; pre[i] is W_i · inputs[i] for hidden layers.
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> mask;  // per hidden layer, scale factor per unit
};

double run_forward(const MlpParams& params, std::span<const double> x, RngStream* rng,
                   ForwardCache* cache) {
  detail::require(x.size() == params.input_dim,
                  "mlp_forward: input has dim " + std::to_string(x.size()) + ", expected " +
                      std::to_string(params.input_dim));
  const bool use_dropout = rng != nullptr && params.dropout > 0.0;
  const double keep_scale = use_dropout ? 1.0 / (1.0 - params.dropout) : 1.0;

  std::vector<double> current(x.begin(), x.end());
  for (std::size_t layer = 0; layer + 1 < params.depth; ++layer) {
    const DenseMatrix& w = params.weights[layer];
    std::vector<double> z(w.rows());
    for (std::size_t r = 0; r < w.rows(); ++r) z[r] = dot(w.row(r), current);
    std::vector<double> h(z.size());
    std::vector<double> mask(z.size(), 1.0);
    for (std::size_t r = 0; r < z.size(); ++r) {
      if (use_dropout) mask[r] = rng->uniform() < params.dropout ? 0.0 : keep_scale;
      h[r] = (z[r] > 0.0 ? z[r] : 0.0) * mask[r];
    }
    if (cache) {
      cache->inputs.push_back(std::move(current));
      cache->pre.push_back(std::move(z));
      cache->mask.push_back(std::move(mask));
    }
    current = std::move(h);
  }
  const double out = dot(params.weights.back().row(0), current);
  if (cache) cache->inputs.push_back(std::move(current));
  if (!std::isfinite(out)) throw NumericError("mlp_forward: non-finite output");
  return out;
}

}  // namespace

double mlp_forward(const MlpParams& params, std::span<const double> x, bool train_mode,
                   RngStream* rng) {
  detail::require(!train_mode || rng != nullptr || params.dropout == 0.0,
                  "mlp_forward: training mode needs a random stream for dropout");
  return run_forward(params, x, train_mode ? rng : nullptr, nullptr);
}

double mlp_accumulate_gradient(const MlpParams& params, std::span<const double> x, double scale,
                               std::span<double> grad_accum, RngStream* rng) {
  detail::require(grad_accum.size() == params.parameter_count(),
                  "mlp_accumulate_gradient: gradient buffer has wrong length");
  ForwardCache cache;
  const double out = run_forward(params, x, rng, &cache);

  // Offsets of each layer inside the flat parameter vector.
  std::vector<std::size_t> offset(params.depth);
  std::size_t at = 0;
  for (std::size_t i = 0; i < params.depth; ++i) {
    offset[i] = at;
    at += params.weights[i].size();
  }

  // Output head: d out / d W_L = last hidden activation.
  const std::size_t last = params.depth - 1;
  const auto& head_in = cache.inputs[last];
  for (std::size_t c = 0; c < head_in.size(); ++c) grad_accum[offset[last] + c] += scale * head_in[c];

  // delta holds d out / d (activation feeding the current layer).
  std::vector<double> delta(params.weights[last].row(0).begin(), params.weights[last].row(0).end());
  for (std::size_t layer = last; layer-- > 0;) {
    const DenseMatrix& w = params.weights[layer];
    const auto& z = cache.pre[layer];
    const auto& mask = cache.mask[layer];
    std::vector<double> dz(z.size());
    for (std::size_t r = 0; r < z.size(); ++r) dz[r] = z[r] > 0.0 ? delta[r] * mask[r] : 0.0;

    const auto& in = cache.inputs[layer];
    for (std::size_t r = 0; r < w.rows(); ++r) {
      if (dz[r] == 0.0) continue;
      double* g = grad_accum.data() + offset[layer] + r * w.cols();
      const double s = scale * dz[r];
      for (std::size_t c = 0; c < w.cols(); ++c) g[c] += s * in[c];
    }
    if (layer == 0) break;
    std::vector<double> next(w.cols(), 0.0);
    for (std::size_t r = 0; r < w.rows(); ++r) {
      if (dz[r] == 0.0) continue;
      const auto row = w.row(r);
      for (std::size_t c = 0; c < w.cols(); ++c) next[c] += dz[r] * row[c];
    }
    delta = std::move(next);
  }
  return out;
}

DenseVector mlp_gradient(const MlpParams& params, std::span<const double> x) {
  DenseVector grad(params.parameter_count());
  mlp_accumulate_gradient(params, x, 1.0, grad.values(), nullptr);
  return grad;
}

}  // namespace osa::numkit
