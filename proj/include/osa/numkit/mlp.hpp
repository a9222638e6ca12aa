#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "osa/numkit/dense.hpp"
#include "osa/numkit/rng.hpp"

namespace osa::numkit {

/// Fully connected ReLU network with a scalar linear head:
///   out(x) = W_L σ(W_{L-1} σ(... σ(W_1 x)))
/// Shapes: W_1 is D×d, W_i is D×D for 2 ≤ i ≤ L-1, W_L is 1×D. No biases.
/// Dropout with rate `dropout` acts on every hidden activation, training only.
struct MlpParams {
  std::size_t input_dim = 0;
  std::size_t width = 0;
  std::size_t depth = 0;
  double dropout = 0.0;
  std::vector<DenseMatrix> weights;

  /// Zero-initialized parameters with validated shapes.
  static MlpParams zeros(std::size_t input_dim, std::size_t width, std::size_t depth,
                         double dropout = 0.0);

  // P = D·d + (L-2)·D² + D
  std::size_t parameter_count() const;

  DenseVector flatten() const;
  void assign(std::span<const double> flat);

  void validate() const;
};

/// Scalar network output. With train_mode unset the result depends only on
/// (params, x); with it set a dropout mask is drawn from `rng`, which must
/// then be non-null.
double mlp_forward(const MlpParams& params, std::span<const double> x, bool train_mode = false,
                   RngStream* rng = nullptr);

/// ∇_θ out(x) flattened in the same order as MlpParams::flatten, dropout off.
/// ReLU'(0) is taken as 0.
DenseVector mlp_gradient(const MlpParams& params, std::span<const double> x);

/// Forward and reverse pass in one go: adds `scale · ∇_θ out(x)` into
/// `grad_accum` and returns out(x). Dropout is sampled from `rng` when non-null.
double mlp_accumulate_gradient(const MlpParams& params, std::span<const double> x, double scale,
                               std::span<double> grad_accum, RngStream* rng);

}  // namespace osa::numkit
