#pragma once

#include <cstddef>
#include <span>

#include "osa/numkit/dense.hpp"

namespace osa::ctx {

/// Point estimate of a channel's perturbation plus its confidence width.
struct PerturbationEstimate {
  double estimate = 0.0;
  double width = 0.0;

  double upper() const { return estimate + width; }
};

/// Ridge-regression perturbation model with unit regularization.
///
/// `design` is Λ = I + Σ x xᵀ and `inverse` is Λ⁻¹, kept in step through
/// Sherman-Morrison updates; θ = Λ⁻¹ b minimizes ‖Xθ − r‖² + ‖θ‖².
struct LinearModelState {
  LinearModelState(std::size_t d, double beta);

  numkit::DenseMatrix design;
  numkit::DenseMatrix inverse;
  numkit::DenseVector response;
  numkit::DenseVector theta;
  double beta;

  std::size_t dim() const { return response.dim(); }
};

numkit::DenseVector ridge_theta(const LinearModelState& state);

/// n̂ = θᵀx, δ = β √(xᵀ Λ⁻¹ x).
PerturbationEstimate lin_ucb_index(const LinearModelState& state, std::span<const double> x);

/// Λ += x xᵀ, b += target · x, θ recomputed.
void lin_update(LinearModelState& state, std::span<const double> x, double target);

}  // namespace osa::ctx
