#include <algorithm>
#include <cmath>

#include "osa/contextual/linear_model.hpp"
#include "osa/errors.hpp"

namespace osa::ctx {

LinearModelState::LinearModelState(std::size_t d, double beta)
    : design(numkit::DenseMatrix::identity(d)),
      inverse(numkit::DenseMatrix::identity(d)),
      response(d),
      theta(d),
      beta(beta) {
  detail::require(d > 0, "LinearModelState: dimension must be positive");
  detail::require(beta > 0.0, "LinearModelState: beta must be positive");
}

numkit::DenseVector ridge_theta(const LinearModelState& state) {
  return numkit::matvec(state.inverse, state.response.values());
}

PerturbationEstimate lin_ucb_index(const LinearModelState& state, std::span<const double> x) {
  detail::require(x.size() == state.dim(), "lin_ucb_index: context dimension mismatch");
  PerturbationEstimate e;
  e.estimate = numkit::dot(state.theta.values(), x);
  // Clamp tiny negative round-off of the quadratic form.
  e.width = state.beta * std::sqrt(std::max(0.0, numkit::quadratic_form(state.inverse, x)));
  return e;
}

void lin_update(LinearModelState& state, std::span<const double> x, double target) {
  detail::require(x.size() == state.dim(), "lin_update: context dimension mismatch");
  detail::require(std::isfinite(target), "lin_update: non-finite target");
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return;
  numkit::add_outer(state.design, x);
  numkit::rank1_inverse_update_in_place(state.inverse, x);
  for (std::size_t j = 0; j < x.size(); ++j) state.response[j] += target * x[j];
  state.theta = ridge_theta(state);
}

}  // namespace osa::ctx
