#include "osa/numkit/adam.hpp"

#include <cmath>

#include "osa/errors.hpp"

namespace osa::numkit {

void adam_step(OptimizerState& opt, std::span<double> params, std::span<const double> grad) {
  detail::require(params.size() == grad.size() && params.size() == opt.first_moment.size(),
                  "adam_step: length mismatch");
  const AdamConfig& c = opt.config;
  ++opt.steps;
  const double t = static_cast<double>(opt.steps);
  const double bias1 = 1.0 - std::pow(c.beta1, t);
  const double bias2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    double& m = opt.first_moment[i];
    double& v = opt.second_moment[i];
    m = c.beta1 * m + (1.0 - c.beta1) * grad[i];
    v = c.beta2 * v + (1.0 - c.beta2) * grad[i] * grad[i];
    const double m_hat = m / bias1;
    const double v_hat = v / bias2;
    params[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

}  // namespace osa::numkit
