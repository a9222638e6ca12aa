#include "osa/contextual/contextual_policy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "osa/errors.hpp"

namespace osa::ctx {

std::string_view to_string(TargetMode mode) {
  return mode == TargetMode::literal ? "literal" : "observed";
}

std::string_view to_string(IndexMode mode) {
  return mode == IndexMode::literal ? "literal" : "composite";
}

TargetMode parse_target_mode(std::string_view text) {
  if (text == "literal") return TargetMode::literal;
  if (text == "observed") return TargetMode::observed;
  throw ConfigError("unknown target mode '" + std::string(text) + "' (expected literal|observed)");
}

IndexMode parse_index_mode(std::string_view text) {
  if (text == "literal") return IndexMode::literal;
  if (text == "composite") return IndexMode::composite;
  throw ConfigError("unknown index mode '" + std::string(text) + "' (expected literal|composite)");
}

policy::ActionSet replacement_pass(const policy::ActionSet& candidates,
                                   std::span<const double> net_values) {
  auto by_value = [&](bool ascending) {
    return [&net_values, ascending](std::size_t a, std::size_t b) {
      if (net_values[a] != net_values[b]) {
        return ascending ? net_values[a] < net_values[b] : net_values[a] > net_values[b];
      }
      return a < b;
    };
  };

  std::vector<std::size_t> losers;
  for (std::size_t k : candidates.selected) {
    if (net_values[k] <= 0.0) losers.push_back(k);
  }
  std::vector<std::size_t> donors;
  for (std::size_t k : candidates.complement) {
    if (net_values[k] >= 0.0) donors.push_back(k);
  }
  std::sort(losers.begin(), losers.end(), by_value(true));
  std::sort(donors.begin(), donors.end(), by_value(false));

  policy::ActionSet out = candidates;
  const std::size_t swaps = std::min(losers.size(), donors.size());
  for (std::size_t i = 0; i < swaps; ++i) {
    *std::find(out.selected.begin(), out.selected.end(), losers[i]) = donors[i];
    *std::find(out.complement.begin(), out.complement.end(), donors[i]) = losers[i];
  }
  return out;
}

policy::ActionSet select_with_replacement(std::span<const double> indices,
                                          std::span<const double> net_values, std::size_t M,
                                          numkit::RngStream& rng) {
  detail::require(indices.size() == net_values.size(), "select_with_replacement: length mismatch");
  detail::require(M <= indices.size(), "select_with_replacement: fewer than M channels");
  return replacement_pass(policy::top_m(indices, M, rng), net_values);
}

ContextualPolicy::ContextualPolicy(std::string name, std::size_t K, std::size_t M,
                                   ContextualConfig config,
                                   std::vector<std::unique_ptr<PerturbationModel>> models,
                                   numkit::RngStream rng, numkit::RngStream train_rng)
    : name_(std::move(name)),
      K_(K),
      M_(M),
      config_(config),
      models_(std::move(models)),
      rng_(std::move(rng)),
      train_rng_(std::move(train_rng)),
      warmup_(K, M),
      paths_(K, config.rca.anchor),
      estimates_(K),
      indices_(K, 0.0) {
  detail::require(models_.size() == (config_.shared_model ? 1 : K),
                  "ContextualPolicy: expected one model, or one per arm");
  detail::require(config_.rca.exploration > 0.0, "ContextualPolicy: RCA exploration must be positive");
}

void ContextualPolicy::compute_indices(const env::Observation& obs) {
  for (std::size_t k = 0; k < K_; ++k) {
    estimates_[k] = models_[model_slot(k)]->estimate(obs.contexts.row(k));
    if (config_.index_mode == IndexMode::literal) {
      indices_[k] = estimates_[k].upper();
    } else {
      indices_[k] = paths_.index(k, config_.rca) - estimates_[k].estimate + estimates_[k].width;
    }
  }
}

policy::ActionSet ContextualPolicy::select(const env::Observation& obs) {
  detail::require(obs.contexts.rows() == K_, "ContextualPolicy: observation has wrong channel count");
  contexts_ = obs.contexts;

  if (obs.states) {
    compute_indices(obs);
    if (auto warm = warmup_.next(rng_)) return *warm;
    std::vector<double> net(K_);
    for (std::size_t k = 0; k < K_; ++k) {
      const double level = (*obs.states)[k] == env::ChannelState::good ? config_.h_good : config_.h_bad;
      net[k] = level - estimates_[k].estimate;
    }
    return select_with_replacement(indices_, net, M_, rng_);
  }

  if (scheduler_.decision_due()) {
    compute_indices(obs);
    scheduler_.begin_epoch(policy::top_m(indices_, M_, rng_), paths_);
  }
  return scheduler_.current();
}

void ContextualPolicy::learn(const policy::ActionSet&, const policy::Feedback& feedback) {
  detail::require(feedback.noise.size() == feedback.arms.size(),
                  "ContextualPolicy: feedback does not cover the action set");
  std::vector<bool> touched(models_.size(), false);
  for (std::size_t i = 0; i < feedback.arms.size(); ++i) {
    const std::size_t k = feedback.arms[i];
    PerturbationModel& m = *models_[model_slot(k)];
    const auto x = contexts_.row(k);
    const double target = config_.target_mode == TargetMode::observed ? feedback.noise[i] : m.predict(x);
    m.add(x, target);
    touched[model_slot(k)] = true;
  }
  for (std::size_t s = 0; s < models_.size(); ++s) {
    if (touched[s]) models_[s]->finish_round(train_rng_);
  }

  if (feedback.all_states && feedback.all_rewards) {
    for (std::size_t k = 0; k < K_; ++k) paths_.observe(k, (*feedback.all_states)[k], (*feedback.all_rewards)[k]);
  } else {
    for (std::size_t i = 0; i < feedback.arms.size(); ++i) {
      if (paths_.observe(feedback.arms[i], feedback.states[i], feedback.rewards[i])) {
        scheduler_.mark_completed(feedback.arms[i]);
      }
    }
  }
}

std::unique_ptr<ContextualPolicy> make_mp_lucb(std::size_t K, std::size_t M, std::size_t d,
                                               double beta, const ContextualConfig& config,
                                               std::uint64_t seed) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  std::vector<std::unique_ptr<PerturbationModel>> models;
  const std::size_t count = config.shared_model ? 1 : K;
  for (std::size_t i = 0; i < count; ++i) models.push_back(std::make_unique<LinearPerturbationModel>(d, beta));
  return std::make_unique<ContextualPolicy>(
      "lucb", K, M, config, std::move(models),
      numkit::RngStream(seed, static_cast<std::uint64_t>(numkit::Purpose::policy)),
      numkit::RngStream(seed, static_cast<std::uint64_t>(numkit::Purpose::network)));
}

std::unique_ptr<ContextualPolicy> make_mp_nucb(std::size_t K, std::size_t M, std::size_t d,
                                               const NeuralConfig& neural,
                                               const ContextualConfig& config, std::uint64_t seed) {
  if (!(neural.gamma > 0.0)) throw ConfigError("gamma must be positive");
  numkit::RngStream init_rng(seed, static_cast<std::uint64_t>(numkit::Purpose::network) + 100);
  std::vector<std::unique_ptr<PerturbationModel>> models;
  const std::size_t count = config.shared_model ? 1 : K;
  for (std::size_t i = 0; i < count; ++i) {
    models.push_back(std::make_unique<NeuralPerturbationModel>(neural_init(d, neural, init_rng)));
  }
  return std::make_unique<ContextualPolicy>(
      "nucb", K, M, config, std::move(models),
      numkit::RngStream(seed, static_cast<std::uint64_t>(numkit::Purpose::policy)),
      numkit::RngStream(seed, static_cast<std::uint64_t>(numkit::Purpose::network)));
}

}  // namespace osa::ctx
