#include "osa/harness/run.hpp"

#include <array>

#include "osa/errors.hpp"
#include "osa/policies/baselines.hpp"
#include "osa/rca/rca_policy.hpp"

namespace osa::harness {

namespace {
constexpr std::array<std::string_view, 6> kPolicies{"random", "ucb", "klucb", "rca", "lucb", "nucb"};

numkit::RngStream policy_stream(std::uint64_t seed) {
  return numkit::RngStream(seed, static_cast<std::uint64_t>(numkit::Purpose::policy));
}
}  // namespace

bool is_known_policy(std::string_view name) {
  return std::find(kPolicies.begin(), kPolicies.end(), name) != kPolicies.end();
}

bool is_contextual_policy(std::string_view name) { return name == "lucb" || name == "nucb"; }

std::string PolicySpec::label() const {
  if (is_contextual_policy(name) && params.contextual.index_mode == ctx::IndexMode::literal) {
    return name + "-literal";
  }
  return name;
}

std::unique_ptr<policy::Policy> make_policy(const PolicySpec& spec, std::size_t K, std::size_t M,
                                            std::size_t d, std::uint64_t seed) {
  if (spec.name == "random") return std::make_unique<policy::RandomPolicy>(K, M, policy_stream(seed));
  if (spec.name == "ucb") return std::make_unique<policy::UcbPolicy>(K, M, policy_stream(seed));
  if (spec.name == "klucb") return std::make_unique<policy::KlUcbPolicy>(K, M, policy_stream(seed));
  if (spec.name == "rca") {
    if (!(spec.params.contextual.rca.exploration > 0.0)) throw ConfigError("RCA exploration constant must be positive");
    return std::make_unique<rca::RcaPolicy>(K, M, spec.params.contextual.rca, policy_stream(seed));
  }
  if (spec.name == "lucb") return ctx::make_mp_lucb(K, M, d, spec.params.beta, spec.params.contextual, seed);
  if (spec.name == "nucb") {
    return ctx::make_mp_nucb(K, M, d, spec.params.neural, spec.params.contextual, seed);
  }
  throw ConfigError("unknown policy '" + spec.name + "' (expected random|ucb|klucb|rca|lucb|nucb)");
}

void RunConfig::validate() const {
  if (!is_known_policy(policy.name)) {
    throw ConfigError("unknown policy '" + policy.name + "' (expected random|ucb|klucb|rca|lucb|nucb)");
  }
  if (T < 1) throw ConfigError("horizon T must be at least 1");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (!(policy.params.beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(policy.params.neural.gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(policy.params.neural.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (policy.params.neural.buffer_capacity == 0) throw ConfigError("buffer capacity must be positive");
}

env::ScenarioConfig RunConfig::scenario_config(std::uint64_t seed) const {
  env::ScenarioConfig cfg = scenario_file ? env::load_scenario_file(*scenario_file, M, T, d, seed)
                                          : env::load_scenario(scenario, M, T, d, seed);
  cfg.feedback = feedback;
  cfg.noise_stddev = noise_stddev;
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------

Trace::Trace(std::string scenario, std::string policy, std::uint64_t seed, std::size_t K,
             std::size_t M)
    : scenario_(std::move(scenario)), policy_(std::move(policy)), seed_(seed), K_(K), M_(M) {}

void Trace::append(const policy::ActionSet& action, const env::StepOutcome& outcome,
                   std::span<const double> indices) {
  detail::require(action.is_partition(K_, M_), "trace: action set violates the partition invariant");
  for (std::size_t k : action.selected) {
    selected_.push_back(k);
    rewards_.push_back(outcome.reward[k]);
    noise_.push_back(outcome.noise[k]);
    net_values_.push_back(outcome.net_value[k]);
    states_.push_back(outcome.states[k]);
  }
  if (!indices.empty()) {
    detail::require(indices.size() == K_, "trace: index vector has wrong length");
    indices_.insert(indices_.end(), indices.begin(), indices.end());
  }
  ++length_;
}

Trace::StepView Trace::step(std::size_t i) const {
  detail::require(i < length_, "trace: step out of range");
  const std::size_t at = i * M_;
  StepView v{
      {selected_.data() + at, M_}, {rewards_.data() + at, M_},   {noise_.data() + at, M_},
      {net_values_.data() + at, M_}, {states_.data() + at, M_}, {},
  };
  if (indices_.size() == length_ * K_) v.indices = {indices_.data() + i * K_, K_};
  return v;
}

policy::ActionSet Trace::action(std::size_t i) const {
  const auto v = step(i);
  return policy::ActionSet::from_selected({v.selected.begin(), v.selected.end()}, K_);
}

Trace run_episode(const RunConfig& cfg, std::uint64_t seed) {
  env::Environment environment(cfg.scenario_config(seed));
  const auto& sc = environment.config();
  auto pol = make_policy(cfg.policy, sc.K(), sc.M, sc.d, seed);
  Trace trace(sc.name, cfg.policy.label(), seed, sc.K(), sc.M);

  while (!environment.done()) {
    const std::size_t step = environment.t() + 1;
    try {
      const env::Observation& obs = environment.advance();
      policy::ActionSet action = pol->select(obs);
      if (!action.is_partition(sc.K(), sc.M)) {
        throw ContractViolation("policy '" + pol->name() + "' returned an invalid action set");
      }
      const auto& outcome = environment.outcome();
      trace.append(action, outcome,
                   cfg.record_indices ? pol->last_indices() : std::span<const double>{});
      pol->learn(action, policy::make_feedback(obs.t, action, outcome, sc.feedback));
    } catch (const ContractViolation& e) {
      throw EpisodeFailure(step, e.what());
    } catch (const NumericError& e) {
      throw EpisodeFailure(step, e.what());
    }
  }
  return trace;
}

}  // namespace osa::harness
