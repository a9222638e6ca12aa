#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "osa/environment/environment.hpp"
#include "osa/errors.hpp"
#include "tables.hpp"

using namespace osa;
using namespace osa::env;

TEST_CASE("built-in scenarios reproduce the transition table") {
  for (std::size_t s = 0; s < 4; ++s) {
    const ScenarioConfig cfg = load_scenario(osa_test::kNames[s], 5, 100, 8, 1);
    REQUIRE(cfg.K() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(cfg.channels[k].p01 == osa_test::kTables[s].p01[k]);
      CHECK(cfg.channels[k].p10 == osa_test::kTables[s].p10[k]);
      CHECK(cfg.channels[k].h_good == 1.0);
      CHECK(cfg.channels[k].h_bad == 0.1);
    }
  }
  CHECK(load_scenario("S1", 5, 10, 8, 1).channels[0].p01 == 0.01);
  CHECK(load_scenario("S1", 5, 10, 8, 1).channels[0].p10 == 0.08);
  CHECK(load_scenario("S2", 5, 10, 8, 1).channels[9].p01 == 0.9);
  CHECK(load_scenario("S2", 5, 10, 8, 1).channels[9].p10 == 0.1);
  CHECK(load_scenario("S4", 5, 10, 8, 1).channels[4].p01 == 0.06);
  CHECK(load_scenario("S4", 5, 10, 8, 1).channels[4].p10 == 0.05);
  CHECK_THROWS_AS(load_scenario("S5", 5, 10, 8, 1), ConfigError);
}

TEST_CASE("theta_star is non-negative and inside the unit ball") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto theta = draw_theta_star(8, seed);
    CHECK(numkit::norm2(theta) <= 1.0 + 1e-12);
    for (double v : theta) CHECK(v >= 0.0);
  }
  CHECK(draw_theta_star(8, 3) == draw_theta_star(8, 3));
}

TEST_CASE("scenario validation") {
  ScenarioConfig cfg = load_scenario("S1", 5, 10, 8, 1);
  cfg.M = 11;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = load_scenario("S1", 5, 10, 8, 1);
  cfg.channels[0].p01 = 0.0;
  cfg.channels[0].p10 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(load_scenario("S1", 5, 10, 7, 1), ConfigError);
  CHECK_THROWS_AS((ChannelSpec{1.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((ChannelSpec{0.5, 0.5, 0.1, 1.0}.validate()), ConfigError);
}

TEST_CASE("stationary distribution") {
  CHECK(stationary_distribution({0.3, 0.7}).good == doctest::Approx(0.3));
  CHECK(stationary_distribution({0.01, 0.08}).good == doctest::Approx(1.0 / 9.0));
  CHECK(stationary_distribution({1.0, 0.0}).good == 1.0);
  CHECK(stationary_distribution({1.0, 0.0}).bad == 0.0);
  CHECK_THROWS_AS(stationary_distribution({0.0, 0.0}), DegeneracyError);
}

TEST_CASE("mean reward examples") {
  CHECK(mean_reward({0.04, 0.02}, 0.0) == doctest::Approx(0.7));
  CHECK(mean_reward({0.1, 0.9}, 0.0) == doctest::Approx(0.19));
  CHECK(mean_reward({0.04, 0.03}, 0.0) == doctest::Approx(0.1 + 0.9 * 4.0 / 7.0));
  CHECK(std::abs(mean_reward({0.04, 0.03}, 0.0) - 0.614) < 1e-3);
  CHECK(mean_reward({0.04, 0.02}, 0.25) == doctest::Approx(0.45));
}

TEST_CASE("mean rewards match the published table within 5e-3") {
  int checked = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    const auto& row = osa_test::kTables[s];
    for (std::size_t k = 0; k < 10; ++k) {
      const double mu = mean_reward({row.p01[k], row.p10[k], 1.0, 0.1}, 0.0);
      CAPTURE(s);
      CAPTURE(k);
      CHECK(std::abs(mu - row.mean[k]) < 5e-3);
      ++checked;
    }
  }
  CHECK(checked == 40);
}

TEST_CASE("step_chain deterministic edges") {
  const ChannelSpec sticky{0.0, 0.5};
  numkit::RngStream rng(1, 1);
  for (int i = 0; i < 1000; ++i) CHECK(step_chain(ChannelState::bad, sticky, rng) == ChannelState::bad);

  const ChannelSpec flip{1.0, 1.0};
  ChannelState s = ChannelState::bad;
  for (int i = 0; i < 10; ++i) {
    const ChannelState next = step_chain(s, flip, rng);
    CHECK(next != s);
    s = next;
  }
  CHECK(step_chain(ChannelState::bad, {0.3, 0.2}, 0.29) == ChannelState::good);
  CHECK(step_chain(ChannelState::bad, {0.3, 0.2}, 0.31) == ChannelState::bad);
  CHECK(step_chain(ChannelState::good, {0.3, 0.2}, 0.19) == ChannelState::bad);
  CHECK(step_chain(ChannelState::good, {0.3, 0.2}, 0.21) == ChannelState::good);
}

TEST_CASE("long-run good frequency approaches 1/9") {
  const ChannelSpec spec{0.01, 0.08};
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    numkit::RngStream rng(seed, 99);
    ChannelState s = rng.uniform() < 1.0 / 9.0 ? ChannelState::good : ChannelState::bad;
    std::size_t good = 0;
    for (int t = 0; t < 100000; ++t) {
      s = step_chain(s, spec, rng);
      good += s == ChannelState::good;
    }
    total += static_cast<double>(good) / 1e5;
  }
  CHECK(std::abs(total / 5.0 - 1.0 / 9.0) < 0.01);
}

TEST_CASE("sample_context") {
  CHECK(sample_context(4, 0.5, [] { return 1.0; }) == numkit::DenseVector{0.5, 0.5, 0.5, 0.5});
  CHECK(numkit::norm2(sample_context(4, 0.5, [] { return 1.0; })) == doctest::Approx(1.0));
  CHECK(numkit::norm2(sample_context(4, 0.5, [] { return 0.0; })) == 0.0);

  numkit::RngStream rng(4, 4);
  const double scale = 1.0 / std::sqrt(8.0);
  double max_norm = 0.0;
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const auto x = sample_context(8, scale, rng);
    max_norm = std::max(max_norm, numkit::norm2(x));
    for (double v : x) sum += v;
  }
  CHECK(max_norm <= 1.0);
  CHECK(std::abs(sum / 8e5 - 0.5 * scale) < 0.005);
}

TEST_CASE("realize_noise") {
  const std::vector<double> x{0.25, 0.1, 0.3, 0.2};
  CHECK(realize_noise(std::vector<double>(4, 0.0), x) == 0.0);
  CHECK(realize_noise(std::vector<double>{1.0, 0.0, 0.0, 0.0}, x) == 0.25);

  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> theta(8);
    std::vector<double> ctx(8);
    for (double& v : theta) v = u(gen);
    for (double& v : ctx) v = u(gen);
    const double tn = numkit::norm2(theta);
    const double cn = numkit::norm2(ctx);
    for (double& v : theta) v /= std::max(1.0, tn);
    for (double& v : ctx) v /= std::max(1.0, cn);
    const double n = realize_noise(theta, ctx);
    CHECK(n >= 0.0);
    CHECK(n <= 1.0 + 1e-12);
  }
}

TEST_CASE("emit_reward") {
  CHECK(emit_reward(ChannelState::good, 0.3) == 1.0);
  CHECK(emit_reward(ChannelState::bad, 0.3) == 0.1);
  CHECK(emit_reward(ChannelState::good, 1.2) == 0.1);
  CHECK(emit_reward(ChannelState::good, 1.0) == 0.1);
}

TEST_CASE("environment transitions follow the chain law (chi-square)") {
  const ScenarioConfig cfg = load_scenario("S2", 5, 10000, 8, 3);
  Environment environment(cfg);
  std::vector<std::array<std::array<double, 2>, 2>> counts(cfg.K(), {{{0, 0}, {0, 0}}});
  std::vector<ChannelState> prev = environment.states();
  while (!environment.done()) {
    environment.advance();
    for (std::size_t k = 0; k < cfg.K(); ++k) {
      const auto from = static_cast<int>(prev[k]);
      const auto to = static_cast<int>(environment.states()[k]);
      counts[k][from][to] += 1.0;
    }
    prev = environment.states();
  }
  // Two rows per channel, one degree of freedom each; 99.9 % quantile of χ²(2).
  for (std::size_t k = 0; k < cfg.K(); ++k) {
    const double p01 = cfg.channels[k].p01;
    const double p10 = cfg.channels[k].p10;
    double chi2 = 0.0;
    const double n0 = counts[k][0][0] + counts[k][0][1];
    const double n1 = counts[k][1][0] + counts[k][1][1];
    const double e[2][2] = {{n0 * (1 - p01), n0 * p01}, {n1 * p10, n1 * (1 - p10)}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (e[a][b] > 0) chi2 += (counts[k][a][b] - e[a][b]) * (counts[k][a][b] - e[a][b]) / e[a][b];
      }
    }
    CAPTURE(k);
    CHECK(chi2 < 13.82);
  }
}

TEST_CASE("observation carries states only in full-information mode") {
  ScenarioConfig cfg = load_scenario("S1", 5, 3, 8, 1);
  Environment full(cfg);
  const Observation& o = full.advance();
  REQUIRE(o.states.has_value());
  CHECK(*o.states == full.states());
  CHECK(o.contexts.rows() == 10);
  CHECK(o.contexts.cols() == 8);
  for (std::size_t k = 0; k < 10; ++k) CHECK(numkit::norm2(o.contexts.row(k)) <= 1.0);

  cfg.feedback = FeedbackMode::bandit;
  Environment bandit(cfg);
  CHECK_FALSE(bandit.advance().states.has_value());
}

TEST_CASE("advance past the horizon throws") {
  Environment environment(load_scenario("S1", 5, 2, 8, 1));
  environment.advance();
  environment.advance();
  CHECK(environment.done());
  CHECK_THROWS_AS(environment.advance(), EpisodeComplete);
}

TEST_CASE("outcome is consistent with states and noise") {
  Environment environment(load_scenario("S4", 5, 500, 8, 7));
  const auto& cfg = environment.config();
  while (!environment.done()) {
    const Observation& o = environment.advance();
    const StepOutcome& out = environment.outcome();
    for (std::size_t k = 0; k < cfg.K(); ++k) {
      const double n = realize_noise(cfg.theta_star, o.contexts.row(k));
      CHECK(out.noise[k] == doctest::Approx(n));
      CHECK(out.noise[k] >= 0.0);
      CHECK(out.noise[k] < 1.0);
      CHECK(out.states[k] == environment.states()[k]);
      CHECK(out.reward[k] == emit_reward(out.states[k], out.noise[k]));
      CHECK(out.net_value[k] == doctest::Approx(cfg.channels[k].level(out.states[k]) - n));
    }
  }
}

TEST_CASE("equal seeds give identical realizations") {
  const ScenarioConfig cfg = load_scenario("S3", 5, 300, 8, 21);
  Environment a(cfg);
  Environment b(cfg);
  while (!a.done()) {
    const Observation& oa = a.advance();
    const Observation& ob = b.advance();
    CHECK(oa.contexts == ob.contexts);
    CHECK(a.states() == b.states());
    CHECK(a.outcome().noise == b.outcome().noise);
    CHECK(a.outcome().reward == b.outcome().reward);
  }
  Environment c(load_scenario("S3", 5, 300, 8, 22));
  c.advance();
  Environment d(cfg);
  CHECK_FALSE(c.advance().contexts == d.advance().contexts);
}

TEST_CASE("optional Gaussian noise keeps the perturbation non-negative") {
  ScenarioConfig cfg = load_scenario("S1", 5, 200, 8, 1);
  cfg.noise_stddev = 0.2;
  Environment environment(cfg);
  bool shifted = false;
  while (!environment.done()) {
    const Observation& o = environment.advance();
    for (std::size_t k = 0; k < cfg.K(); ++k) {
      const double n = environment.outcome().noise[k];
      CHECK(n >= 0.0);
      shifted |= std::abs(n - realize_noise(cfg.theta_star, o.contexts.row(k))) > 1e-9;
    }
  }
  CHECK(shifted);
}

TEST_CASE("oracle statistics") {
  SUBCASE("S4 optimal set") {
    ScenarioConfig cfg = load_scenario("S4", 5, 10, 8, 1);
    cfg.theta_star = numkit::DenseVector(8, 0.0);
    const OracleStats o = oracle_stats(cfg);
    CHECK(o.mean_noise == 0.0);
    CHECK(o.optimal_set == std::vector<std::size_t>{1, 3, 4, 6, 7});
  }
  SUBCASE("S1 optimal set") {
    const OracleStats o = oracle_stats(load_scenario("S1", 5, 10, 8, 1));
    CHECK(o.optimal_set == std::vector<std::size_t>{5, 6, 7, 8, 9});
  }
  SUBCASE("common mean noise shifts every mean and keeps the set") {
    const ScenarioConfig cfg = load_scenario("S4", 5, 10, 8, 4);
    const OracleStats o = oracle_stats(cfg);
    double expected_noise = 0.0;
    for (double v : cfg.theta_star) expected_noise += v * 0.5 / std::sqrt(8.0);
    CHECK(o.mean_noise == doctest::Approx(expected_noise));
    CHECK(o.mean_noise > 0.0);
    CHECK(o.optimal_set == std::vector<std::size_t>{1, 3, 4, 6, 7});
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(o.mu[k] == doctest::Approx(mean_reward(cfg.channels[k], 0.0) - expected_noise));
      CHECK(o.stationary_good[k] == doctest::Approx(cfg.channels[k].p01 / (cfg.channels[k].p01 + cfg.channels[k].p10)));
    }
  }
  SUBCASE("ties go to the lower index and shifts do not matter") {
    const std::vector<double> mu{0.55, 0.2, 0.55, 0.9};
    CHECK(top_m_by_mean(mu, 2) == std::vector<std::size_t>{0, 3});
    std::vector<double> shifted = mu;
    for (double& v : shifted) v -= 0.37;
    CHECK(top_m_by_mean(shifted, 2) == top_m_by_mean(mu, 2));
  }
}

TEST_CASE("scenario text files") {
  const std::string text =
      "# two channels\n"
      "[scenario]\n"
      "name = pair\n"
      "h_good = 1\n"
      "h_bad = 0.1\n"
      "[channels]\n"
      "1 0.2 0.3   # first\n"
      "2 0.4 0.1\n";
  const ScenarioConfig cfg = parse_scenario_text(text, 1, 50, 4, 2);
  CHECK(cfg.name == "pair");
  REQUIRE(cfg.K() == 2);
  CHECK(cfg.channels[1].p01 == 0.4);
  CHECK(cfg.channels[1].p10 == 0.1);
  CHECK(cfg.context_scale == doctest::Approx(0.5));

  CHECK_THROWS_AS(parse_scenario_text("[channels]\n2 0.1 0.1\n", 1, 5, 4, 1), ConfigError);
  CHECK_THROWS_AS(parse_scenario_text("[channels]\n1 0.1\n", 1, 5, 4, 1), ConfigError);
  CHECK_THROWS_AS(parse_scenario_text("[channels]\n1 0.1 0.1\n", 2, 5, 4, 1), ConfigError);

  const auto path = std::filesystem::temp_directory_path() / "osa_scenario_test.txt";
  {
    std::ofstream out(path);
    out << text;
  }
  CHECK(load_scenario_file(path, 1, 50, 4, 2).channels == cfg.channels);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_scenario_file(path, 1, 50, 4, 2), ConfigError);
}
