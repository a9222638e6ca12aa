#include "osa/environment/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "osa/errors.hpp"
#include "osa/numkit/rng.hpp"

namespace osa::env {

std::string_view to_string(FeedbackMode mode) {
  return mode == FeedbackMode::full_information ? "full" : "bandit";
}

FeedbackMode parse_feedback_mode(std::string_view text) {
  if (text == "full") return FeedbackMode::full_information;
  if (text == "bandit") return FeedbackMode::bandit;
  throw ConfigError("unknown feedback mode '" + std::string(text) + "' (expected full|bandit)");
}

void ScenarioConfig::validate() const {
  if (channels.empty()) throw ConfigError("scenario '" + name + "' has no channels");
  for (const auto& c : channels) c.validate();
  if (M == 0 || M > K()) {
    throw ConfigError("M = " + std::to_string(M) + " must lie in [1, K = " + std::to_string(K()) + "]");
  }
  if (d == 0 || d % 2 != 0) throw ConfigError("context dimension d must be even and positive");
  if (!(context_scale > 0.0)) throw ConfigError("context_scale must be positive");
  if (theta_star.dim() != d) throw ConfigError("theta_star dimension does not match d");
  for (double v : theta_star) {
    if (!(v >= 0.0)) throw ConfigError("theta_star entries must be non-negative");
  }
  if (numkit::norm2(theta_star) > 1.0 + 1e-12) throw ConfigError("theta_star norm exceeds 1");
  if (horizon == 0) throw ConfigError("horizon must be positive");
  if (!(noise_stddev >= 0.0)) throw ConfigError("noise_stddev must be non-negative");
}

const std::array<ScenarioTable, 4>& builtin_scenarios() {
  static const std::array<ScenarioTable, 4> tables{{
      {"S1",
       {0.01, 0.01, 0.02, 0.02, 0.03, 0.03, 0.04, 0.04, 0.05, 0.05},
       {0.08, 0.07, 0.08, 0.07, 0.08, 0.07, 0.02, 0.01, 0.02, 0.01},
       {0.2, 0.21, 0.28, 0.3, 0.35, 0.37, 0.7, 0.82, 0.74, 0.85}},
      {"S2",
       {0.1, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9},
       {0.9, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1},
       {0.19, 0.19, 0.28, 0.37, 0.46, 0.55, 0.64, 0.73, 0.82, 0.91}},
      {"S3",
       {0.01, 0.1, 0.02, 0.3, 0.04, 0.5, 0.06, 0.7, 0.08, 0.9},
       {0.09, 0.9, 0.08, 0.7, 0.06, 0.5, 0.04, 0.3, 0.02, 0.1},
       {0.19, 0.19, 0.28, 0.37, 0.46, 0.55, 0.64, 0.73, 0.82, 0.91}},
      {"S4",
       {0.02, 0.04, 0.04, 0.5, 0.06, 0.05, 0.7, 0.8, 0.9, 0.9},
       {0.03, 0.03, 0.04, 0.4, 0.05, 0.06, 0.6, 0.7, 0.8, 0.9},
       {0.46, 0.614, 0.55, 0.6, 0.591, 0.509, 0.585, 0.58, 0.577, 0.55}},
  }};
  return tables;
}

const ScenarioTable& builtin_scenario(std::string_view name) {
  for (const auto& t : builtin_scenarios()) {
    if (t.name == name) return t;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "' (expected S1, S2, S3 or S4)");
}

numkit::DenseVector draw_theta_star(std::size_t d, std::uint64_t seed) {
  const numkit::CounterRng rng(seed);
  numkit::DenseVector theta(d);
  for (std::size_t j = 0; j < d; ++j) theta[j] = rng.uniform(numkit::Purpose::theta_star, 0, 0, j);
  const double n = numkit::norm2(theta);
  if (n > 1.0) {
    for (std::size_t j = 0; j < d; ++j) theta[j] /= n;
  }
  return theta;
}

namespace {
ScenarioConfig assemble(std::string name, std::vector<ChannelSpec> channels, std::size_t M,
                        std::size_t T, std::size_t d, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.name = std::move(name);
  cfg.channels = std::move(channels);
  cfg.M = M;
  cfg.d = d;
  cfg.context_scale = d > 0 ? 1.0 / std::sqrt(static_cast<double>(d)) : 0.0;
  cfg.theta_star = draw_theta_star(d, seed);
  cfg.horizon = T;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}
}  // namespace

ScenarioConfig load_scenario(std::string_view name, std::size_t M, std::size_t T, std::size_t d,
                             std::uint64_t seed) {
  const ScenarioTable& table = builtin_scenario(name);
  std::vector<ChannelSpec> channels;
  for (std::size_t k = 0; k < table.p01.size(); ++k) {
    channels.push_back({table.p01[k], table.p10[k], 1.0, 0.1});
  }
  return assemble(std::string(name), std::move(channels), M, T, d, seed);
}

ScenarioConfig parse_scenario_text(std::string_view text, std::size_t M, std::size_t T,
                                   std::size_t d, std::uint64_t seed) {
  std::string name = "custom";
  double h_good = 1.0;
  double h_bad = 0.1;
  std::vector<ChannelSpec> channels;
  std::string section;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ConfigError("scenario file line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "scenario" && section != "channels") fail("unknown section [" + section + "]");
      continue;
    }
    if (section == "scenario") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected key = value");
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      try {
        if (key == "name") {
          name = value;
        } else if (key == "h_good") {
          h_good = std::stod(value);
        } else if (key == "h_bad") {
          h_bad = std::stod(value);
        } else {
          fail("unknown key '" + key + "'");
        }
      } catch (const std::invalid_argument&) {
        fail("bad number '" + value + "'");
      }
    } else if (section == "channels") {
      std::istringstream fields(line);
      std::size_t k = 0;
      double p01 = 0.0;
      double p10 = 0.0;
      std::string extra;
      if (!(fields >> k >> p01 >> p10) || (fields >> extra)) fail("expected 'k p01 p10'");
      if (k != channels.size() + 1) fail("channels must be numbered 1..K in order");
      channels.push_back({p01, p10, 0.0, 0.0});
    } else {
      fail("content outside a section");
    }
  }
  for (auto& c : channels) {
    c.h_good = h_good;
    c.h_bad = h_bad;
  }
  return assemble(std::move(name), std::move(channels), M, T, d, seed);
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path, std::size_t M, std::size_t T,
                                  std::size_t d, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), M, T, d, seed);
}

}  // namespace osa::env
