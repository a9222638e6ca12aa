#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace osa::numkit {

/// Sequential random stream identified by (seed, stream id). Equal pairs give
/// equal draw sequences; distinct ids are seeded through std::seed_seq so the
/// streams do not overlap in practice.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1).
  double uniform();
  double normal(double mean, double stddev);
  // Uniform on {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Purposes for counter-based draws. Keeping them distinct makes the
/// environment's randomness independent of how many draws a policy makes.
enum class Purpose : std::uint64_t {
  initial_state = 1,
  transition = 2,
  context = 3,
  theta_star = 4,
  noise = 5,
  policy = 6,
  network = 7,
};

/// Stateless draws keyed by (seed, purpose, channel, time, slot).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(Purpose purpose, std::uint64_t channel, std::uint64_t time,
                     std::uint64_t slot = 0) const;
  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform(Purpose purpose, std::uint64_t channel, std::uint64_t time,
                 std::uint64_t slot = 0) const;
  // Standard normal via Box-Muller over two keyed uniforms.
  double standard_normal(Purpose purpose, std::uint64_t channel, std::uint64_t time) const;

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace osa::numkit
