#include "osa/numkit/rng.hpp"

#include <cmath>
#include <numbers>

#include "osa/errors.hpp"

namespace osa::numkit {

namespace {
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform() { return to_unit(engine_()); }

double RngStream::normal(double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  return dist(engine_);
}

std::size_t RngStream::index(std::size_t n) {
  detail::require(n > 0, "RngStream::index: empty range");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

std::uint64_t CounterRng::bits(Purpose purpose, std::uint64_t channel, std::uint64_t time,
                               std::uint64_t slot) const {
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  h = splitmix64(h ^ channel);
  h = splitmix64(h ^ time);
  return splitmix64(h ^ slot);
}

double CounterRng::uniform(Purpose purpose, std::uint64_t channel, std::uint64_t time,
                           std::uint64_t slot) const {
  return to_unit(bits(purpose, channel, time, slot));
}

double CounterRng::standard_normal(Purpose purpose, std::uint64_t channel,
                                   std::uint64_t time) const {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform(purpose, channel, time, 0);
  const double u2 = uniform(purpose, channel, time, 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace osa::numkit
