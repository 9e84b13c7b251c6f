#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "cbfl/errors.hpp"

namespace cbfl {

// Deterministic random stream. Only the raw mt19937_64 output is used, with
// the transforms implemented here, so draws are identical on every standard
// library (the std distributions are implementation-defined).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in (0, 1], 53-bit resolution.
  double uniform_open_closed();

  // Uniform in [0, 1).
  double uniform();

  // Uniform integer in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  // Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Independent substreams for one simulation run, all derived from a 64-bit
// master seed and a replication index.
struct RandomStreams {
  RandomStream arrivals;
  RandomStream services;
  RandomStream data;
  RandomStream faults;

  static RandomStreams derive(std::uint64_t master_seed, std::uint64_t replication = 0);
};

// -ln(u) / rate with u uniform in (0, 1]. Throws DomainError for rate <= 0.
double sample_exponential(double rate, RandomStream& stream);

}  // namespace cbfl
