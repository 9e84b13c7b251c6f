#include "cbfl/random.hpp"

#include <cmath>

#include "cbfl/errors.hpp"

namespace cbfl {

double RandomStream::uniform_open_closed() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RandomStream::index(std::size_t n) {
  if (n == 0) throw DomainError("index range must be nonempty");
  const std::uint64_t range = n;
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % range);
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

RandomStreams RandomStreams::derive(std::uint64_t master_seed, std::uint64_t replication) {
  const std::uint64_t base = splitmix64(splitmix64(master_seed) ^ splitmix64(~replication));
  return RandomStreams{
      RandomStream(splitmix64(base ^ 0x1ull)),
      RandomStream(splitmix64(base ^ 0x2ull)),
      RandomStream(splitmix64(base ^ 0x3ull)),
      RandomStream(splitmix64(base ^ 0x4ull)),
  };
}

double sample_exponential(double rate, RandomStream& stream) {
  if (!(rate > 0.0)) throw DomainError("exponential rate must be > 0");
  return -std::log(stream.uniform_open_closed()) / rate;
}

}  // namespace cbfl
