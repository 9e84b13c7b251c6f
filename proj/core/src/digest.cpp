#include <bit>
#include <cstring>

#include "cbfl/domain.hpp"

namespace cbfl {

namespace {

void put_u64(std::vector<std::byte>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffu));
  }
}

void put_f64(std::vector<std::byte>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

}  // namespace

// Layout: id(u32) | dim(u64) | weights(f64 x dim) | grad dim(u64) |
// gradient(f64 x dim) | n_samples(u64) | created_at(f64), all little-endian.
std::vector<std::byte> canonical_payload(const LocalUpdateTx& tx) {
  std::vector<std::byte> out;
  out.reserve(4 + 8 * (4 + tx.weights.size() + tx.shared_gradient.size()));
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::byte>((tx.enterprise_id >> (8 * i)) & 0xffu));
  }
  put_u64(out, tx.weights.size());
  for (double w : tx.weights) put_f64(out, w);
  put_u64(out, tx.shared_gradient.size());
  for (double g : tx.shared_gradient) put_f64(out, g);
  put_u64(out, tx.n_samples);
  put_f64(out, tx.created_at);
  return out;
}

std::uint64_t fnv1a64(std::span<const std::byte> bytes) {
  constexpr std::uint64_t kOffset = 0xcbf29ce484222325ull;
  constexpr std::uint64_t kPrime = 0x100000001b3ull;
  std::uint64_t h = kOffset;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= kPrime;
  }
  return h;
}

std::uint64_t tx_digest(const LocalUpdateTx& tx) {
  const auto bytes = canonical_payload(tx);
  return fnv1a64(bytes);
}

bool digest_valid(const LocalUpdateTx& tx) { return tx_digest(tx) == tx.digest; }

}  // namespace cbfl
