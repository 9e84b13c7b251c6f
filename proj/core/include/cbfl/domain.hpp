#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbfl/errors.hpp"

namespace cbfl {

using Vector = std::vector<double>;

// Every symbol of the latency model plus the learning hyperparameters.
//
// Units: seconds, tx/second, messages/second, bits, cycles/second, Hz.
// Signal-to-noise ratios are linear. The defaults are implementation choices
// (see README "Configuration"); only validate_params() decides what is legal.
struct SystemParams {
  double lambda = 100.0;   // tx arrival rate
  double mu = 300.0;       // peer service rate
  int n_peers = 4;         // N_P
  int f = 1;               // faulty peers, N_P = 3f + 1
  int n_block = 100;       // N_B, max txs per block
  double tau = 60.0;       // max block waiting time
  double delta_m = 1e4;    // tx size
  double delta_d = 1e4;    // data sample size
  double h = 1e3;          // block header size
  double f_c = 1e9;        // clock speed
  double w_up = 1e6;
  double w_dn = 1e7;
  double gamma_up = 3.0;
  double gamma_dn = 15.0;
  double beta = 1.0;       // SVRG step numerator, step = beta / N_i
  double epsilon = 1e-2;   // stop when |w - w_prev| <= epsilon
  double e0 = 0.0;         // verification accuracy threshold
  int t_max = 0;           // SVRG inner iterations; 0 means one epoch (N_i)

  bool operator==(const SystemParams&) const = default;
};

// Returns p unchanged or throws ValidationError naming the first violated
// constraint.
SystemParams validate_params(const SystemParams& p);

struct Sample {
  Vector x;
  int y = 1;  // -1 or +1

  bool operator==(const Sample&) const = default;
};

// Throws if y is not +-1 or x carries a nonfinite value.
void check_sample(const Sample& s);

// One local model update as submitted by an enterprise.
struct LocalUpdateTx {
  std::uint32_t enterprise_id = 0;
  Vector weights;
  Vector shared_gradient;
  std::uint64_t n_samples = 1;
  double created_at = 0.0;
  std::uint64_t digest = 0;

  bool operator==(const LocalUpdateTx&) const = default;
};

// Canonical little-endian byte image of everything except the digest field.
std::vector<std::byte> canonical_payload(const LocalUpdateTx& tx);

// 64-bit FNV-1a. Any single-byte change of the input changes the result.
std::uint64_t fnv1a64(std::span<const std::byte> bytes);

// Digest over canonical_payload(tx); tx.digest itself is ignored.
std::uint64_t tx_digest(const LocalUpdateTx& tx);

bool digest_valid(const LocalUpdateTx& tx);

// Builds a tx and stamps its digest. Throws DimensionError when the two
// vectors differ in length and Error when n_samples is zero.
LocalUpdateTx make_tx(std::uint32_t enterprise_id, Vector weights,
                      Vector shared_gradient, std::uint64_t n_samples,
                      double created_at);

// Changes created_at and recomputes the digest.
LocalUpdateTx restamp(LocalUpdateTx tx, double created_at);

// An ordered batch of verified txs. Size accounting is derived, never stored.
class Block {
 public:
  // Sorts txs by created_at (stable). Throws when txs is empty.
  Block(std::vector<LocalUpdateTx> txs, double sealed_at, double header_bits,
        double tx_bits);

  // Same, additionally enforcing |txs| <= N_B.
  static Block seal(const SystemParams& p, std::vector<LocalUpdateTx> txs,
                    double sealed_at);

  const std::vector<LocalUpdateTx>& txs() const noexcept { return txs_; }
  std::size_t size() const noexcept { return txs_.size(); }
  double sealed_at() const noexcept { return sealed_at_; }
  double header_bits() const noexcept { return header_bits_; }
  double tx_bits() const noexcept { return tx_bits_; }
  // h + delta_m * |txs|
  double size_bits() const noexcept {
    return header_bits_ + tx_bits_ * static_cast<double>(txs_.size());
  }

  bool operator==(const Block&) const = default;

 private:
  std::vector<LocalUpdateTx> txs_;
  double sealed_at_;
  double header_bits_;
  double tx_bits_;
};

// Per-cycle delays at the observed enterprise. Aggregates are computed, so the
// sum identities hold by construction.
struct LatencyBreakdown {
  double t_local = 0.0;
  double t_up = 0.0;
  double t_preprepare = 0.0;
  double t_prepare = 0.0;
  double t_commit = 0.0;
  double t_dn = 0.0;
  double t_global = 0.0;

  double t_update() const noexcept { return t_local + t_global; }
  double t_commun() const noexcept { return t_up + t_dn; }
  double t_consensus() const noexcept {
    return t_preprepare + t_prepare + t_commit;
  }
  double t_total() const noexcept {
    return t_update() + t_commun() + t_consensus();
  }

  bool operator==(const LatencyBreakdown&) const = default;
};

// Component names in reporting order: the seven measured delays followed by
// t_update, t_commun, t_consensus, t_total.
std::span<const std::string_view> latency_component_names();

// Looks a component up by name; throws Error for an unknown name.
double latency_component(const LatencyBreakdown& l, std::string_view name);

struct ComponentStats {
  std::string name;
  double mean = 0.0;
  std::optional<double> std_err;  // absent when replications == 1
  double analytic = 0.0;
  std::optional<double> rel_error;  // absent when analytic == 0

  bool operator==(const ComponentStats&) const = default;
};

struct ExperimentStats {
  std::string config_id;
  std::size_t replications = 0;
  double mean_b = 0.0;  // average realized batch size
  std::vector<ComponentStats> components;

  const ComponentStats& component(std::string_view name) const;

  bool operator==(const ExperimentStats&) const = default;
};

}  // namespace cbfl
