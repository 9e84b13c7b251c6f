#include "cbfl/domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cbfl {

namespace {

void require(bool ok, const char* key, const char* message) {
  if (!ok) throw ValidationError(key, message);
}

bool positive(double v) { return v > 0.0; }  // false for NaN
bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

SystemParams validate_params(const SystemParams& p) {
  require(positive_finite(p.lambda), "lambda", "lambda must be > 0");
  require(positive_finite(p.mu), "mu", "mu must be > 0");
  require(p.lambda < p.mu, "lambda", "lambda must be < mu");
  require(p.f >= 0, "f", "f must be >= 0");
  require(p.n_peers == 3 * p.f + 1, "n_peers", "n_peers must equal 3f+1");
  require(p.n_block >= 1, "n_block", "n_block must be >= 1");
  require(positive(p.tau), "tau", "tau must be > 0");
  require(positive_finite(p.delta_m), "delta_m", "delta_m must be > 0");
  require(positive_finite(p.delta_d), "delta_d", "delta_d must be > 0");
  require(positive_finite(p.h), "h", "h must be > 0");
  require(positive_finite(p.f_c), "f_c", "f_c must be > 0");
  require(positive_finite(p.w_up), "w_up", "w_up must be > 0");
  require(positive_finite(p.w_dn), "w_dn", "w_dn must be > 0");
  require(positive_finite(p.gamma_up), "gamma_up", "gamma_up must be > 0");
  require(positive_finite(p.gamma_dn), "gamma_dn", "gamma_dn must be > 0");
  require(p.beta >= 0.0 && std::isfinite(p.beta), "beta", "beta must be >= 0");
  require(positive(p.epsilon), "epsilon", "epsilon must be > 0");
  require(p.e0 >= 0.0 && p.e0 <= 1.0, "e0", "e0 must lie in [0,1]");
  require(p.t_max >= 0, "t_max", "t_max must be >= 0");
  return p;
}

void check_sample(const Sample& s) {
  if (s.y != 1 && s.y != -1) throw Error("sample label must be -1 or +1");
  for (double v : s.x) {
    if (!std::isfinite(v)) throw Error("sample features must be finite");
  }
}

LocalUpdateTx make_tx(std::uint32_t enterprise_id, Vector weights,
                      Vector shared_gradient, std::uint64_t n_samples,
                      double created_at) {
  if (weights.size() != shared_gradient.size()) {
    throw DimensionError("tx weights and gradient differ in dimension");
  }
  if (n_samples == 0) throw Error("tx n_samples must be >= 1");
  LocalUpdateTx tx{enterprise_id, std::move(weights), std::move(shared_gradient),
                   n_samples, created_at, 0};
  tx.digest = tx_digest(tx);
  return tx;
}

LocalUpdateTx restamp(LocalUpdateTx tx, double created_at) {
  tx.created_at = created_at;
  tx.digest = tx_digest(tx);
  return tx;
}

Block::Block(std::vector<LocalUpdateTx> txs, double sealed_at,
             double header_bits, double tx_bits)
    : txs_(std::move(txs)),
      sealed_at_(sealed_at),
      header_bits_(header_bits),
      tx_bits_(tx_bits) {
  if (txs_.empty()) throw Error("block must contain at least one tx");
  std::stable_sort(txs_.begin(), txs_.end(),
                   [](const LocalUpdateTx& a, const LocalUpdateTx& b) {
                     return a.created_at < b.created_at;
                   });
}

Block Block::seal(const SystemParams& p, std::vector<LocalUpdateTx> txs,
                  double sealed_at) {
  if (txs.size() > static_cast<std::size_t>(p.n_block)) {
    throw Error("block exceeds n_block txs");
  }
  return Block(std::move(txs), sealed_at, p.h, p.delta_m);
}

namespace {

constexpr std::array<std::string_view, 11> kComponentNames = {
    "t_local",  "t_up",     "t_preprepare", "t_prepare",
    "t_commit", "t_dn",     "t_global",     "t_update",
    "t_commun", "t_consensus", "t_total"};

}  // namespace

std::span<const std::string_view> latency_component_names() {
  return kComponentNames;
}

double latency_component(const LatencyBreakdown& l, std::string_view name) {
  if (name == "t_local") return l.t_local;
  if (name == "t_up") return l.t_up;
  if (name == "t_preprepare") return l.t_preprepare;
  if (name == "t_prepare") return l.t_prepare;
  if (name == "t_commit") return l.t_commit;
  if (name == "t_dn") return l.t_dn;
  if (name == "t_global") return l.t_global;
  if (name == "t_update") return l.t_update();
  if (name == "t_commun") return l.t_commun();
  if (name == "t_consensus") return l.t_consensus();
  if (name == "t_total") return l.t_total();
  throw Error("unknown latency component '" + std::string(name) + "'");
}

const ComponentStats& ExperimentStats::component(std::string_view name) const {
  for (const auto& c : components) {
    if (c.name == name) return c;
  }
  throw Error("no component '" + std::string(name) + "' in experiment stats");
}

}  // namespace cbfl
