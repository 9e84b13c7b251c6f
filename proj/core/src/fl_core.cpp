#include "cbfl/fl_core.hpp"

#include <cmath>

namespace cbfl {

namespace {

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

void require_txs(std::span<const LocalUpdateTx> txs, const char* what) {
  if (txs.empty()) throw Error(std::string(what) + ": no txs");
  const std::size_t n = txs.front().weights.size();
  for (const auto& tx : txs) {
    require_dim(tx.weights.size(), n, what);
    require_dim(tx.shared_gradient.size(), n, what);
    if (tx.n_samples == 0) throw Error(std::string(what) + ": tx with zero samples");
  }
}

// acc += scale * v
void axpy(Vector& acc, double scale, std::span<const double> v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * v[i];
}

}  // namespace

void check_dataset(const Dataset& d) {
  if (d.empty()) throw Error("dataset is empty");
  const std::size_t n = d.dim();
  for (const auto& s : d.samples) {
    require_dim(s.x.size(), n, "dataset");
    check_sample(s);
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_dim(a.size(), b.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_loss(std::span<const double> w, const Sample& s) {
  const double z = s.y * dot(w, s.x);
  if (z > 30.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

Vector sample_gradient(std::span<const double> w, const Sample& s) {
  const double z = s.y * dot(w, s.x);
  const double scale = s.y * sigmoid(z);
  Vector g(s.x.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = scale * s.x[i];
  return g;
}

Vector average_gradient(std::span<const double> w, const Dataset& d) {
  if (d.empty()) throw Error("average_gradient: empty dataset");
  Vector acc(w.size(), 0.0);
  for (const auto& s : d.samples) {
    require_dim(s.x.size(), w.size(), "average_gradient");
    const double scale = s.y * sigmoid(s.y * dot(w, s.x));
    axpy(acc, scale, s.x);
  }
  const double inv = 1.0 / static_cast<double>(d.size());
  for (double& v : acc) v *= inv;
  return acc;
}

double empirical_loss(std::span<const double> w, std::span<const Dataset> parts) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& d : parts) {
    for (const auto& s : d.samples) total += logistic_loss(w, s);
    count += d.size();
  }
  if (count == 0) throw Error("empirical_loss: no samples");
  return total / static_cast<double>(count);
}

Vector global_full_gradient(std::span<const LocalUpdateTx> txs) {
  require_txs(txs, "global_full_gradient");
  double n_total = 0.0;
  for (const auto& tx : txs) n_total += static_cast<double>(tx.n_samples);
  Vector acc(txs.front().shared_gradient.size(), 0.0);
  for (const auto& tx : txs) {
    axpy(acc, static_cast<double>(tx.n_samples) / n_total, tx.shared_gradient);
  }
  return acc;
}

LocalUpdateTx svrg_local_cycle(const GlobalModel& g, const Dataset& d,
                               const SystemParams& p, RandomStream& rng) {
  if (d.empty()) throw Error("svrg_local_cycle: empty dataset");
  const std::size_t n = g.weights.size();
  require_dim(g.full_gradient.size(), n, "svrg_local_cycle full gradient");
  require_dim(d.dim(), n, "svrg_local_cycle dataset");

  const double n_i = static_cast<double>(d.size());
  const double step = p.beta / n_i;
  const std::size_t iterations =
      p.t_max > 0 ? static_cast<std::size_t>(p.t_max) : d.size();

  Vector w = g.weights;
  for (std::size_t t = 0; t < iterations; ++t) {
    const Sample& s = d.samples[rng.index(d.size())];
    // Both per-sample gradients are multiples of x, so fold them into one axpy.
    const double coef_now = s.y * sigmoid(s.y * dot(w, s.x));
    const double coef_anchor = s.y * sigmoid(s.y * dot(g.weights, s.x));
    const double c = coef_now - coef_anchor;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] -= step * (c * s.x[i] + g.full_gradient[i]);
    }
  }
  for (double v : w) {
    if (!std::isfinite(v)) {
      throw DivergenceError("SVRG iterate is not finite; beta is too large");
    }
  }
  Vector grad = average_gradient(w, d);
  return make_tx(d.owner, std::move(w), std::move(grad), d.size(), 0.0);
}

Vector aggregate_global(std::span<const double> w_prev,
                        std::span<const LocalUpdateTx> txs) {
  require_txs(txs, "aggregate_global");
  require_dim(txs.front().weights.size(), w_prev.size(), "aggregate_global");
  // A lone tx replaces the model outright (no w_prev + (w_1 - w_prev) rounding).
  if (txs.size() == 1) return txs.front().weights;
  double n_total = 0.0;
  for (const auto& tx : txs) n_total += static_cast<double>(tx.n_samples);
  Vector delta(w_prev.size(), 0.0);
  for (const auto& tx : txs) {
    const double share = static_cast<double>(tx.n_samples) / n_total;
    for (std::size_t i = 0; i < delta.size(); ++i) {
      delta[i] += share * (tx.weights[i] - w_prev[i]);
    }
  }
  Vector out(w_prev.begin(), w_prev.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += delta[i];
  return out;
}

int classify(std::span<const double> w, std::span<const double> x) {
  const double score = dot(w, x);
  const int sign = score >= 0.0 ? 1 : -1;
  return -sign;
}

double accuracy(std::span<const double> w, const Dataset& test) {
  if (test.empty()) throw Error("accuracy: empty test set");
  std::size_t correct = 0;
  for (const auto& s : test.samples) {
    if (classify(w, s.x) == s.y) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

Verdict verify_update(const LocalUpdateTx& tx, const Dataset& test, double e0) {
  Verdict v;
  v.digest_ok = digest_valid(tx);
  v.accuracy = accuracy(tx.weights, test);
  v.accepted = v.digest_ok && v.accuracy >= e0;
  return v;
}

bool has_converged(std::span<const double> w, std::span<const double> w_prev, double eps) {
  require_dim(w.size(), w_prev.size(), "has_converged");
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = w[i] - w_prev[i];
    acc += d * d;
  }
  return std::sqrt(acc) <= eps;
}

}  // namespace cbfl
