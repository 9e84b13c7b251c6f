#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cbfl/domain.hpp"
#include "cbfl/random.hpp"

// Learning mathematics of one CBFL cycle.
//
// The per-sample loss is log(1 + exp(y * w.x)), taken literally (note the
// positive exponent). Minimizing it drives y * w.x towards -inf, so the
// matching decision rule is -sign(w.x); see classify().
namespace cbfl {

struct GlobalModel {
  Vector weights;
  // Anchor gradient for the next SVRG cycle. Empty before the first cycle, in
  // which case each enterprise bootstraps it from its own data.
  Vector full_gradient;
  std::size_t cycle = 0;

  bool operator==(const GlobalModel&) const = default;
};

struct Dataset {
  std::vector<Sample> samples;
  std::uint32_t owner = 0;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  // Feature dimension; 0 for an empty set.
  std::size_t dim() const noexcept { return samples.empty() ? 0 : samples.front().x.size(); }
};

// Throws when d is empty, ragged, or holds an invalid sample.
void check_dataset(const Dataset& d);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

// Numerically safe logistic function.
double sigmoid(double z);

double logistic_loss(std::span<const double> w, const Sample& s);

// y * x * sigmoid(y * w.x)
Vector sample_gradient(std::span<const double> w, const Sample& s);

Vector average_gradient(std::span<const double> w, const Dataset& d);

// (1/N_D) * sum of logistic_loss over every sample of every dataset.
double empirical_loss(std::span<const double> w, std::span<const Dataset> parts);

// sum_i (N_i / N_D) * shared_gradient_i
Vector global_full_gradient(std::span<const LocalUpdateTx> txs);

// t_max SVRG steps from g.weights with step factor beta / N_i:
//   w <- w - (beta/N_i) * ([grad_k(w) - grad_k(g.weights)] + g.full_gradient)
// k drawn uniformly from d per step. The returned tx carries the final iterate
// and the local average gradient there; created_at is 0.
LocalUpdateTx svrg_local_cycle(const GlobalModel& g, const Dataset& d,
                               const SystemParams& p, RandomStream& rng);

// w_prev + sum_i (N_i / N_D) * (w_i - w_prev)
Vector aggregate_global(std::span<const double> w_prev,
                        std::span<const LocalUpdateTx> txs);

// -sign(w.x) with sign(0) = +1.
int classify(std::span<const double> w, std::span<const double> x);

double accuracy(std::span<const double> w, const Dataset& test);

struct Verdict {
  bool accepted = false;
  bool digest_ok = false;
  double accuracy = 0.0;
};

// Accepts iff the digest checks out and accuracy >= e0 (inclusive).
Verdict verify_update(const LocalUpdateTx& tx, const Dataset& test, double e0);

// |w - w_prev|_2 <= eps
bool has_converged(std::span<const double> w, std::span<const double> w_prev, double eps);

}  // namespace cbfl
