#pragma once

#include <cstdint>

#include "cbfl/domain.hpp"

// Closed-form one-cycle latency of CBFL.
//
// The batch size b is always supplied by the caller: the analytic model does
// not resolve the random N(tau). The optimal-rate functions assume b = N_B.
// Every function throws DomainError on inputs outside its domain.
namespace cbfl::model {

struct AnalyticBreakdown : LatencyBreakdown {
  double b = 1.0;
};

// delta_d * N_i / f_c
double t_local_update(double delta_d, double n_i, double f_c);
// delta_m * N_B / f_c
double t_global_update(double delta_m, double n_block, double f_c);
double t_update(const SystemParams& p, double n_i);

// delta_m / (W_up log2(1 + gamma_up)); capacities below 1e-12 bit/s are rejected.
double t_upload(double delta_m, double w_up, double gamma_up);
// (h + b delta_m) / (W_dn log2(1 + gamma_dn))
double t_download(double h, double b, double delta_m, double w_dn, double gamma_dn);
double t_commun(const SystemParams& p, double b);

// M/M/1 batching at the leader: b / (mu - lambda).
double t_preprepare(double b, double lambda, double mu);
// Quorum wait plus processing: 2f/lambda + (2f+1)/mu. Prepare and commit
// share this form.
double t_prepare_phase(int f, double lambda, double mu);
// Phase sum t_preprepare + 2 t_prepare_phase.
double t_consensus(const SystemParams& p, double b);
double t_consensus(double b, int f, double lambda, double mu);
// ((b - 4f) lambda + 4 f mu) / (lambda (mu - lambda)) + (4f + 2) / mu
double t_consensus_closed_form(double b, int f, double lambda, double mu);

// d t_consensus / d lambda in the factored form
// ((b - 4f) lambda^2 + 8 f mu lambda - 4 f mu^2) / (lambda^2 (mu - lambda)^2).
double t_consensus_derivative(double b, int f, double lambda, double mu);
// 2b / (mu - lambda)^3 + 8f / lambda^3
double t_consensus_second_derivative(double b, int f, double lambda, double mu);

AnalyticBreakdown t_total(const SystemParams& p, double n_i, double b);

// Minimizer of t_consensus over lambda for b = N_B:
//   (-8 f mu + 4 mu sqrt(f N_B)) / (2 (N_B - 4f)).
// Throws for f < 1, N_B == 4f ("degenerate denominator") and for a root
// outside (0, mu) ("optimal rate outside stable region").
double optimal_lambda(int f, int n_block, double mu);

struct GridArgmin {
  double lambda = 0.0;
  double value = 0.0;
  double min_second_difference = 0.0;
  bool convex = false;  // every second difference >= -1e-9
  std::size_t points = 0;
};

// Brute-force scan of t_consensus(b = N_B) on lambda = k * step,
// step <= lambda <= mu - step.
GridArgmin argmin_consensus_grid(int f, int n_block, double mu, double grid_step);

}  // namespace cbfl::model
