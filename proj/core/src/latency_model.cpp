#include "cbfl/latency_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cbfl::model {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be > 0");
  }
}

void require_stable(double lambda, double mu) {
  require_positive(lambda, "lambda");
  require_positive(mu, "mu");
  if (!(lambda < mu)) throw DomainError("lambda must be < mu");
}

double capacity(double w, double gamma) {
  require_positive(w, "bandwidth");
  require_positive(gamma, "snr");
  const double c = w * std::log2(1.0 + gamma);
  if (c < 1e-12) throw DomainError("channel capacity below 1e-12 bit/s");
  return c;
}

}  // namespace

double t_local_update(double delta_d, double n_i, double f_c) {
  require_positive(delta_d, "delta_d");
  require_positive(n_i, "n_i");
  require_positive(f_c, "f_c");
  return delta_d * n_i / f_c;
}

double t_global_update(double delta_m, double n_block, double f_c) {
  require_positive(delta_m, "delta_m");
  require_positive(n_block, "n_block");
  require_positive(f_c, "f_c");
  return delta_m * n_block / f_c;
}

double t_update(const SystemParams& p, double n_i) {
  return t_local_update(p.delta_d, n_i, p.f_c) + t_global_update(p.delta_m, p.n_block, p.f_c);
}

double t_upload(double delta_m, double w_up, double gamma_up) {
  require_positive(delta_m, "delta_m");
  return delta_m / capacity(w_up, gamma_up);
}

double t_download(double h, double b, double delta_m, double w_dn, double gamma_dn) {
  require_positive(h, "h");
  if (!(b >= 1.0)) throw DomainError("b must be >= 1");
  require_positive(delta_m, "delta_m");
  return (h + b * delta_m) / capacity(w_dn, gamma_dn);
}

double t_commun(const SystemParams& p, double b) {
  return t_upload(p.delta_m, p.w_up, p.gamma_up) +
         t_download(p.h, b, p.delta_m, p.w_dn, p.gamma_dn);
}

double t_preprepare(double b, double lambda, double mu) {
  require_stable(lambda, mu);
  if (!(b >= 1.0)) throw DomainError("b must be >= 1");
  return b / (mu - lambda);
}

double t_prepare_phase(int f, double lambda, double mu) {
  require_positive(lambda, "lambda");
  require_positive(mu, "mu");
  if (f < 0) throw DomainError("f must be >= 0");
  const double two_f = 2.0 * f;
  return two_f / lambda + (two_f + 1.0) / mu;
}

double t_consensus(double b, int f, double lambda, double mu) {
  return t_preprepare(b, lambda, mu) + 2.0 * t_prepare_phase(f, lambda, mu);
}

double t_consensus(const SystemParams& p, double b) {
  return t_consensus(b, p.f, p.lambda, p.mu);
}

double t_consensus_closed_form(double b, int f, double lambda, double mu) {
  require_stable(lambda, mu);
  if (f < 0) throw DomainError("f must be >= 0");
  const double four_f = 4.0 * f;
  return ((b - four_f) * lambda + four_f * mu) / (lambda * (mu - lambda)) +
         (four_f + 2.0) / mu;
}

double t_consensus_derivative(double b, int f, double lambda, double mu) {
  require_stable(lambda, mu);
  const double ff = static_cast<double>(f);
  const double gap = mu - lambda;
  return ((b - 4.0 * ff) * lambda * lambda + 8.0 * ff * mu * lambda - 4.0 * ff * mu * mu) /
         (lambda * lambda * gap * gap);
}

double t_consensus_second_derivative(double b, int f, double lambda, double mu) {
  require_stable(lambda, mu);
  const double gap = mu - lambda;
  return 2.0 * b / (gap * gap * gap) + 8.0 * f / (lambda * lambda * lambda);
}

AnalyticBreakdown t_total(const SystemParams& p, double n_i, double b) {
  AnalyticBreakdown out;
  out.b = b;
  out.t_local = t_local_update(p.delta_d, n_i, p.f_c);
  out.t_global = t_global_update(p.delta_m, p.n_block, p.f_c);
  out.t_up = t_upload(p.delta_m, p.w_up, p.gamma_up);
  out.t_dn = t_download(p.h, b, p.delta_m, p.w_dn, p.gamma_dn);
  out.t_preprepare = t_preprepare(b, p.lambda, p.mu);
  out.t_prepare = t_prepare_phase(p.f, p.lambda, p.mu);
  out.t_commit = out.t_prepare;
  return out;
}

double optimal_lambda(int f, int n_block, double mu) {
  require_positive(mu, "mu");
  if (f < 1) throw DomainError("optimal lambda needs f >= 1");
  if (n_block == 4 * f) throw DomainError("degenerate denominator: n_block == 4f");
  const double ff = static_cast<double>(f);
  const double nb = static_cast<double>(n_block);
  if (nb < 0.0) throw DomainError("n_block must be >= 0");
  const double root = (-8.0 * ff * mu + 4.0 * mu * std::sqrt(ff * nb)) / (2.0 * (nb - 4.0 * ff));
  if (!(root > 0.0 && root < mu)) {
    throw DomainError("optimal rate outside stable region");
  }
  return root;
}

GridArgmin argmin_consensus_grid(int f, int n_block, double mu, double grid_step) {
  GridArgmin out;
  if (!(grid_step > 0.0) || !(mu > 2.0 * grid_step)) return out;
  const double b = static_cast<double>(n_block);
  const auto last = static_cast<std::size_t>(std::floor(mu / grid_step + 1e-9)) - 1;

  double prev2 = 0.0, prev1 = 0.0;
  out.min_second_difference = INFINITY;
  out.value = INFINITY;
  for (std::size_t k = 1; k <= last; ++k) {
    const double lambda = static_cast<double>(k) * grid_step;
    if (!(lambda < mu)) break;
    const double v = t_consensus(b, f, lambda, mu);
    if (v < out.value) {
      out.value = v;
      out.lambda = lambda;
    }
    if (out.points >= 2) {
      out.min_second_difference = std::min(out.min_second_difference, v - 2.0 * prev1 + prev2);
    }
    prev2 = prev1;
    prev1 = v;
    ++out.points;
  }
  out.convex = out.points >= 3 && out.min_second_difference >= -1e-9;
  return out;
}

}  // namespace cbfl::model
