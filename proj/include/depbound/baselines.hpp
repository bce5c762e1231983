#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depbound/engine.hpp"
#include "depbound/process.hpp"

namespace depbound {

// Mixing-matrix bound for 1/n-Lipschitz (Hamming) functionals:
//   log bound = ln 2 - n t^2 / (2 M_n^2),
// M_n the largest row sum of the upper-triangular mixing matrix built from
// per-step contraction coefficients eta_k (k = 1..n-1, step X_k -> X_{k+1}).
BoundReport kontorovich_bound(std::size_t n, double t, const std::vector<double>& etas);
BoundReport kontorovich_bound_homog(std::size_t n, double t, double eta);
double kontorovich_mixing_norm(std::size_t n, const std::vector<double>& etas);

// Spectral bound for [a,b]-range-normalized empirical means of a stationary
// chain with (clamped) absolute spectral parameter lambda_r:
//   log bound = ln 2 - ((1 - lambda_r)/(1 + lambda_r)) 2 n t^2 / (b-a)^2.
BoundReport fan_bound(std::size_t n, double t, double lambda_r,
                      std::pair<double, double> range = {0.0, 1.0});

// Blow-up bound around an event E with log P(E) = log_pe for a contracting
// chain; a = 1 - (Dobrushin coefficient) must lie in (0, 1]:
//   log bound = -2 n (a t - sqrt(-log_pe / (2n)))^2.
// Throws NotContracting at a <= 0 and PreconditionT below the validity
// floor t <= sqrt(-log_pe / n) / a.
BoundReport marton_blowup_bound(std::size_t n, double t, double a, double log_pe);

struct CrossoverResult {
  std::string pair;
  double t_bar = 0.0;             // closed-form crossover threshold
  double t_bar_asymptotic = 0.0;  // n -> inf limit of the threshold
  double check_t = 0.0;           // 1.01 * t_bar, the verification point
  double log_ours_at_check = 0.0;
  double log_base_at_check = 0.0;
  bool verified = false;  // ours < base at check_t
};

// Closed-form thresholds beyond which the dependency-multiplier bound beats
// each baseline on the stationary binary symmetric chain with flip
// probability lambda; each result is verified a posteriori at 1.01 t_bar.
// Throws NoCrossover when the threshold formula degenerates.
CrossoverResult crossover_binary_kontorovich(double lambda, std::size_t n, double alpha);
CrossoverResult crossover_binary_fan(double lambda, std::size_t n);
CrossoverResult crossover_binary_marton(double lambda, std::size_t n);

// General-chain variants. log_step is the per-step log dependency multiplier
// (backward-channel norm plus worst marginal mass); lambda_r and m_n as in
// the corresponding baselines.
CrossoverResult crossover_general_fan(std::size_t n, double lambda_r, double log_step);
CrossoverResult crossover_general_kontorovich(std::size_t n, double m_n, double alpha,
                                              double log_norm, double min_log_p);

// Largest singular value of the upper-triangular dependence matrix
// Gamma_ij = sup TV(law(X_j.. | prefix, w), law(X_j.. | prefix, w')),
// enumerated exactly (n <= 6, TooLarge beyond).
double samson_matrix_norm(const ProcessSpec& proc, std::size_t n);

// Coupling-matrix baseline: intentionally absent (no finite-state recipe
// shipped here); always throws Unsupported.
[[noreturn]] void marton_coupling_bound();

}  // namespace depbound
