#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "depbound/engine.hpp"
#include "depbound/process.hpp"

namespace depbound {

enum class Centering { ProductMean, JointMean };

// Closed-form deviation bound for the stationary binary symmetric chain with
// flip probability lambda:
//   log = (1/beta)(ln 2 - 2 n t^2 + (n-1) ln(2 kappa_alpha)),
//   kappa_alpha = ((1-lambda)^alpha + lambda^alpha)^{1/(alpha-1)},
// the alpha -> inf limit replacing kappa by max(lambda, 1-lambda).
BoundReport binary_chain_bound(double lambda, std::size_t n, double t, double alpha);

// Convenience builder: uniform-start binary symmetric chain.
ProcessSpec binary_chain(double lambda);

// Exact per-step Hellinger integral of the simple random walk,
//   H_alpha(P_{S_i | S_{i-1} = x} || P_{S_i}) =
//   2^{-alpha} (P_{S_i}(x+1)^{1-alpha} + P_{S_i}(x-1)^{1-alpha}).
LogValue ssrw_step_hellinger(std::size_t i, std::int64_t x, double alpha);

// Per-step extreme of log H over x in supp(S_{i-1}): exhaustive for
// i <= 64; boundary/central candidates beyond (the maximum is attained at
// the boundary, verified exhaustively in the tested range).
double ssrw_step_log_max(std::size_t i, double alpha);

// Walk-length closed-form bound with the worst-case dependency factor
// 2^{n(n-1)/(2 beta)}; joint-mean centering applies the 2 sqrt(n) shift
// (exact-enumeration multiplier when n <= 12).
BoundReport ssrw_bound(std::size_t n, double t, double alpha,
                       Centering centering = Centering::ProductMean);

// Conditional law of the next +/-1 coordinate of the full-history process
// given the prefix (x_0 = +1 included as the first entry).
Dist nonmarkov_conditional(std::span<const std::int64_t> prefix);

// Full-history bound at a fixed conjugate order beta > 1 (alpha-free
// dependency factor 2^{n-1}):
//   log = (1/beta) ln 2 - (2n/beta)(t^2 - ((n-1)/n)(beta ln 2 / 2)).
BoundReport nonmarkov_bound(std::size_t n, double t, double beta);
// Grid minimization over the conjugate order.
BoundReport nonmarkov_bound_best(std::size_t n, double t);

struct McmcReport {
  BoundReport ours;
  BoundReport fan;
  double log_c = 0.0;          // log of the burn-in constant
  double per_step_log = 0.0;   // per-step log dependency multiplier
  double lambda_r = 0.0;       // spectral parameter fed to the baseline
  double t_bar = 0.0;          // crossover threshold vs the baseline
};

// Time-average deviation bounds for a chain started from nu and run n0
// burn-in steps, functional values in [range.first, range.second].
McmcReport mcmc_bound(const Dist& nu, const Kernel& k, std::size_t n0, std::size_t n, double t,
                      double alpha, std::pair<double, double> range = {0.0, 1.0});

// Smallest burn-in n0 whose bound meets target_log_prob (monotone
// bisection); Unreachable when even the n0 -> inf floor misses the target.
std::size_t min_burnin(const Dist& nu, const Kernel& k, std::size_t n, double t, double alpha,
                       double target_log_prob, std::pair<double, double> range = {0.0, 1.0});

}  // namespace depbound
