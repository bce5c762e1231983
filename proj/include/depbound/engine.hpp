#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "depbound/process.hpp"

namespace depbound {

// Inputs of the bounded-difference tail bound. The certificate vector c
// defaults to the all-1/n vector when left empty.
struct BoundParams {
  std::size_t n = 1;
  double t = 0.0;
  double alpha = kPosInf;  // Renyi order, > 1 or +inf
  std::vector<double> c;

  double beta() const;      // conjugate alpha/(alpha-1); 1 at alpha = inf
  double sum_c_sq() const;  // sum of squared certificate entries
  void validate() const;
};

struct BoundReport {
  std::string method;
  std::size_t n = 0;
  double t = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double sum_c_sq = 0.0;
  // log of the dependency multiplier: (1/alpha) log H_alpha at finite alpha,
  // the log ess-sup of the density ratio at alpha = inf.
  double log_mult = 0.0;
  double log_bound = 0.0;  // natural log of the tail bound
  double threshold = 0.0;  // t beyond which the exponent beats the multiplier
  bool trivial = false;    // bound >= 1
  std::string centering = "product-mean";
  std::vector<std::string> notes;
};

// Change-of-measure event bound: log P_dep(A) <= (1/beta) log P_indep(A) +
// log_mult, with log_mult as in BoundReport.
double general_event_bound_log(double log_p_indep, double log_mult, double alpha);

// Bounded-difference deviation bound around the product-measure mean:
//   bound = 2^{1/beta} exp(-2 t^2 / (beta sum c^2)) * mult.
BoundReport mcdiarmid_dep_bound(const BoundParams& params, double log_mult);

// t at which the Gaussian exponent equals the dependency multiplier:
// sqrt(beta sum c^2 log_mult / 2); 0 for multipliers <= 1.
double threshold_t(const BoundParams& params, double log_mult);

enum class ChainRoute { Tensor, Hyper, Sdpi };
std::string route_name(ChainRoute r);

// Tail bound for a Markov chain via one of three dependency-multiplier
// routes: per-step tensorisation, hypercontractive backward-channel norms,
// or the strong-data-processing closed form (binary symmetric chains only).
BoundReport markov_chain_bound(const ProcessSpec& proc, const BoundParams& params,
                               ChainRoute route);

// Grid {1 + 10^{k/4} : k = -12..24} plus +inf.
std::vector<double> alpha_grid();

struct AlphaChoice {
  double alpha = 0.0;
  BoundReport report;
  std::vector<std::pair<double, double>> grid;  // (alpha, log_bound)
};

// Minimizes log_bound over alpha_grid(); ties resolve toward the larger
// alpha. `eval` must yield a BoundReport at the given order.
AlphaChoice optimize_alpha(const std::function<BoundReport(double)>& eval);

struct MeanGap {
  double value = 0.0;  // |E_dep f - E_prod f| bound
  double t0 = 0.0;     // split point used in the tail integral
  bool degenerate = false;  // multiplier <= 1: laws agree on means
};

// Mean-gap bound: t0 + 2^{1/beta} beta sum c^2 / (4 t0) at the threshold
// split point t0 = threshold_t.
MeanGap mean_gap_bound(const BoundParams& params, double log_mult);

struct MedianShift {
  double r0 = 0.0;    // smallest r with h(r) <= 1/2
  double hbar = 0.0;  // integral of h over [0, inf)
  bool no_half_point = false;
};

// Solves for the half-point and the mean-median integral of a nonincreasing
// log tail profile log_h; doubling search capped at r_cap.
MedianShift median_shift(const std::function<double(double)>& log_h, double r_cap = 1e6);

// Packaged constant log C' = log C + coef * s^p and its median inflation
// factor kappa_p = 2^{1-p}.
double packaged_constant_log(double log_c, double coef, double p, double s);
double kappa_p(double p);

// Median-centered closed form at alpha = inf, c = all-1/n:
//   log bound = -ln 2 - 2 n t^2 + 2 t sqrt(2 n (ln 4 + c_n)),
// c_n the log dependency multiplier.
double median_bound_general_log(std::size_t n, double t, double c_n);

}  // namespace depbound
