#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "depbound/dist.hpp"
#include "depbound/rng.hpp"

namespace depbound {

// Row-stochastic transition kernel on integer-labeled states. Rows and
// columns share one ordered state set; row x is the conditional law K(.|x).
class Kernel {
 public:
  Kernel() = default;
  static Kernel from_rows(std::vector<std::int64_t> states, std::vector<Dist> rows);
  static Kernel from_linear(std::vector<std::int64_t> states,
                            const std::vector<std::vector<double>>& rows);
  static Kernel from_rational(std::vector<std::int64_t> states,
                              const std::vector<std::vector<Rational>>& rows);
  // Stay-probability convention: K(y|x) = eps when y == x.
  static Kernel binary_stay(const ParsedProb& eps);
  static Kernel binary_stay(double eps);
  // Flip-probability convention: K(y|x) = lambda when y != x.
  static Kernel binary_flip(const ParsedProb& lambda);
  static Kernel binary_flip(double lambda);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::int64_t>& states() const { return states_; }
  const Dist& row(std::size_t x) const { return rows_[x]; }
  const std::vector<Dist>& rows() const { return rows_; }
  double log_entry(std::size_t x, std::size_t y) const { return rows_[x].log_prob(y); }
  double entry(std::size_t x, std::size_t y) const { return rows_[x].prob(y); }
  bool has_exact() const;

  // Detects the doubly symmetric binary structure (2 states, symmetric rows);
  // returns the flip probability when present.
  std::optional<double> dsbs_flip() const;

  std::string str() const;

 private:
  std::vector<std::int64_t> states_;
  std::vector<Dist> rows_;
};

// Pushforward (mu K)(y) = sum_x mu(x) K(y|x). Exact when both sides carry
// rationals.
Dist apply_kernel(const Dist& mu, const Kernel& k);

// kappa-step kernel K^kappa.
Kernel k_step(const Kernel& k, unsigned kappa);

// Bayes backward channel w.r.t. input law mu: rows are indexed by the output
// state y and give the posterior over inputs,
//   K_back(x|y) = mu(x) K(y|x) / (mu K)(y).
// Requires mu K > 0 everywhere (ZeroMassState otherwise).
Kernel backward_channel(const Kernel& k, const Dist& mu);

// Dobrushin contraction coefficient: max TV distance between rows.
double dobrushin_tv(const Kernel& k);

struct NormResult {
  double value = 1.0;
  std::vector<double> maximizer;
  double spread = 0.0;  // disagreement among the top-quartile start values
};

// Operator norm sup_f ||Kf||_{L^alpha(mu)} / ||f||_{L^gamma(mu)} with
// (Kf)(x) = sum_y K(y|x) f(y). Multi-start projected ascent plus exhaustive
// sign patterns (<= 4 states) and a dense angle scan (2 states); throws
// ConvergenceFailure when the top-quartile start values spread > 1e-6.
NormResult operator_norm(const Kernel& k, const Dist& mu, double alpha, double gamma,
                         std::uint64_t seed = kDefaultSeed);

// Same, with separate input/output reference measures:
//   sup_f ||Kf||_{L^alpha(mu_out)} / ||f||_{L^gamma(mu_in)}.
NormResult operator_norm_two_measure(const Kernel& k, const Dist& mu_out, const Dist& mu_in,
                                     double alpha, double gamma,
                                     std::uint64_t seed = kDefaultSeed);

struct KernelAnalysis {
  Dist stationary;
  bool reversible = false;
  // Second-largest eigenvalue (by value) of the transition matrix; only
  // meaningful for reversible kernels where the spectrum is real.
  std::optional<double> second_eigenvalue;
  // 1 - max |non-unit eigenvalue| for reversible kernels; for non-reversible
  // ones a singular-value lower bound on the gap, flagged below.
  double absolute_gap = 0.0;
  bool gap_is_singular_value_bound = false;
  double eta_tv = 0.0;
  std::vector<double> spectrum;  // reversible only: all eigenvalues, descending
};

KernelAnalysis spectral(const Kernel& k);

// Stationary law of an ergodic kernel (Cesaro-averaged power iteration).
Dist stationary_dist(const Kernel& k);

// Hypercontractivity order for the binary symmetric kernel with flip
// probability lambda: the smallest gamma with ||K||_{gamma -> alpha} ... = 1,
// gamma*(alpha) = 1 + (1-2 lambda)^2 (alpha - 1). alpha may be +inf.
double dsbs_gamma_star(double lambda, double alpha);

// Closed-form strong-data-processing ceiling for Renyi order alpha on the
// binary symmetric kernel: (1-2l)^{1+1/alpha} / (1-l)^{(alpha-1)/alpha};
// the alpha -> inf limit is (1-2l)/(1-l).
double dsbs_renyi_sdpi_rhs(double lambda, double alpha);

// Kernel ingestion: CSV (header row of state labels, then the square matrix,
// entries decimal or "a/b") or JSON (see README).
Kernel kernel_from_csv(const std::string& text);
Kernel kernel_from_csv_file(const std::string& path);

}  // namespace depbound
