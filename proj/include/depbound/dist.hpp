#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depbound/log_value.hpp"
#include "depbound/rational.hpp"

namespace depbound {

// Finite distribution over integer-labeled states, ordered by state label.
// Probabilities live in the natural-log domain; -inf marks exact zeros.
// When every input mass was rational the exact values ride along so small
// computations (kernel pushforwards, integer-order Hellinger integrals) can
// stay exact.
class Dist {
 public:
  Dist() = default;
  static Dist from_linear(std::vector<std::int64_t> states, const std::vector<double>& probs);
  static Dist from_log(std::vector<std::int64_t> states, std::vector<double> log_probs);
  static Dist from_rational(std::vector<std::int64_t> states, std::vector<Rational> probs);
  static Dist delta(std::int64_t state, std::vector<std::int64_t> states);
  static Dist uniform(std::vector<std::int64_t> states);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::int64_t>& states() const { return states_; }
  const std::vector<double>& log_probs() const { return logp_; }
  double log_prob(std::size_t i) const { return logp_[i]; }
  double prob(std::size_t i) const { return std::exp(logp_[i]); }

  // Index of a state label, or nullopt if the label is absent.
  std::optional<std::size_t> index_of(std::int64_t state) const;
  bool in_support(std::size_t i) const { return logp_[i] != kNegInf; }
  std::vector<std::size_t> support() const;
  double min_support_log_prob() const;

  bool has_exact() const { return exact_.has_value(); }
  const std::vector<Rational>& exact() const { return *exact_; }

  bool same_states(const Dist& o) const { return states_ == o.states_; }
  // Max-norm distance between mass vectors (requires identical state sets).
  double max_distance(const Dist& o) const;

  std::string str() const;

 private:
  void validate() const;
  std::vector<std::int64_t> states_;
  std::vector<double> logp_;
  std::optional<std::vector<Rational>> exact_;
};

enum class DivergenceKind { Kl, Tv, ChiSq, Custom };

// Convex phi tabulated at sorted abscissae; evaluated by linear interpolation.
// Convexity is the caller's claim, spot-checked on midpoint triples.
struct PhiTable {
  std::vector<double> t;
  std::vector<double> phi;
  void validate() const;
  double operator()(double x) const;
};

// Hellinger integral H_alpha(nu||mu) = sum mu(x) (nu(x)/mu(x))^alpha, alpha > 1.
// Exact-zero aware; throws AbsoluteContinuityViolation when nu puts mass
// outside supp(mu).
LogValue hellinger_integral(const Dist& nu, const Dist& mu, double alpha);

// Exact value when both inputs are rational and alpha is a small integer.
std::optional<Rational> hellinger_integral_exact(const Dist& nu, const Dist& mu, int alpha);

// Renyi divergence of order alpha in (0,1) U (1,inf]; alpha=1 is KL.
// alpha=inf returns log ess-sup dnu/dmu.
double renyi_divergence(const Dist& nu, const Dist& mu, double alpha);

double phi_divergence(DivergenceKind kind, const Dist& nu, const Dist& mu,
                      const PhiTable* custom = nullptr);

double total_variation(const Dist& nu, const Dist& mu);

}  // namespace depbound
