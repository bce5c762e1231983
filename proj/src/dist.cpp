#include "depbound/dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "depbound/errors.hpp"

namespace depbound {

namespace {
constexpr double kMassTol = 1e-12;
}

void Dist::validate() const {
  if (states_.empty()) fail(Err::InvalidDistribution, "no states");
  if (states_.size() != logp_.size()) fail(Err::InvalidDistribution, "state/prob length mismatch");
  for (std::size_t i = 1; i < states_.size(); ++i)
    if (states_[i - 1] >= states_[i])
      fail(Err::InvalidDistribution, "states must be strictly increasing");
  for (double lp : logp_)
    if (std::isnan(lp) || lp > 1e-9)
      fail(Err::InvalidDistribution, "log-probability out of range");
  double mass = log_sum_exp(logp_);
  if (std::fabs(mass) > kMassTol)
    fail(Err::InvalidDistribution, "mass deviates from 1 by " + std::to_string(std::expm1(mass)));
}

Dist Dist::from_linear(std::vector<std::int64_t> states, const std::vector<double>& probs) {
  Dist d;
  d.states_ = std::move(states);
  d.logp_.reserve(probs.size());
  for (double p : probs) {
    if (p < 0.0 || std::isnan(p)) fail(Err::InvalidDistribution, "negative probability");
    d.logp_.push_back(p == 0.0 ? kNegInf : std::log(p));
  }
  d.validate();
  return d;
}

Dist Dist::from_log(std::vector<std::int64_t> states, std::vector<double> log_probs) {
  Dist d;
  d.states_ = std::move(states);
  d.logp_ = std::move(log_probs);
  d.validate();
  return d;
}

Dist Dist::from_rational(std::vector<std::int64_t> states, std::vector<Rational> probs) {
  Dist d;
  d.states_ = std::move(states);
  Rational total{0, 1};
  bool exact_total = true;
  d.logp_.reserve(probs.size());
  for (const Rational& r : probs) {
    if (r.num < 0) fail(Err::InvalidDistribution, "negative probability");
    d.logp_.push_back(r.log());
    if (exact_total) {
      auto t = Rational::add(total, r);
      if (t) total = *t; else exact_total = false;
    }
  }
  if (exact_total && !(total == Rational{1, 1}))
    fail(Err::InvalidDistribution, "rational mass is " + total.str() + ", not 1");
  d.exact_ = std::move(probs);
  d.validate();
  return d;
}

Dist Dist::delta(std::int64_t state, std::vector<std::int64_t> states) {
  std::vector<Rational> probs(states.size(), Rational{0, 1});
  bool found = false;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == state) { probs[i] = Rational{1, 1}; found = true; }
  if (!found) fail(Err::OutOfSupport, "delta state not among labels");
  return from_rational(std::move(states), std::move(probs));
}

Dist Dist::uniform(std::vector<std::int64_t> states) {
  auto m = static_cast<std::int64_t>(states.size());
  std::vector<Rational> probs(states.size(), Rational{1, m});
  return from_rational(std::move(states), std::move(probs));
}

std::optional<std::size_t> Dist::index_of(std::int64_t state) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::vector<std::size_t> Dist::support() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < logp_.size(); ++i)
    if (logp_[i] != kNegInf) idx.push_back(i);
  return idx;
}

double Dist::min_support_log_prob() const {
  double m = kPosInf;
  for (double lp : logp_)
    if (lp != kNegInf) m = std::min(m, lp);
  return m;
}

double Dist::max_distance(const Dist& o) const {
  if (!same_states(o)) fail(Err::DomainMismatch, "max_distance on different state sets");
  double d = 0.0;
  for (std::size_t i = 0; i < logp_.size(); ++i)
    d = std::max(d, std::fabs(prob(i) - o.prob(i)));
  return d;
}

std::string Dist::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (i) os << ", ";
    os << states_[i] << ": " << prob(i);
  }
  os << "}";
  return os.str();
}

void PhiTable::validate() const {
  if (t.size() != phi.size() || t.size() < 3)
    fail(Err::InvalidConfig, "phi table needs >= 3 sorted points");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] >= t[i]) fail(Err::InvalidConfig, "phi table abscissae must increase");
  // Midpoint spot check on consecutive triples.
  for (std::size_t i = 0; i + 2 < t.size(); ++i) {
    double w = (t[i + 1] - t[i]) / (t[i + 2] - t[i]);
    double chord = (1.0 - w) * phi[i] + w * phi[i + 2];
    if (phi[i + 1] > chord + 1e-9)
      fail(Err::ConvexityViolation, "phi table fails midpoint convexity check");
  }
}

double PhiTable::operator()(double x) const {
  if (x < t.front() || x > t.back())
    fail(Err::OutOfSupport, "phi table evaluated outside its range");
  auto it = std::upper_bound(t.begin(), t.end(), x);
  if (it == t.begin()) return phi.front();
  if (it == t.end()) return phi.back();
  std::size_t hi = static_cast<std::size_t>(it - t.begin());
  std::size_t lo = hi - 1;
  double w = (x - t[lo]) / (t[hi] - t[lo]);
  return (1.0 - w) * phi[lo] + w * phi[hi];
}

namespace {

void require_same_states(const Dist& nu, const Dist& mu, const char* op) {
  if (!nu.same_states(mu)) fail(Err::DomainMismatch, std::string(op) + " on different state sets");
}

// Snaps the tiny negative logs produced by float cancellation back to the
// mathematically guaranteed floor log H >= 0.
double snap_nonneg(double lg) { return (lg < 0.0 && lg > -1e-12) ? 0.0 : lg; }

}  // namespace

LogValue hellinger_integral(const Dist& nu, const Dist& mu, double alpha) {
  require_same_states(nu, mu, "hellinger_integral");
  if (!(alpha > 1.0)) fail(Err::InvalidConfig, "hellinger_integral needs alpha > 1");
  std::vector<double> terms;
  terms.reserve(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    double ln = nu.log_prob(i);
    if (ln == kNegInf) continue;
    double lm = mu.log_prob(i);
    if (lm == kNegInf)
      fail(Err::AbsoluteContinuityViolation,
           "nu puts mass on state " + std::to_string(nu.states()[i]) + " outside supp(mu)");
    terms.push_back(alpha * ln + (1.0 - alpha) * lm);
  }
  return LogValue::from_log(snap_nonneg(log_sum_exp(terms)));
}

std::optional<Rational> hellinger_integral_exact(const Dist& nu, const Dist& mu, int alpha) {
  if (!nu.has_exact() || !mu.has_exact() || alpha < 2 || !nu.same_states(mu)) return std::nullopt;
  Rational acc{0, 1};
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const Rational& n = nu.exact()[i];
    const Rational& m = mu.exact()[i];
    if (n.num == 0) continue;
    if (m.num == 0) return std::nullopt;
    auto np = Rational::pow_u(n, static_cast<unsigned>(alpha));
    auto mp = Rational::pow_u(m, static_cast<unsigned>(alpha - 1));
    if (!np || !mp) return std::nullopt;
    auto term = Rational::div(*np, *mp);
    if (!term) return std::nullopt;
    auto sum = Rational::add(acc, *term);
    if (!sum) return std::nullopt;
    acc = *sum;
  }
  return acc;
}

double renyi_divergence(const Dist& nu, const Dist& mu, double alpha) {
  require_same_states(nu, mu, "renyi_divergence");
  if (!(alpha > 0.0)) fail(Err::InvalidConfig, "renyi_divergence needs alpha > 0");
  if (alpha == kPosInf) {
    double best = kNegInf;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      double ln = nu.log_prob(i);
      if (ln == kNegInf) continue;
      double lm = mu.log_prob(i);
      if (lm == kNegInf)
        fail(Err::AbsoluteContinuityViolation, "nu not absolutely continuous w.r.t. mu");
      best = std::max(best, ln - lm);
    }
    // ess-sup of a density ratio is >= 1; tiny negatives are roundoff.
    return (best < 0.0 && best > -1e-12) ? 0.0 : best;
  }
  if (alpha == 1.0) return phi_divergence(DivergenceKind::Kl, nu, mu);
  if (alpha > 1.0) return hellinger_integral(nu, mu, alpha).log / (alpha - 1.0);
  // 0 < alpha < 1: integrate over the common support; disjointness gives +inf.
  std::vector<double> terms;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    double ln = nu.log_prob(i), lm = mu.log_prob(i);
    if (ln == kNegInf || lm == kNegInf) continue;
    terms.push_back(alpha * ln + (1.0 - alpha) * lm);
  }
  double lg = log_sum_exp(terms);
  return lg == kNegInf ? kPosInf : lg / (alpha - 1.0);
}

double phi_divergence(DivergenceKind kind, const Dist& nu, const Dist& mu,
                      const PhiTable* custom) {
  require_same_states(nu, mu, "phi_divergence");
  switch (kind) {
    case DivergenceKind::Kl: {
      double acc = 0.0;
      for (std::size_t i = 0; i < nu.size(); ++i) {
        double ln = nu.log_prob(i);
        if (ln == kNegInf) continue;
        double lm = mu.log_prob(i);
        if (lm == kNegInf)
          fail(Err::AbsoluteContinuityViolation, "KL undefined: nu not << mu");
        acc += std::exp(ln) * (ln - lm);
      }
      return std::max(acc, 0.0);
    }
    case DivergenceKind::Tv: {
      double acc = 0.0;
      for (std::size_t i = 0; i < nu.size(); ++i)
        acc += std::fabs(nu.prob(i) - mu.prob(i));
      return 0.5 * acc;
    }
    case DivergenceKind::ChiSq: {
      double acc = 0.0;
      for (std::size_t i = 0; i < nu.size(); ++i) {
        double ln = nu.log_prob(i);
        if (ln == kNegInf) {
          acc += mu.prob(i);
          continue;
        }
        double lm = mu.log_prob(i);
        if (lm == kNegInf)
          fail(Err::AbsoluteContinuityViolation, "chi-square undefined: nu not << mu");
        acc += std::exp(2.0 * ln - lm);
      }
      return std::max(acc - 1.0, 0.0);
    }
    case DivergenceKind::Custom: {
      if (custom == nullptr) fail(Err::InvalidConfig, "custom divergence needs a phi table");
      custom->validate();
      double acc = 0.0;
      for (std::size_t i = 0; i < nu.size(); ++i) {
        double lm = mu.log_prob(i);
        if (lm == kNegInf) {
          if (nu.log_prob(i) != kNegInf)
            fail(Err::AbsoluteContinuityViolation, "phi divergence undefined: nu not << mu");
          continue;
        }
        double ratio = std::exp(nu.log_prob(i) - lm);
        acc += std::exp(lm) * (*custom)(ratio);
      }
      return acc;
    }
  }
  fail(Err::InvalidConfig, "unknown divergence kind");
}

double total_variation(const Dist& nu, const Dist& mu) {
  return phi_divergence(DivergenceKind::Tv, nu, mu);
}

}  // namespace depbound
