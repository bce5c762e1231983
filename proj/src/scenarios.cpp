#include "depbound/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depbound/errors.hpp"
#include "depbound/kernel.hpp"
#include "depbound/tensorize.hpp"

namespace depbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

double conj_beta(double alpha) { return alpha == kInf ? 1.0 : alpha / (alpha - 1.0); }

BoundReport shell(std::string method, std::size_t n, double t, double alpha) {
  BoundReport r;
  r.method = std::move(method);
  r.n = n;
  r.t = t;
  r.alpha = alpha;
  r.beta = conj_beta(alpha);
  r.sum_c_sq = 1.0 / static_cast<double>(n);
  return r;
}

void seal(BoundReport& r, double log_mult) {
  r.log_mult = log_mult;
  double nn = static_cast<double>(r.n);
  r.log_bound = (kLn2 - 2.0 * nn * r.t * r.t) / r.beta + log_mult;
  r.threshold = log_mult > 0.0 ? std::sqrt(r.beta * log_mult / (2.0 * nn)) : 0.0;
  r.trivial = !(r.log_bound < 0.0);
}

void check_nt(std::size_t n, double t) {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  if (std::isnan(t) || t < 0.0) fail(Err::InvalidConfig, "t must be >= 0");
}

void check_alpha(double alpha) {
  if (std::isnan(alpha) || !(alpha > 1.0)) fail(Err::InvalidConfig, "alpha must be > 1 (or inf)");
}

}  // namespace

ProcessSpec binary_chain(double lambda) {
  return ProcessSpec::homogeneous(Dist::from_rational({0, 1}, {Rational{1, 2}, Rational{1, 2}}),
                                  Kernel::binary_flip(lambda));
}

BoundReport binary_chain_bound(double lambda, std::size_t n, double t, double alpha) {
  check_nt(n, t);
  check_alpha(alpha);
  if (std::isnan(lambda) || !(lambda > 0.0) || !(lambda < 1.0))
    fail(Err::InvalidConfig, "flip probability must lie in (0,1)");
  BoundReport r = shell("binary-closed", n, t, alpha);
  double l2k;
  if (alpha == kInf) {
    l2k = std::log(2.0 * std::max(lambda, 1.0 - lambda));
  } else {
    double s = std::pow(1.0 - lambda, alpha) + std::pow(lambda, alpha);
    l2k = kLn2 + std::log(s) / (alpha - 1.0);
  }
  seal(r, (static_cast<double>(n) - 1.0) * l2k / r.beta);
  return r;
}

LogValue ssrw_step_hellinger(std::size_t i, std::int64_t x, double alpha) {
  check_alpha(alpha);
  if (alpha == kInf) fail(Err::InvalidConfig, "per-step integral needs finite alpha");
  if (i == 0) fail(Err::InvalidConfig, "step index must be >= 1");
  std::int64_t prev = static_cast<std::int64_t>(i) - 1;
  if (x < -prev || x > prev || ((x + prev) % 2) != 0)
    fail(Err::OutOfSupport, "x outside supp(S_{i-1})");
  double a = -alpha * kLn2 + (1.0 - alpha) * ssrw_log_marginal(i, x + 1);
  double b = -alpha * kLn2 + (1.0 - alpha) * ssrw_log_marginal(i, x - 1);
  return LogValue::from_log(log_add(a, b));
}

double ssrw_step_log_max(std::size_t i, double alpha) {
  if (i == 0) fail(Err::InvalidConfig, "step index must be >= 1");
  std::int64_t prev = static_cast<std::int64_t>(i) - 1;
  if (i <= 64) {
    double best = kNegInf;
    for (std::int64_t x = -prev; x <= prev; x += 2)
      best = std::max(best, ssrw_step_hellinger(i, x, alpha).log);
    return best;
  }
  // Boundary states maximize the step integral (checked exhaustively above);
  // keep the central candidate as a safety net.
  double best = std::max(ssrw_step_hellinger(i, prev, alpha).log,
                         ssrw_step_hellinger(i, -prev, alpha).log);
  best = std::max(best, ssrw_step_hellinger(i, prev % 2, alpha).log);
  return best;
}

BoundReport ssrw_bound(std::size_t n, double t, double alpha, Centering centering) {
  check_nt(n, t);
  check_alpha(alpha);
  if (n < 2) fail(Err::InvalidConfig, "walk bound needs n >= 2");
  BoundReport r = shell("ssrw-closed", n, t, alpha);
  double nn = static_cast<double>(n);
  double log_mult = nn * (nn - 1.0) * kLn2 / (2.0 * r.beta);
  if (centering == Centering::JointMean) {
    r.centering = "joint-mean";
    double shift;
    if (n <= 12) {
      ProcessSpec walk = ProcessSpec::ssrw();
      double lm = alpha == kInf ? exact_joint_esssup_log(walk, n)
                                : exact_joint_hellinger(walk, n, alpha).log / alpha;
      BoundParams p{n, t, alpha, {}};
      MeanGap g = mean_gap_bound(p, lm);
      shift = g.value;
      r.notes.push_back("mean shift from the exact dependency factor");
    } else {
      // Conservative split point 2 sqrt(n) (always above the threshold
      // sqrt((n-1) ln 2)/2 of the worst-case factor).
      double t0 = 2.0 * std::sqrt(nn);
      shift = t0 + std::pow(2.0, 1.0 / r.beta) * r.beta / (4.0 * nn * t0);
      r.notes.push_back("mean shift with split point 2 sqrt(n)");
    }
    double t_eff = std::max(t - shift, 0.0);
    r.log_mult = log_mult;
    r.log_bound = (kLn2 - 2.0 * nn * t_eff * t_eff) / r.beta + log_mult;
    r.threshold = std::sqrt(r.beta * log_mult / (2.0 * nn)) + shift;
    r.trivial = !(r.log_bound < 0.0);
    return r;
  }
  seal(r, log_mult);
  return r;
}

Dist nonmarkov_conditional(std::span<const std::int64_t> prefix) {
  if (prefix.empty()) fail(Err::InvalidPrefix, "prefix must include the seed coordinate");
  ProcessSpec proc = ProcessSpec::nonmarkov_binary();
  // prefix = (x_0, x_1, .., x_{i-1}) and the process-level call wants only
  // x_1.. with the seed implicit, so strip the first entry.
  if (prefix.front() != 1 && prefix.front() != -1)
    fail(Err::InvalidPrefix, "prefix entries must be +/-1");
  if (prefix.front() != 1)
    fail(Err::InvalidPrefix, "the seed coordinate is pinned to +1");
  return conditional_dist(proc, prefix.size(), prefix.subspan(1));
}

BoundReport nonmarkov_bound(std::size_t n, double t, double beta) {
  check_nt(n, t);
  if (std::isnan(beta) || !(beta >= 1.0)) fail(Err::InvalidConfig, "beta must be >= 1");
  double alpha = beta == 1.0 ? kInf : beta / (beta - 1.0);
  BoundReport r = shell("nonmarkov", n, t, alpha);
  // alpha-free dependency factor 2^{n-1}: the conditional-vs-marginal
  // density ratio never exceeds 2.
  seal(r, (static_cast<double>(n) - 1.0) * kLn2);
  return r;
}

BoundReport nonmarkov_bound_best(std::size_t n, double t) {
  AlphaChoice choice =
      optimize_alpha([&](double a) { return nonmarkov_bound(n, t, conj_beta(a)); });
  BoundReport r = choice.report;
  r.notes.push_back("conjugate order minimized over the grid");
  return r;
}

McmcReport mcmc_bound(const Dist& nu, const Kernel& k, std::size_t n0, std::size_t n, double t,
                      double alpha, std::pair<double, double> range) {
  check_nt(n, t);
  check_alpha(alpha);
  if (!(range.second > range.first)) fail(Err::InvalidConfig, "range must satisfy b > a");
  Dist pi = stationary_dist(k);
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (!pi.in_support(i))
      fail(Err::NoStationary, "stationary law is not strictly positive");
  Dist start = n0 == 0 ? nu : apply_kernel(nu, k_step(k, static_cast<unsigned>(n0)));
  if (!start.same_states(pi)) fail(Err::DomainMismatch, "nu must live on the kernel states");

  McmcReport m;
  double w = range.second - range.first;
  double nn = static_cast<double>(n);
  double beta = conj_beta(alpha);

  if (alpha == kInf) {
    double best = kNegInf;
    for (std::size_t i = 0; i < start.size(); ++i)
      if (start.log_prob(i) != kNegInf) best = std::max(best, start.log_prob(i) - pi.log_prob(i));
    m.log_c = best;
    double s = kNegInf;
    for (std::size_t x = 0; x < k.size(); ++x) {
      const Dist& row = k.row(x);
      for (std::size_t y = 0; y < row.size(); ++y)
        if (row.log_prob(y) != kNegInf) s = std::max(s, row.log_prob(y) - pi.log_prob(y));
    }
    m.per_step_log = s;
  } else {
    m.log_c = hellinger_integral(start, pi, alpha).log / alpha;
    double s = kNegInf;
    for (std::size_t x = 0; x < k.size(); ++x)
      s = std::max(s, hellinger_integral(k.row(x), pi, alpha).log / alpha);
    m.per_step_log = s;
  }

  m.ours = shell("mcmc-ours", n, t, alpha);
  m.ours.sum_c_sq = w * w / nn;
  m.ours.log_mult = m.log_c + (nn - 1.0) * m.per_step_log;
  m.ours.log_bound = kLn2 / beta - 2.0 * nn * t * t / (beta * w * w) + m.ours.log_mult;
  m.ours.threshold = m.ours.log_mult > 0.0 ? std::sqrt(beta * w * w * m.ours.log_mult / (2.0 * nn))
                                           : 0.0;
  m.ours.trivial = !(m.ours.log_bound < 0.0);
  m.ours.notes.push_back("per-step dependency factor; coarse variant would use the worst "
                         "stationary mass " +
                         std::to_string(-pi.min_support_log_prob()) + " per step");

  KernelAnalysis spec_info = spectral(k);
  double lam = std::clamp(1.0 - spec_info.absolute_gap, 0.0, 1.0);
  m.lambda_r = lam;
  m.fan = shell("mcmc-fan", n, t, alpha);
  m.fan.sum_c_sq = w * w / nn;
  m.fan.log_mult = m.log_c;
  if (lam >= 1.0) {
    m.fan.log_bound = kLn2 + m.log_c;  // zero gap: no decay
    m.fan.notes.push_back("zero spectral gap");
  } else {
    m.fan.log_bound = kLn2 - ((1.0 - lam) / (1.0 + lam)) * 2.0 * nn * t * t / (w * w) + m.log_c;
  }
  if (!spec_info.reversible)
    m.fan.notes.push_back("non-reversible kernel: singular-value gap bound used");
  m.fan.trivial = !(m.fan.log_bound < 0.0);

  double r_gap = 1.0 / beta - (1.0 - lam) / (1.0 + lam);
  m.t_bar = r_gap > 0.0 && m.per_step_log > 0.0
                ? std::sqrt((nn - 1.0) * m.per_step_log * w * w / (2.0 * nn * r_gap))
                : kInf;
  return m;
}

std::size_t min_burnin(const Dist& nu, const Kernel& k, std::size_t n, double t, double alpha,
                       double target_log_prob, std::pair<double, double> range) {
  auto value = [&](std::size_t n0) {
    return mcmc_bound(nu, k, n0, n, t, alpha, range).ours.log_bound;
  };
  McmcReport base = mcmc_bound(nu, k, 0, n, t, alpha, range);
  double floor = base.ours.log_bound - base.log_c;  // n0 -> inf: C -> 1
  if (floor > target_log_prob)
    fail(Err::Unreachable, "even an infinite burn-in leaves the bound above the target");
  if (base.ours.log_bound <= target_log_prob) return 0;
  std::size_t hi = 1;
  while (value(hi) > target_log_prob) {
    hi *= 2;
    if (hi > (1ull << 32)) fail(Err::Unreachable, "burn-in search exceeded 2^32 steps");
  }
  std::size_t lo = hi / 2;  // value(lo) > target, value(hi) <= target
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    (value(mid) > target_log_prob ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace depbound
