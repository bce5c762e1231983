#include "depbound/tensorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depbound/errors.hpp"
#include "depbound/log_value.hpp"

namespace depbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Re-expresses nu on mu's state set (zero mass off nu's own support).
Dist embed_into(const Dist& nu, const Dist& mu) {
  if (nu.same_states(mu)) return nu;
  std::vector<double> logp(mu.size(), kNegInf);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu.log_prob(i) == kNegInf) continue;
    auto at = mu.index_of(nu.states()[i]);
    if (!at)
      fail(Err::DomainMismatch, "conditional state " + std::to_string(nu.states()[i]) +
                                    " missing from the marginal state set");
    logp[*at] = nu.log_prob(i);
  }
  return Dist::from_log(mu.states(), std::move(logp));
}

// Conditional law of X_i given X_{i-1} = x for Markov processes.
Dist markov_conditional(const ProcessSpec& proc, std::size_t i, std::int64_t x) {
  std::vector<std::int64_t> prefix(i - 1, 0);
  prefix.back() = x;  // only the last coordinate matters for Markov kinds
  return conditional_dist(proc, i, prefix);
}

// log ess-sup_y of q(y)/p(y) over supp(q).
double esssup_log_ratio(const Dist& q, const Dist& p) {
  double best = kNegInf;
  for (std::size_t j = 0; j < q.size(); ++j) {
    double lq = q.log_prob(j);
    if (lq == kNegInf) continue;
    double lp = p.log_prob(j);
    if (lp == kNegInf)
      fail(Err::AbsoluteContinuityViolation,
           "conditional mass on state " + std::to_string(q.states()[j]) +
               " outside the marginal support");
    best = std::max(best, lq - lp);
  }
  return best;
}

struct StepFactor {
  double log_factor;
  std::int64_t arg_state;
};

// One scheduled Holder factor: inner order alpha*a over conditionals drawn
// from `items` (log weight, log H, label), combined with the previous
// conjugate exponent b_prev (+inf max, -inf min, else an L^{b_prev/a} mean).
StepFactor combine_step(const std::vector<std::tuple<double, double, std::int64_t>>& items,
                        double a, double b_prev) {
  double best_h = kNegInf;
  std::int64_t best_state = 0;
  bool first = true;
  for (const auto& [lw, lh, label] : items) {
    (void)lw;
    if (first || lh > best_h) {
      best_h = lh;
      best_state = label;
      first = false;
    }
  }
  if (b_prev == kInf) return {best_h / a, best_state};
  if (b_prev == -kInf) {
    double worst = kInf;
    std::int64_t worst_state = 0;
    first = true;
    for (const auto& [lw, lh, label] : items) {
      (void)lw;
      if (first || lh < worst) {
        worst = lh;
        worst_state = label;
        first = false;
      }
    }
    return {worst / a, worst_state};
  }
  std::vector<double> terms;
  terms.reserve(items.size());
  for (const auto& [lw, lh, label] : items) {
    (void)label;
    terms.push_back(lw + (b_prev / a) * lh);
  }
  return {log_sum_exp(terms) / b_prev, best_state};
}

double conjugate(double a, bool upper) {
  if (a == 1.0) return upper ? kInf : -kInf;
  return a / (a - 1.0);
}

void check_alpha(double alpha) {
  if (std::isnan(alpha) || !(alpha > 1.0))
    fail(Err::InvalidConfig, "tensorisation needs alpha > 1 (or inf)");
}

TensorResult tensor_markov_impl(const ProcessSpec& proc, std::size_t n, double alpha,
                                const Schedule& schedule, bool upper) {
  if (!proc.markov()) fail(Err::UnsupportedProcess, "Markov tensorisation on a non-Markov process");
  check_alpha(alpha);
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  std::vector<double> sched = schedule.materialize(n, upper, alpha);
  if (alpha == kInf) {
    for (double a : sched)
      if (a != 1.0) fail(Err::ScheduleInvalid, "alpha = inf admits only the all-one schedule");
  }
  std::vector<Dist> margs = marginals(proc, n);
  TensorResult out;
  double total = 0.0;
  for (std::size_t i = 2; i <= n; ++i) {
    const Dist& prev = margs[i - 2];
    const Dist& cur = margs[i - 1];
    double a = sched[i - 2];
    double b_prev = conjugate(i == 2 ? 1.0 : sched[i - 3], upper);
    std::vector<std::tuple<double, double, std::int64_t>> items;
    for (std::size_t xi : prev.support()) {
      std::int64_t x = prev.states()[xi];
      Dist cond = embed_into(markov_conditional(proc, i, x), cur);
      double lh = alpha == kInf ? esssup_log_ratio(cond, cur)
                                : hellinger_integral(cond, cur, alpha * a).log;
      items.emplace_back(prev.log_prob(xi), lh, x);
    }
    StepFactor f = combine_step(items, a, b_prev);
    total += f.log_factor;
    out.arg_states.push_back(f.arg_state);
  }
  out.log_value = total;
  return out;
}

TensorResult tensor_general_impl(const ProcessSpec& proc, std::size_t n, double alpha,
                                 bool upper) {
  check_alpha(alpha);
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  std::vector<Dist> margs = marginals(proc, n);
  TensorResult out;
  double total = 0.0;
  for (std::size_t i = 2; i <= n; ++i) {
    const Dist& cur = margs[i - 1];
    double best = upper ? kNegInf : kInf;
    std::int64_t best_state = 0;
    bool first = true;
    for_each_path(proc, i - 1, [&](std::span<const std::int64_t> prefix, double) {
      Dist cond = embed_into(conditional_dist(proc, i, prefix), cur);
      double lh = alpha == kInf ? esssup_log_ratio(cond, cur)
                                : hellinger_integral(cond, cur, alpha).log;
      if (first || (upper ? lh > best : lh < best)) {
        best = lh;
        best_state = prefix.back();
        first = false;
      }
    });
    total += best;
    out.arg_states.push_back(best_state);
  }
  out.log_value = total;
  return out;
}

}  // namespace

std::vector<double> Schedule::materialize(std::size_t n, bool upper, double alpha) const {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  std::vector<double> out;
  switch (preset) {
    case Preset::AllOne:
      out.assign(n >= 2 ? n - 1 : 0, 1.0);
      break;
    case Preset::Geometric:
      for (std::size_t i = 2; i <= n; ++i) {
        double step = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(i, 60)));
        out.push_back(i == n ? 1.0 : (upper ? 1.0 + step : 1.0 - step));
      }
      break;
    case Preset::Custom:
      out = alphas;
      if (out.size() + 1 != n)
        fail(Err::ScheduleInvalid, "schedule needs exactly n-1 entries (alpha_2..alpha_n)");
      break;
  }
  if (!out.empty() && out.back() != 1.0)
    fail(Err::ScheduleInvalid, "the final schedule entry must equal 1");
  double floor = alpha == kInf ? 0.0 : 1.0 / alpha;
  for (double a : out) {
    if (std::isnan(a) || a <= 0.0) fail(Err::ScheduleInvalid, "schedule entries must be positive");
    if (upper && a < 1.0) fail(Err::ScheduleInvalid, "upper-bound schedules need entries >= 1");
    if (!upper && a > 1.0) fail(Err::ScheduleInvalid, "lower-bound schedules need entries <= 1");
    if (!upper && a <= floor)
      fail(Err::ScheduleInvalid, "lower-bound schedule entry leaves the inner order below 1");
  }
  return out;
}

std::string Schedule::name() const {
  switch (preset) {
    case Preset::AllOne: return "all-one";
    case Preset::Geometric: return "geometric";
    case Preset::Custom: return "custom";
  }
  return "?";
}

LogValue exact_joint_hellinger(const ProcessSpec& proc, std::size_t n, double alpha) {
  if (std::isnan(alpha) || std::isinf(alpha) || alpha <= 0.0 || alpha == 1.0)
    fail(Err::InvalidConfig, "exact joint Hellinger integral needs finite alpha > 0, != 1");
  std::vector<Dist> margs = marginals(proc, n);
  // Streaming logsumexp over alpha*log(joint) + (1-alpha)*log(product).
  double m = kNegInf, s = 0.0;
  for_each_path(proc, n, [&](std::span<const std::int64_t> path, double logp) {
    double log_prod = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      log_prod += margs[i].log_prob(margs[i].index_of(path[i]).value());
    double term = alpha * logp + (1.0 - alpha) * log_prod;
    if (term == kNegInf) return;
    if (term <= m) {
      s += std::exp(term - m);
    } else {
      s = (m == kNegInf ? 0.0 : s * std::exp(m - term)) + 1.0;
      m = term;
    }
  });
  if (m == kNegInf) return LogValue::zero();
  double log_h = m + std::log(s);
  if (alpha > 1.0 && log_h < 0.0 && log_h > -1e-12) log_h = 0.0;  // H >= 1 for alpha > 1
  return LogValue::from_log(log_h);
}

double exact_joint_esssup_log(const ProcessSpec& proc, std::size_t n) {
  std::vector<Dist> margs = marginals(proc, n);
  double best = kNegInf;
  for_each_path(proc, n, [&](std::span<const std::int64_t> path, double logp) {
    double log_prod = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      log_prod += margs[i].log_prob(margs[i].index_of(path[i]).value());
    best = std::max(best, logp - log_prod);
  });
  return best;
}

TensorResult tensor_upper_markov(const ProcessSpec& proc, std::size_t n, double alpha,
                                 const Schedule& schedule) {
  return tensor_markov_impl(proc, n, alpha, schedule, true);
}

TensorResult tensor_lower_markov(const ProcessSpec& proc, std::size_t n, double alpha,
                                 const Schedule& schedule) {
  return tensor_markov_impl(proc, n, alpha, schedule, false);
}

TensorResult tensor_upper_general(const ProcessSpec& proc, std::size_t n, double alpha) {
  return tensor_general_impl(proc, n, alpha, true);
}

TensorResult tensor_lower_general(const ProcessSpec& proc, std::size_t n, double alpha) {
  return tensor_general_impl(proc, n, alpha, false);
}

double tensor_upper_markov_esssup_log(const ProcessSpec& proc, std::size_t n) {
  return tensor_upper_markov(proc, n, kInf, Schedule::all_one()).log_value;
}

double tensor_upper_markov_renyi(const ProcessSpec& proc, std::size_t n, double alpha,
                                 const Schedule& schedule) {
  if (!proc.markov()) fail(Err::UnsupportedProcess, "Markov tensorisation on a non-Markov process");
  if (std::isinf(alpha)) fail(Err::InvalidConfig, "Renyi form needs finite alpha > 1");
  check_alpha(alpha);
  std::vector<double> sched = schedule.materialize(n, true, alpha);
  std::vector<Dist> margs = marginals(proc, n);
  double total = 0.0;
  for (std::size_t i = 2; i <= n; ++i) {
    const Dist& prev = margs[i - 2];
    const Dist& cur = margs[i - 1];
    double a = sched[i - 2];
    double b_prev = conjugate(i == 2 ? 1.0 : sched[i - 3], true);
    // Same factor, assembled from Renyi divergences via
    // log H_{alpha a} = (alpha a - 1) D_{alpha a}.
    std::vector<std::tuple<double, double, std::int64_t>> items;
    for (std::size_t xi : prev.support()) {
      std::int64_t x = prev.states()[xi];
      Dist cond = embed_into(markov_conditional(proc, i, x), cur);
      double d = renyi_divergence(cond, cur, alpha * a);
      items.emplace_back(prev.log_prob(xi), (alpha * a - 1.0) * d, x);
    }
    total += combine_step(items, a, b_prev).log_factor;
  }
  return total / (alpha - 1.0);
}

}  // namespace depbound
