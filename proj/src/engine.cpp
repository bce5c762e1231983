#include "depbound/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depbound/errors.hpp"
#include "depbound/kernel.hpp"
#include "depbound/stats.hpp"
#include "depbound/tensorize.hpp"

namespace depbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

bool is_uniform(const Dist& d) {
  double target = -std::log(static_cast<double>(d.size()));
  for (double lp : d.log_probs())
    if (std::abs(lp - target) > 1e-12) return false;
  return true;
}

BoundReport base_report(const BoundParams& p, std::string method) {
  BoundReport r;
  r.method = std::move(method);
  r.n = p.n;
  r.t = p.t;
  r.alpha = p.alpha;
  r.beta = p.beta();
  r.sum_c_sq = p.sum_c_sq();
  return r;
}

void finish_report(BoundReport& r, const BoundParams& p, double log_mult) {
  r.log_mult = log_mult;
  r.log_bound = kLn2 / r.beta - 2.0 * p.t * p.t / (r.beta * r.sum_c_sq) + log_mult;
  r.threshold = threshold_t(p, log_mult);
  r.trivial = !(r.log_bound < 0.0);
}

}  // namespace

double BoundParams::beta() const { return alpha == kInf ? 1.0 : alpha / (alpha - 1.0); }

double BoundParams::sum_c_sq() const {
  if (c.empty()) return 1.0 / static_cast<double>(n);
  double s = 0.0;
  for (double ci : c) s += ci * ci;
  return s;
}

void BoundParams::validate() const {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  if (std::isnan(t) || t < 0.0) fail(Err::InvalidConfig, "t must be >= 0");
  if (std::isnan(alpha) || !(alpha > 1.0)) fail(Err::InvalidConfig, "alpha must be > 1 (or inf)");
  if (!c.empty()) {
    if (c.size() != n) fail(Err::InvalidConfig, "certificate vector must have n entries");
    for (double ci : c)
      if (std::isnan(ci) || ci <= 0.0) fail(Err::InvalidConfig, "certificate entries must be > 0");
  }
}

double general_event_bound_log(double log_p_indep, double log_mult, double alpha) {
  if (std::isnan(alpha) || !(alpha > 1.0)) fail(Err::InvalidConfig, "alpha must be > 1 (or inf)");
  if (log_p_indep > 0.0) fail(Err::InvalidConfig, "log P must be <= 0");
  double beta = alpha == kInf ? 1.0 : alpha / (alpha - 1.0);
  return log_p_indep / beta + log_mult;
}

BoundReport mcdiarmid_dep_bound(const BoundParams& params, double log_mult) {
  params.validate();
  BoundReport r = base_report(params, "deviation");
  finish_report(r, params, log_mult);
  return r;
}

double threshold_t(const BoundParams& params, double log_mult) {
  params.validate();
  if (!(log_mult > 0.0)) return 0.0;
  return std::sqrt(params.beta() * params.sum_c_sq() * log_mult / 2.0);
}

std::string route_name(ChainRoute r) {
  switch (r) {
    case ChainRoute::Tensor: return "tensor";
    case ChainRoute::Hyper: return "hyper";
    case ChainRoute::Sdpi: return "sdpi";
  }
  return "?";
}

BoundReport markov_chain_bound(const ProcessSpec& proc, const BoundParams& params,
                               ChainRoute route) {
  params.validate();
  if (proc.kind != ProcessSpec::Kind::HomogeneousChain &&
      proc.kind != ProcessSpec::Kind::InhomogeneousChain)
    fail(Err::UnsupportedProcess, "chain bound needs a finite-state Markov chain");
  const std::size_t n = params.n;
  const double alpha = params.alpha;
  BoundReport r = base_report(params, "chain-" + route_name(route));
  std::vector<Dist> margs = marginals(proc, n);

  auto kernel_at = [&](std::size_t i) -> const Kernel& {
    if (proc.kind == ProcessSpec::Kind::HomogeneousChain) return proc.kernel;
    return proc.kernels[std::min(i - 2, proc.kernels.size() - 1)];
  };

  double log_mult = 0.0;
  switch (route) {
    case ChainRoute::Tensor: {
      log_mult = alpha == kInf
                     ? tensor_upper_markov_esssup_log(proc, n)
                     : tensor_upper_markov(proc, n, alpha).log_value / alpha;
      break;
    }
    case ChainRoute::Hyper: {
      for (std::size_t i = 2; i <= n; ++i) {
        const Kernel& k = kernel_at(i);
        const Dist& prev = margs[i - 2];
        const Dist& cur = margs[i - 1];
        auto flip = k.dsbs_flip();
        bool stationary_dsbs = flip && is_uniform(prev) && is_uniform(cur);
        double gamma_star = stationary_dsbs ? dsbs_gamma_star(*flip, alpha) : alpha;
        double inv_gamma_bar = gamma_star == kInf   ? 1.0
                               : gamma_star == 1.0 ? 0.0
                                                    : (gamma_star - 1.0) / gamma_star;
        double log_norm;
        try {
          Kernel back = backward_channel(k, prev);
          log_norm = std::log(
              operator_norm_two_measure(back, cur, prev, alpha, gamma_star).value);
        } catch (const Error& e) {
          if (e.code() != Err::ZeroMassState) throw;
          r.notes.push_back("zero-mass marginal state at step " + std::to_string(i) +
                            "; multiplier is +inf");
          log_mult = kInf;
          break;
        }
        log_mult += log_norm - inv_gamma_bar * prev.min_support_log_prob();
        if (stationary_dsbs && i == 2)
          r.notes.push_back("hypercontractive order gamma* = " + std::to_string(gamma_star));
      }
      break;
    }
    case ChainRoute::Sdpi: {
      if (proc.kind != ProcessSpec::Kind::HomogeneousChain)
        fail(Err::UnsupportedProcess, "the SDPI route needs a homogeneous chain");
      auto flip = proc.kernel.dsbs_flip();
      if (!flip || !is_uniform(proc.init))
        fail(Err::UnsupportedProcess,
             "the SDPI route is closed-form only for stationary binary symmetric chains");
      double eta = dsbs_renyi_sdpi_rhs(*flip, alpha);
      double sum_d = 0.0;
      for (std::size_t i = 2; i <= n; ++i) sum_d -= margs[i - 2].min_support_log_prob();
      log_mult = eta * sum_d / r.beta;
      r.notes.push_back("renyi sdpi coefficient " + std::to_string(eta));
      break;
    }
  }
  finish_report(r, params, log_mult);
  return r;
}

std::vector<double> alpha_grid() {
  std::vector<double> g;
  for (int k = -12; k <= 24; ++k) g.push_back(1.0 + std::pow(10.0, k / 4.0));
  g.push_back(kInf);
  return g;
}

AlphaChoice optimize_alpha(const std::function<BoundReport(double)>& eval) {
  AlphaChoice out;
  bool first = true;
  for (double a : alpha_grid()) {
    BoundReport r = eval(a);
    out.grid.emplace_back(a, r.log_bound);
    // Ascending grid: <= prefers the larger alpha on ties.
    if (first || r.log_bound <= out.report.log_bound + 1e-12) {
      out.alpha = a;
      out.report = std::move(r);
      first = false;
    }
  }
  return out;
}

MeanGap mean_gap_bound(const BoundParams& params, double log_mult) {
  params.validate();
  MeanGap g;
  if (!(log_mult > 0.0)) {
    g.degenerate = true;
    return g;
  }
  g.t0 = threshold_t(params, log_mult);
  double beta = params.beta();
  g.value = g.t0 + std::pow(2.0, 1.0 / beta) * beta * params.sum_c_sq() / (4.0 * g.t0);
  return g;
}

MedianShift median_shift(const std::function<double(double)>& log_h, double r_cap) {
  MedianShift m;
  double lo = 0.0;
  if (log_h(0.0) <= -kLn2) {
    // The profile starts at or below 1/2: there is no half-point to search for.
    m.r0 = 0.0;
    m.no_half_point = log_h(0.0) < -kLn2;
  } else {
    double hi = 1e-6;
    while (log_h(hi) > -kLn2) {
      hi *= 2.0;
      if (hi > r_cap) {
        m.no_half_point = true;
        m.r0 = r_cap;
        break;
      }
      lo = hi / 2.0;
    }
    if (!m.no_half_point) {
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (log_h(mid) > -kLn2 ? lo : hi) = mid;
      }
      m.r0 = hi;
    }
  }
  // Mean-median integral: find where the profile is negligible, then quadrature.
  double reach = std::max(1.0, m.r0);
  while (log_h(reach) > -60.0 && reach < r_cap) reach *= 2.0;
  m.hbar = integrate([&](double r) { return std::exp(log_h(r)); }, 0.0,
                     std::min(reach, r_cap), 1e-12);
  return m;
}

double packaged_constant_log(double log_c, double coef, double p, double s) {
  if (!(p > 0.0)) fail(Err::InvalidConfig, "packaging exponent p must be > 0");
  return log_c + coef * std::pow(s, p);
}

double kappa_p(double p) {
  if (!(p > 0.0)) fail(Err::InvalidConfig, "packaging exponent p must be > 0");
  return std::pow(2.0, 1.0 - p);
}

double median_bound_general_log(std::size_t n, double t, double c_n) {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  if (std::isnan(t) || t < 0.0) fail(Err::InvalidConfig, "t must be >= 0");
  if (!(c_n >= 0.0)) fail(Err::InvalidConfig, "dependency exponent must be >= 0");
  double nn = static_cast<double>(n);
  return -kLn2 - 2.0 * nn * t * t + 2.0 * t * std::sqrt(2.0 * nn * (2.0 * kLn2 + c_n));
}

}  // namespace depbound
