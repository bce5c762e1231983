#include "depbound/baselines.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "depbound/errors.hpp"

namespace depbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

void check_nt(std::size_t n, double t) {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  if (std::isnan(t) || t < 0.0) fail(Err::InvalidConfig, "t must be >= 0");
}

BoundReport plain_report(std::string method, std::size_t n, double t, double log_bound) {
  BoundReport r;
  r.method = std::move(method);
  r.n = n;
  r.t = t;
  r.alpha = 0.0;  // not applicable to baselines
  r.beta = 0.0;
  r.sum_c_sq = 1.0 / static_cast<double>(n);
  r.log_bound = log_bound;
  r.trivial = !(log_bound < 0.0);
  return r;
}

// log(2 kappa_alpha) for the binary symmetric chain: the per-step log
// dependency multiplier times beta.
double log_two_kappa(double lambda, double alpha) {
  if (alpha == kInf) return std::log(2.0 * std::max(lambda, 1.0 - lambda));
  double s = std::pow(1.0 - lambda, alpha) + std::pow(lambda, alpha);
  return kLn2 + std::log(s) / (alpha - 1.0);
}

// Product-mean closed form for the stationary binary symmetric chain.
double binary_ours_log(double lambda, std::size_t n, double t, double alpha) {
  double beta = alpha == kInf ? 1.0 : alpha / (alpha - 1.0);
  double nn = static_cast<double>(n);
  return (kLn2 - 2.0 * nn * t * t + (nn - 1.0) * log_two_kappa(lambda, alpha)) / beta;
}

void check_lambda_flip(double lambda) {
  if (std::isnan(lambda) || lambda < 0.0 || lambda > 1.0)
    fail(Err::InvalidConfig, "flip probability must lie in [0,1]");
}

CrossoverResult finalize(CrossoverResult r, double log_ours, double log_base) {
  r.log_ours_at_check = log_ours;
  r.log_base_at_check = log_base;
  r.verified = log_ours < log_base;
  return r;
}

}  // namespace

double kontorovich_mixing_norm(std::size_t n, const std::vector<double>& etas) {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  if (etas.size() + 1 != n) fail(Err::InvalidConfig, "need n-1 contraction coefficients");
  for (double e : etas)
    if (std::isnan(e) || e < 0.0 || e > 1.0)
      fail(Err::InvalidConfig, "contraction coefficients must lie in [0,1]");
  // Row sum of the triangular mixing matrix via the backward recursion
  // S_i = eta_i (1 + S_{i+1}); row_i = 1 + S_i.
  double best = 1.0, suffix = 0.0;
  for (std::size_t k = n - 1; k >= 1; --k) {
    suffix = etas[k - 1] * (1.0 + suffix);
    best = std::max(best, 1.0 + suffix);
  }
  return best;
}

BoundReport kontorovich_bound(std::size_t n, double t, const std::vector<double>& etas) {
  check_nt(n, t);
  double m = kontorovich_mixing_norm(n, etas);
  double log_bound = kLn2 - static_cast<double>(n) * t * t / (2.0 * m * m);
  BoundReport r = plain_report("kontorovich", n, t, log_bound);
  r.notes.push_back("mixing norm " + std::to_string(m));
  return r;
}

BoundReport kontorovich_bound_homog(std::size_t n, double t, double eta) {
  return kontorovich_bound(n, t, std::vector<double>(n >= 1 ? n - 1 : 0, eta));
}

BoundReport fan_bound(std::size_t n, double t, double lambda_r,
                      std::pair<double, double> range) {
  check_nt(n, t);
  if (std::isnan(lambda_r) || lambda_r > 1.0)
    fail(Err::InvalidConfig, "spectral coefficient must be <= 1");
  if (!(range.second > range.first)) fail(Err::InvalidConfig, "range must satisfy b > a");
  double lam = std::max(lambda_r, 0.0);
  double nn = static_cast<double>(n);
  double w = range.second - range.first;
  double log_bound = kLn2 - ((1.0 - lam) / (1.0 + lam)) * 2.0 * nn * t * t / (w * w);
  BoundReport r = plain_report("fan", n, t, log_bound);
  r.notes.push_back("stationary-start assumption");
  if (lam >= 1.0) r.notes.push_back("zero spectral gap: bound is vacuous");
  if (lambda_r < 0.0) r.notes.push_back("negative spectral value clamped to 0");
  return r;
}

BoundReport marton_blowup_bound(std::size_t n, double t, double a, double log_pe) {
  check_nt(n, t);
  if (std::isnan(a) || a <= 0.0) fail(Err::NotContracting, "contraction margin a must be > 0");
  if (a > 1.0) fail(Err::InvalidConfig, "contraction margin a must be <= 1");
  if (log_pe > 0.0) fail(Err::InvalidConfig, "log P(E) must be <= 0");
  double nn = static_cast<double>(n);
  double floor = std::sqrt(-log_pe / nn) / a;
  if (log_pe < 0.0 && t <= floor)
    fail(Err::PreconditionT,
         "blow-up bound needs t > sqrt(-log P(E)/n)/a = " + std::to_string(floor));
  double d = a * t - std::sqrt(-log_pe / (2.0 * nn));
  BoundReport r = plain_report("marton", n, t, -2.0 * nn * d * d);
  r.centering = "event";
  return r;
}

CrossoverResult crossover_binary_kontorovich(double lambda, std::size_t n, double alpha) {
  check_lambda_flip(lambda);
  if (n < 2) fail(Err::InvalidConfig, "need n >= 2");
  if (std::isnan(alpha) || !(alpha > 1.0)) fail(Err::InvalidConfig, "alpha must be > 1 (or inf)");
  double beta = alpha == kInf ? 1.0 : alpha / (alpha - 1.0);
  double rho = 1.0 - 2.0 * lambda;
  double d = std::pow(rho, static_cast<double>(n)) - 1.0;
  double den = d * d - beta * lambda * lambda;
  if (den <= 0.0) fail(Err::NoCrossover, "mixing bound decays at least as fast at this order");
  double l2k = log_two_kappa(lambda, alpha);
  double nn = static_cast<double>(n);
  CrossoverResult r;
  r.pair = "ours-vs-kontorovich";
  r.t_bar = std::sqrt(d * d * (1.0 - 1.0 / nn) * l2k / (2.0 * den));
  double den_inf = 1.0 - beta * lambda * lambda;
  r.t_bar_asymptotic = den_inf > 0.0 ? std::sqrt(l2k / (2.0 * den_inf)) : kInf;
  r.check_t = 1.01 * r.t_bar;
  double eta = std::abs(rho);
  return finalize(r, binary_ours_log(lambda, n, r.check_t, alpha),
                  kontorovich_bound_homog(n, r.check_t, eta).log_bound);
}

CrossoverResult crossover_binary_fan(double lambda, std::size_t n) {
  check_lambda_flip(lambda);
  if (n < 2) fail(Err::InvalidConfig, "need n >= 2");
  if (lambda >= 0.5) fail(Err::NoCrossover, "spectral bound matches or beats ours at lambda >= 1/2");
  double nn = static_cast<double>(n);
  double l = std::log(2.0 * (1.0 - lambda));
  CrossoverResult r;
  r.pair = "ours-vs-fan";
  r.t_bar = std::sqrt((1.0 - 1.0 / nn) * (1.0 - lambda) / (2.0 * (1.0 - 2.0 * lambda)) * l);
  r.t_bar_asymptotic = std::sqrt((1.0 - lambda) / (2.0 * (1.0 - 2.0 * lambda)) * l);
  r.check_t = 1.01 * r.t_bar;
  return finalize(r, binary_ours_log(lambda, n, r.check_t, kInf),
                  fan_bound(n, r.check_t, 1.0 - 2.0 * lambda).log_bound);
}

CrossoverResult crossover_binary_marton(double lambda, std::size_t n) {
  check_lambda_flip(lambda);
  if (n < 2) fail(Err::InvalidConfig, "need n >= 2");
  double a = 2.0 * lambda;  // 1 - Dobrushin coefficient of the flip kernel
  if (a <= 0.0) fail(Err::NotContracting, "frozen chain: blow-up bound inapplicable");
  if (a >= 1.0) fail(Err::NoCrossover, "blow-up bound matches or beats ours at lambda >= 1/2");
  double nn = static_cast<double>(n);
  double cn = (nn - 1.0) * std::log(2.0 * (1.0 - lambda));
  CrossoverResult r;
  r.pair = "ours-vs-marton";
  r.t_bar = (std::sqrt(2.0 * nn * (2.0 * kLn2 + cn)) - a * std::sqrt(2.0 * nn * kLn2)) /
            (nn * (1.0 - a * a));
  r.t_bar_asymptotic = std::sqrt(2.0 * std::log(2.0 * (1.0 - lambda))) / (1.0 - a * a);
  r.check_t = 1.01 * r.t_bar;
  return finalize(r, median_bound_general_log(n, r.check_t, cn),
                  marton_blowup_bound(n, r.check_t, a, -kLn2).log_bound);
}

CrossoverResult crossover_general_fan(std::size_t n, double lambda_r, double log_step) {
  if (n < 2) fail(Err::InvalidConfig, "need n >= 2");
  if (!(log_step >= 0.0)) fail(Err::InvalidConfig, "per-step multiplier must be >= 1");
  double lam = std::max(lambda_r, 0.0);
  if (lam >= 1.0) fail(Err::NotContracting, "spectral gap is zero");
  if (lam <= 0.0) fail(Err::NoCrossover, "spectral bound is already the independent one");
  double nn = static_cast<double>(n);
  CrossoverResult r;
  r.pair = "ours-vs-fan-general";
  r.t_bar = std::sqrt((nn - 1.0) * (1.0 + lam) * log_step / (4.0 * nn * lam));
  r.t_bar_asymptotic = std::sqrt((1.0 + lam) * log_step / (4.0 * lam));
  r.check_t = 1.01 * r.t_bar;
  double ours = kLn2 - 2.0 * nn * r.check_t * r.check_t + (nn - 1.0) * log_step;
  return finalize(r, ours, fan_bound(n, r.check_t, lam).log_bound);
}

CrossoverResult crossover_general_kontorovich(std::size_t n, double m_n, double alpha,
                                              double log_norm, double min_log_p) {
  if (n < 2) fail(Err::InvalidConfig, "need n >= 2");
  if (std::isnan(alpha) || !(alpha > 1.0)) fail(Err::InvalidConfig, "alpha must be > 1 (or inf)");
  if (!(m_n >= 1.0)) fail(Err::InvalidConfig, "mixing norm must be >= 1");
  double beta = alpha == kInf ? 1.0 : alpha / (alpha - 1.0);
  double den = 4.0 * m_n * m_n - beta;
  if (den <= 0.0) fail(Err::NoCrossover, "mixing bound decays at least as fast at this order");
  double l_beta = beta * log_norm - min_log_p;  // beta times the per-step log multiplier
  if (!(l_beta >= 0.0)) fail(Err::InvalidConfig, "per-step multiplier must be >= 1");
  double nn = static_cast<double>(n);
  CrossoverResult r;
  r.pair = "ours-vs-kontorovich-general";
  r.t_bar = std::sqrt((nn - 1.0) / nn * 2.0 * m_n * m_n * l_beta / den);
  r.t_bar_asymptotic = std::sqrt(2.0 * m_n * m_n * l_beta / den);
  r.check_t = 1.01 * r.t_bar;
  double tt = r.check_t * r.check_t;
  double ours = (kLn2 - 2.0 * nn * tt + (nn - 1.0) * l_beta) / beta;
  double base = kLn2 - nn * tt / (2.0 * m_n * m_n);
  return finalize(r, ours, base);
}

double samson_matrix_norm(const ProcessSpec& proc, std::size_t n) {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  if (n > 6) fail(Err::TooLarge, "dependence matrix enumeration is capped at n = 6");
  using Suffix = std::vector<std::int64_t>;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) gamma(i, i) = 1.0;

  // law of (X_{i+1},..,X_n) given the prefix x_1..x_i held in buf[0..i).
  auto continuation = [&](std::vector<std::int64_t>& buf, std::size_t i) {
    std::map<Suffix, double> law;
    auto walk = [&](auto&& self, std::size_t pos, double p) -> void {
      if (pos > n) {
        Suffix s(buf.begin() + static_cast<std::ptrdiff_t>(i), buf.begin() + static_cast<std::ptrdiff_t>(n));
        law[s] += p;
        return;
      }
      Dist step = conditional_dist(proc, pos,
                                   std::span<const std::int64_t>(buf.data(), pos - 1));
      for (std::size_t s = 0; s < step.size(); ++s) {
        if (!step.in_support(s)) continue;
        buf[pos - 1] = step.states()[s];
        self(self, pos + 1, p * step.prob(s));
      }
    };
    walk(walk, i + 1, 1.0);
    return law;
  };

  auto handle_prefix = [&](std::span<const std::int64_t> prefix) {
    std::size_t i = prefix.size() + 1;  // coordinate being perturbed
    Dist cond = conditional_dist(proc, i, prefix);
    std::vector<std::size_t> sup = cond.support();
    std::vector<std::int64_t> buf(n);
    std::copy(prefix.begin(), prefix.end(), buf.begin());
    std::vector<std::map<Suffix, double>> laws;
    for (std::size_t s : sup) {
      buf[i - 1] = cond.states()[s];
      laws.push_back(continuation(buf, i));
    }
    for (std::size_t a = 0; a < laws.size(); ++a) {
      for (std::size_t b = a + 1; b < laws.size(); ++b) {
        // Project both suffix laws onto X_j..X_n and take TV, all j > i.
        for (std::size_t j = i + 1; j <= n; ++j) {
          std::map<Suffix, double> pa, pb;
          auto project = [&](const std::map<Suffix, double>& src, std::map<Suffix, double>& dst) {
            for (const auto& [key, p] : src)
              dst[Suffix(key.begin() + static_cast<std::ptrdiff_t>(j - i - 1), key.end())] += p;
          };
          project(laws[a], pa);
          project(laws[b], pb);
          double tv = 0.0;
          for (const auto& [key, p] : pa) {
            auto it = pb.find(key);
            tv += std::abs(p - (it == pb.end() ? 0.0 : it->second));
          }
          for (const auto& [key, p] : pb)
            if (pa.find(key) == pa.end()) tv += p;
          tv *= 0.5;
          auto& cell = gamma(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1));
          cell = std::max(cell, tv);
        }
      }
    }
  };

  for (std::size_t i = 1; i < n; ++i) {
    if (i == 1) {
      handle_prefix({});
    } else {
      for_each_path(proc, i - 1,
                    [&](std::span<const std::int64_t> prefix, double) { handle_prefix(prefix); });
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gamma);
  return svd.singularValues()(0);
}

void marton_coupling_bound() {
  fail(Err::Unsupported,
       "the coupling-matrix baseline is not implemented for finite chains here");
}

}  // namespace depbound
