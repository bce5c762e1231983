#include "depbound/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "depbound/errors.hpp"

namespace depbound {

Kernel Kernel::from_rows(std::vector<std::int64_t> states, std::vector<Dist> rows) {
  if (states.empty() || rows.size() != states.size())
    fail(Err::InvalidConfig, "kernel needs one row per state");
  for (const Dist& r : rows)
    if (r.states() != states) fail(Err::DomainMismatch, "kernel row states must match the domain");
  Kernel k;
  k.states_ = std::move(states);
  k.rows_ = std::move(rows);
  return k;
}

Kernel Kernel::from_linear(std::vector<std::int64_t> states,
                           const std::vector<std::vector<double>>& rows) {
  std::vector<Dist> ds;
  ds.reserve(rows.size());
  for (const auto& r : rows) ds.push_back(Dist::from_linear(states, r));
  return from_rows(std::move(states), std::move(ds));
}

Kernel Kernel::from_rational(std::vector<std::int64_t> states,
                             const std::vector<std::vector<Rational>>& rows) {
  std::vector<Dist> ds;
  ds.reserve(rows.size());
  for (const auto& r : rows) ds.push_back(Dist::from_rational(states, r));
  return from_rows(std::move(states), std::move(ds));
}

Kernel Kernel::binary_stay(const ParsedProb& eps) {
  std::vector<std::int64_t> st{0, 1};
  if (eps.exact) {
    Rational e = *eps.exact;
    auto c = Rational::sub(Rational{1, 1}, e);
    if (!c) fail(Err::InvalidConfig, "bad stay probability");
    return from_rational(st, {{e, *c}, {*c, e}});
  }
  double e = eps.value;
  return from_linear(st, {{e, 1.0 - e}, {1.0 - e, e}});
}

Kernel Kernel::binary_stay(double eps) { return binary_stay(ParsedProb{std::nullopt, eps}); }

Kernel Kernel::binary_flip(const ParsedProb& lambda) {
  if (lambda.exact) {
    auto stay = Rational::sub(Rational{1, 1}, *lambda.exact);
    if (!stay) fail(Err::InvalidConfig, "bad flip probability");
    return binary_stay(ParsedProb{stay, stay->value()});
  }
  return binary_stay(ParsedProb{std::nullopt, 1.0 - lambda.value});
}

Kernel Kernel::binary_flip(double lambda) { return binary_flip(ParsedProb{std::nullopt, lambda}); }

bool Kernel::has_exact() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Dist& d) { return d.has_exact(); });
}

std::optional<double> Kernel::dsbs_flip() const {
  if (size() != 2) return std::nullopt;
  double stay0 = entry(0, 0), stay1 = entry(1, 1);
  if (std::fabs(stay0 - stay1) > 1e-14) return std::nullopt;
  return entry(0, 1);
}

std::string Kernel::str() const {
  std::ostringstream os;
  for (std::size_t x = 0; x < size(); ++x) os << states_[x] << " -> " << rows_[x].str() << "\n";
  return os.str();
}

Dist apply_kernel(const Dist& mu, const Kernel& k) {
  if (mu.states() != k.states()) fail(Err::DomainMismatch, "apply_kernel state sets differ");
  std::size_t m = k.size();
  if (mu.has_exact() && k.has_exact()) {
    std::vector<Rational> out(m, Rational{0, 1});
    bool ok = true;
    for (std::size_t y = 0; y < m && ok; ++y) {
      Rational acc{0, 1};
      for (std::size_t x = 0; x < m; ++x) {
        auto term = Rational::mul(mu.exact()[x], k.row(x).exact()[y]);
        if (!term) { ok = false; break; }
        auto sum = Rational::add(acc, *term);
        if (!sum) { ok = false; break; }
        acc = *sum;
      }
      out[y] = acc;
    }
    if (ok) return Dist::from_rational(k.states(), std::move(out));
  }
  std::vector<double> out_log(m, kNegInf);
  for (std::size_t y = 0; y < m; ++y) {
    std::vector<double> terms;
    terms.reserve(m);
    for (std::size_t x = 0; x < m; ++x) {
      double t = mu.log_prob(x) + k.log_entry(x, y);
      if (t != kNegInf) terms.push_back(t);
    }
    out_log[y] = log_sum_exp(terms);
  }
  // True mass is exactly 1; subtract the float residual so the Dist
  // invariant holds bit-for-bit downstream.
  double resid = log_sum_exp(out_log);
  for (double& v : out_log)
    if (v != kNegInf) v -= resid;
  return Dist::from_log(k.states(), std::move(out_log));
}

Kernel k_step(const Kernel& k, unsigned kappa) {
  if (kappa == 0) fail(Err::InvalidConfig, "k_step needs kappa >= 1");
  std::size_t m = k.size();
  bool exact = k.has_exact();
  if (exact) {
    std::vector<std::vector<Rational>> acc(m), base(m);
    for (std::size_t x = 0; x < m; ++x) base[x] = k.row(x).exact();
    bool first = true;
    std::vector<std::vector<Rational>> cur = base;
    unsigned e = kappa;
    bool ok = true;
    auto mat_mul = [m, &ok](const std::vector<std::vector<Rational>>& a,
                            const std::vector<std::vector<Rational>>& b) {
      std::vector<std::vector<Rational>> c(m, std::vector<Rational>(m, Rational{0, 1}));
      for (std::size_t i = 0; i < m && ok; ++i)
        for (std::size_t j = 0; j < m && ok; ++j) {
          Rational s{0, 1};
          for (std::size_t t = 0; t < m; ++t) {
            auto p = Rational::mul(a[i][t], b[t][j]);
            if (!p) { ok = false; break; }
            auto q = Rational::add(s, *p);
            if (!q) { ok = false; break; }
            s = *q;
          }
          c[i][j] = s;
        }
      return c;
    };
    while (e > 0 && ok) {
      if (e & 1u) { acc = first ? cur : mat_mul(acc, cur); first = false; }
      e >>= 1u;
      if (e > 0) cur = mat_mul(cur, cur);
    }
    if (ok) return Kernel::from_rational(k.states(), acc);
  }
  Eigen::MatrixXd a(m, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) a(x, y) = k.entry(x, y);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd cur = a;
  unsigned e = kappa;
  while (e > 0) {
    if (e & 1u) acc = acc * cur;
    e >>= 1u;
    if (e > 0) cur = cur * cur;
  }
  std::vector<std::vector<double>> rows(m, std::vector<double>(m));
  for (std::size_t x = 0; x < m; ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < m; ++y) s += std::max(acc(x, y), 0.0);
    for (std::size_t y = 0; y < m; ++y) rows[x][y] = std::max(acc(x, y), 0.0) / s;
  }
  return Kernel::from_linear(k.states(), rows);
}

Kernel backward_channel(const Kernel& k, const Dist& mu) {
  if (mu.states() != k.states()) fail(Err::DomainMismatch, "backward_channel state sets differ");
  Dist push = apply_kernel(mu, k);
  std::size_t m = k.size();
  for (std::size_t y = 0; y < m; ++y)
    if (!push.in_support(y))
      fail(Err::ZeroMassState,
           "output state " + std::to_string(k.states()[y]) + " has zero pushforward mass");
  bool exact = mu.has_exact() && k.has_exact() && push.has_exact();
  if (exact) {
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(m, Rational{0, 1}));
    bool ok = true;
    for (std::size_t y = 0; y < m && ok; ++y)
      for (std::size_t x = 0; x < m; ++x) {
        auto num = Rational::mul(mu.exact()[x], k.row(x).exact()[y]);
        if (!num) { ok = false; break; }
        auto r = Rational::div(*num, push.exact()[y]);
        if (!r) { ok = false; break; }
        rows[y][x] = *r;
      }
    if (ok) return Kernel::from_rational(k.states(), rows);
  }
  std::vector<Dist> rows;
  rows.reserve(m);
  for (std::size_t y = 0; y < m; ++y) {
    std::vector<double> lp(m, kNegInf);
    for (std::size_t x = 0; x < m; ++x) {
      double t = mu.log_prob(x) + k.log_entry(x, y);
      lp[x] = (t == kNegInf) ? kNegInf : t - push.log_prob(y);
    }
    double resid = log_sum_exp(lp);
    for (double& v : lp)
      if (v != kNegInf) v -= resid;
    rows.push_back(Dist::from_log(k.states(), std::move(lp)));
  }
  return Kernel::from_rows(k.states(), std::move(rows));
}

double dobrushin_tv(const Kernel& k) {
  double best = 0.0;
  for (std::size_t x = 0; x < k.size(); ++x)
    for (std::size_t y = x + 1; y < k.size(); ++y)
      best = std::max(best, total_variation(k.row(x), k.row(y)));
  return best;
}

namespace {

struct NormProblem {
  Eigen::MatrixXd k;        // row-stochastic matrix
  Eigen::VectorXd mu_out;   // output-norm weights
  Eigen::VectorXd mu_in;    // input-norm weights
  double alpha;
  double gamma;

  // log ||Kf||_alpha - log ||f||_gamma; alpha may be +inf (weighted ess-sup
  // over states with positive mu_out).
  double objective(const Eigen::VectorXd& f) const {
    Eigen::VectorXd kf = k * f;
    double num;
    if (alpha == kPosInf) {
      num = kNegInf;
      for (Eigen::Index i = 0; i < kf.size(); ++i)
        if (mu_out(i) > 0.0) num = std::max(num, std::log(std::fabs(kf(i))));
    } else {
      double s = 0.0;
      for (Eigen::Index i = 0; i < kf.size(); ++i)
        s += mu_out(i) * std::pow(std::fabs(kf(i)), alpha);
      num = s == 0.0 ? kNegInf : std::log(s) / alpha;
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i)
      s += mu_in(i) * std::pow(std::fabs(f(i)), gamma);
    if (s == 0.0) return kNegInf;
    return num - std::log(s) / gamma;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& f) const {
    // (Sub)gradient of the log ratio; alpha = inf uses the argmax row.
    Eigen::VectorXd kf = k * f;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(f.size());
    if (alpha == kPosInf) {
      Eigen::Index best = -1;
      double bv = -1.0;
      for (Eigen::Index i = 0; i < kf.size(); ++i)
        if (mu_out(i) > 0.0 && std::fabs(kf(i)) > bv) { bv = std::fabs(kf(i)); best = i; }
      if (best >= 0 && kf(best) != 0.0)
        g = (kf(best) > 0 ? 1.0 : -1.0) / std::fabs(kf(best)) * k.row(best).transpose();
    } else {
      double snum = 0.0;
      for (Eigen::Index i = 0; i < kf.size(); ++i)
        snum += mu_out(i) * std::pow(std::fabs(kf(i)), alpha);
      for (Eigen::Index i = 0; i < kf.size(); ++i) {
        if (kf(i) == 0.0) continue;
        double w = mu_out(i) * std::pow(std::fabs(kf(i)), alpha - 1.0) *
                   (kf(i) > 0 ? 1.0 : -1.0) / snum;
        g += w * k.row(i).transpose();
      }
    }
    double sden = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i)
      sden += mu_in(i) * std::pow(std::fabs(f(i)), gamma);
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      if (f(j) == 0.0) continue;
      g(j) -= mu_in(j) * std::pow(std::fabs(f(j)), gamma - 1.0) * (f(j) > 0 ? 1.0 : -1.0) / sden;
    }
    return g;
  }
};

double polish_start(const NormProblem& p, Eigen::VectorXd f) {
  double norm = f.norm();
  if (norm == 0.0) return kNegInf;
  f /= norm;
  double val = p.objective(f);
  double step = 0.5;
  for (int it = 0; it < 4000; ++it) {
    Eigen::VectorXd g = p.gradient(f);
    double gn = g.norm();
    if (gn < 1e-13) break;
    bool improved = false;
    while (step > 1e-16) {
      Eigen::VectorXd cand = f + step * g;
      cand /= cand.norm();
      double cv = p.objective(cand);
      if (cv > val + 1e-18) {
        f = cand;
        val = cv;
        improved = true;
        step = std::min(step * 1.7, 4.0);
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return val;
}

NormResult norm_impl(const NormProblem& p, std::uint64_t seed) {
  std::size_t m = static_cast<std::size_t>(p.k.rows());
  std::vector<std::pair<double, Eigen::VectorXd>> finals;
  auto consider = [&](const Eigen::VectorXd& f0) {
    double v = polish_start(p, f0);
    if (v != kNegInf) finals.emplace_back(v, f0);
  };
  consider(Eigen::VectorXd::Ones(m));
  if (m <= 4) {
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      Eigen::VectorXd f(m);
      for (std::size_t i = 0; i < m; ++i) f(i) = (mask >> i) & 1u ? -1.0 : 1.0;
      consider(f);
    }
  }
  RngStream rng(seed, 0x6f70);
  for (int s = 0; s < 32; ++s) {
    Eigen::VectorXd f(m);
    for (std::size_t i = 0; i < m; ++i) f(i) = rng.next_gaussian();
    consider(f);
  }
  if (m == 2) {
    // Dense angle scan with golden-section refinement; exact enough to
    // resolve hypercontractive crossings near the constant function.
    auto at = [&](double th) {
      Eigen::VectorXd f(2);
      f << std::cos(th), std::sin(th);
      return p.objective(f);
    };
    constexpr int kGrid = 40000;
    double best_th = 0.0, best_v = kNegInf;
    for (int i = 0; i < kGrid; ++i) {
      double th = 2.0 * M_PI * i / kGrid;
      double v = at(th);
      if (v > best_v) { best_v = v; best_th = th; }
    }
    double lo = best_th - 2.0 * M_PI / kGrid, hi = best_th + 2.0 * M_PI / kGrid;
    constexpr double kPhi = 0.6180339887498949;
    double x1 = hi - kPhi * (hi - lo), x2 = lo + kPhi * (hi - lo);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 200; ++it) {
      if (f1 < f2) {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + kPhi * (hi - lo); f2 = at(x2);
      } else {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - kPhi * (hi - lo); f1 = at(x1);
      }
    }
    double th = 0.5 * (lo + hi);
    Eigen::VectorXd f(2);
    f << std::cos(th), std::sin(th);
    finals.emplace_back(std::max(at(th), best_v), f);
  }
  if (finals.empty()) fail(Err::ConvergenceFailure, "no usable operator-norm start");
  std::sort(finals.begin(), finals.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::size_t quart = std::max<std::size_t>(1, finals.size() / 4);
  double spread = finals.front().first - finals[quart - 1].first;
  if (!(spread <= 1e-6))
    fail(Err::ConvergenceFailure,
         "operator-norm starts disagree by " + std::to_string(spread) + " in log");
  NormResult r;
  r.value = std::max(std::exp(finals.front().first), 1.0);
  r.spread = spread;
  const Eigen::VectorXd& f = finals.front().second;
  r.maximizer.assign(f.data(), f.data() + f.size());
  return r;
}

NormProblem make_problem(const Kernel& k, const Dist& mu_out, const Dist& mu_in, double alpha,
                         double gamma) {
  if (mu_out.states() != k.states() || mu_in.states() != k.states())
    fail(Err::DomainMismatch, "operator_norm measure states differ from kernel");
  if (!(alpha >= 1.0) || !(gamma >= 1.0))
    fail(Err::InvalidConfig, "operator_norm needs alpha, gamma >= 1");
  if (gamma == kPosInf && alpha != kPosInf)
    fail(Err::InvalidConfig, "gamma = inf is only supported together with alpha = inf");
  std::size_t m = k.size();
  NormProblem p;
  p.k.resize(m, m);
  p.mu_out.resize(m);
  p.mu_in.resize(m);
  for (std::size_t x = 0; x < m; ++x) {
    p.mu_out(x) = mu_out.prob(x);
    p.mu_in(x) = mu_in.prob(x);
    for (std::size_t y = 0; y < m; ++y) p.k(x, y) = k.entry(x, y);
  }
  p.alpha = alpha;
  p.gamma = gamma;
  return p;
}

}  // namespace

namespace {

// sup-to-sup norm of a row-(sub)stochastic matrix is the max absolute row
// sum, 1 for a proper kernel; handled in closed form.
NormResult sup_norm(const Kernel& k) {
  NormResult r;
  double best = 0.0;
  for (std::size_t x = 0; x < k.size(); ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < k.size(); ++y) s += std::fabs(k.entry(x, y));
    best = std::max(best, s);
  }
  r.value = best;
  r.maximizer.assign(k.size(), 1.0);
  return r;
}

}  // namespace

NormResult operator_norm(const Kernel& k, const Dist& mu, double alpha, double gamma,
                         std::uint64_t seed) {
  if (alpha == kPosInf && gamma == kPosInf) return sup_norm(k);
  return norm_impl(make_problem(k, mu, mu, alpha, gamma), seed);
}

NormResult operator_norm_two_measure(const Kernel& k, const Dist& mu_out, const Dist& mu_in,
                                     double alpha, double gamma, std::uint64_t seed) {
  if (alpha == kPosInf && gamma == kPosInf) return sup_norm(k);
  return norm_impl(make_problem(k, mu_out, mu_in, alpha, gamma), seed);
}

Dist stationary_dist(const Kernel& k) {
  std::size_t m = k.size();
  Eigen::MatrixXd a(m, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) a(x, y) = k.entry(x, y);
  Eigen::RowVectorXd mu = Eigen::RowVectorXd::Constant(m, 1.0 / static_cast<double>(m));
  Eigen::RowVectorXd cesaro = mu;
  for (int it = 1; it <= 200000; ++it) {
    Eigen::RowVectorXd next = mu * a;
    cesaro = (cesaro * it + next) / (it + 1.0);
    if ((next - mu).lpNorm<Eigen::Infinity>() < 1e-15 && it > 8) { cesaro = next; break; }
    mu = next;
    if (it % 64 == 0) {
      Eigen::RowVectorXd fixed = cesaro * a - cesaro;
      if (fixed.lpNorm<Eigen::Infinity>() < 1e-14) break;
    }
  }
  Eigen::RowVectorXd resid = cesaro * a - cesaro;
  if (resid.lpNorm<Eigen::Infinity>() > 1e-10)
    fail(Err::NoStationary, "power iteration did not reach a stationary law");
  std::vector<double> probs(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += std::max(cesaro(i), 0.0);
  for (std::size_t i = 0; i < m; ++i) probs[i] = std::max(cesaro(i), 0.0) / total;
  return Dist::from_linear(k.states(), probs);
}

KernelAnalysis spectral(const Kernel& k) {
  KernelAnalysis out;
  out.stationary = stationary_dist(k);
  out.eta_tv = dobrushin_tv(k);
  std::size_t m = k.size();
  const Dist& pi = out.stationary;
  bool reversible = true;
  for (std::size_t x = 0; x < m && reversible; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      double lhs = pi.prob(x) * k.entry(x, y);
      double rhs = pi.prob(y) * k.entry(y, x);
      if (std::fabs(lhs - rhs) > 1e-12 * std::max(1.0, std::fabs(lhs) + std::fabs(rhs))) {
        reversible = false;
        break;
      }
    }
  out.reversible = reversible;
  Eigen::MatrixXd sym(m, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      double px = std::sqrt(std::max(pi.prob(x), 0.0));
      double py = std::sqrt(std::max(pi.prob(y), 0.0));
      sym(x, y) = py > 0 ? px * k.entry(x, y) / py : 0.0;
    }
  if (reversible) {
    // D^{1/2} K D^{-1/2} is symmetric; its spectrum equals K's.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
    std::vector<double> eig(es.eigenvalues().data(), es.eigenvalues().data() + m);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    out.spectrum = eig;
    if (m >= 2) out.second_eigenvalue = eig[1];
    double worst = 0.0;
    for (std::size_t i = 1; i < m; ++i) worst = std::max(worst, std::fabs(eig[i]));
    out.absolute_gap = 1.0 - worst;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sym);
    double s2 = m >= 2 ? svd.singularValues()(1) : 0.0;
    out.absolute_gap = 1.0 - std::min(s2, 1.0);
    out.gap_is_singular_value_bound = true;
  }
  return out;
}

double dsbs_gamma_star(double lambda, double alpha) {
  if (!(lambda >= 0.0) || !(lambda <= 0.5))
    fail(Err::InvalidConfig, "dsbs_gamma_star needs lambda in [0, 1/2]");
  double rho2 = (1.0 - 2.0 * lambda) * (1.0 - 2.0 * lambda);
  if (alpha == kPosInf) return rho2 == 0.0 ? 1.0 : kPosInf;
  if (!(alpha > 1.0)) fail(Err::InvalidConfig, "dsbs_gamma_star needs alpha > 1");
  return 1.0 + rho2 * (alpha - 1.0);
}

double dsbs_renyi_sdpi_rhs(double lambda, double alpha) {
  if (!(lambda >= 0.0) || !(lambda <= 0.5))
    fail(Err::InvalidConfig, "dsbs_renyi_sdpi_rhs needs lambda in [0, 1/2]");
  double rho = 1.0 - 2.0 * lambda;
  if (rho == 0.0) return 0.0;
  if (alpha == kPosInf) return rho / (1.0 - lambda);
  if (!(alpha > 1.0)) fail(Err::InvalidConfig, "dsbs_renyi_sdpi_rhs needs alpha > 1");
  return std::pow(rho, 1.0 + 1.0 / alpha) / std::pow(1.0 - lambda, (alpha - 1.0) / alpha);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') { out.push_back(cur); cur.clear(); }
    else if (c != '\r' && c != ' ' && c != '\t') cur.push_back(c);
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Kernel kernel_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::int64_t> states;
  std::vector<std::vector<ParsedProb>> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (header) {
      for (const auto& c : cells) {
        try {
          states.push_back(std::stoll(c));
        } catch (const std::logic_error&) {
          fail(Err::IoError, "kernel CSV header must hold integer state labels");
        }
      }
      header = false;
      continue;
    }
    if (cells.size() != states.size())
      fail(Err::IoError, "kernel CSV row width differs from header");
    std::vector<ParsedProb> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_prob(c));
    rows.push_back(std::move(row));
  }
  if (states.empty() || rows.size() != states.size())
    fail(Err::IoError, "kernel CSV must be square with a header row");
  bool exact = true;
  for (const auto& r : rows)
    for (const auto& p : r)
      if (!p.exact) exact = false;
  if (exact) {
    std::vector<std::vector<Rational>> rs;
    for (const auto& r : rows) {
      std::vector<Rational> rr;
      for (const auto& p : r) rr.push_back(*p.exact);
      rs.push_back(std::move(rr));
    }
    return Kernel::from_rational(states, rs);
  }
  std::vector<std::vector<double>> rs;
  for (const auto& r : rows) {
    std::vector<double> rr;
    for (const auto& p : r) rr.push_back(p.value);
    rs.push_back(std::move(rr));
  }
  return Kernel::from_linear(states, rs);
}

Kernel kernel_from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open kernel CSV '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return kernel_from_csv(ss.str());
}

}  // namespace depbound
