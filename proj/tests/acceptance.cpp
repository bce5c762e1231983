// Acceptance runner: ten end-to-end checks against exact oracles, closed
// forms, and seeded Monte Carlo. One pass/fail line per check; the exit
// code is the number of failures. Asymptotic claims are exercised at desk
// scale through the finite-n closed forms plus the oracles below.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "depbound/baselines.hpp"
#include "depbound/dist.hpp"
#include "depbound/engine.hpp"
#include "depbound/errors.hpp"
#include "depbound/harness.hpp"
#include "depbound/kernel.hpp"
#include "depbound/rng.hpp"
#include "depbound/scenarios.hpp"
#include "depbound/tensorize.hpp"

using namespace depbound;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Check {
  bool ok = true;
  std::string note;

  void req(bool cond, const std::string& msg) {
    if (cond) return;
    ok = false;
    if (note.size() < 600) note += "\n         - " + msg;
  }
  void req_close(double got, double want, double rel, const std::string& what) {
    req(std::abs(got - want) <= rel * std::max(1.0, std::abs(want)),
        what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
  }
};

double beta_of(double alpha) { return alpha == kPosInf ? 1.0 : alpha / (alpha - 1.0); }

ProcessSpec coin_pm1() { return ProcessSpec::independent({Dist::uniform({-1, 1})}); }

// --- 1. binary-kernel golden values stay exact ------------------------------
void golden_values(Check& c) {
  Dist nu = Dist::from_rational({0, 1}, {Rational{1, 3}, Rational{2, 3}});
  Dist pi = Dist::from_rational({0, 1}, {Rational{1, 2}, Rational{1, 2}});
  Kernel k1 = Kernel::binary_stay(parse_prob("1/3"));
  Kernel k2 = Kernel::binary_stay(parse_prob("1/5"));

  Dist nuk = apply_kernel(nu, k1);
  Dist pik = apply_kernel(pi, k1);
  c.req(nuk.has_exact() && nuk.exact().size() == 2, "pushforward lost rational mode");
  if (nuk.has_exact()) {
    c.req(nuk.exact()[0] == (Rational{5, 9}) && nuk.exact()[1] == (Rational{4, 9}),
          "nu K1 != (5/9, 4/9) exactly");
  }

  auto top = hellinger_integral_exact(nuk, pik, 2);
  auto bot = hellinger_integral_exact(nu, pi, 2);
  c.req(top.has_value() && *top == (Rational{82, 81}), "H_2(nu K1 || pi K1) != 82/81");
  c.req(bot.has_value() && *bot == (Rational{10, 9}), "H_2(nu || pi) != 10/9");
  c.req_close(std::exp(hellinger_integral(nuk, pik, 2.0).log), 82.0 / 81.0, 1e-12,
              "H_2(nu K1 || pi K1) double path");
  c.req_close(std::exp(hellinger_integral(nu, pi, 2.0).log), 10.0 / 9.0, 1e-12,
              "H_2(nu || pi) double path");
  if (top && bot) {
    auto ratio = Rational::div(*top, *bot);
    c.req(ratio.has_value() && *ratio == (Rational{41, 45}), "integral ratio != 41/45");
  }

  double chi_top = phi_divergence(DivergenceKind::ChiSq, nuk, pi);
  double chi_bot = phi_divergence(DivergenceKind::ChiSq, nu, pi);
  c.req_close(chi_top / chi_bot, 1.0 / 9.0, 1e-12, "chi-square ratio");

  c.req_close(dobrushin_tv(k1), 1.0 / 3.0, 1e-12, "eta_TV(K1)");
  c.req_close(dobrushin_tv(k2), 3.0 / 5.0, 1e-12, "eta_TV(K2)");

  Dist delta = Dist::delta(0, {0, 1});
  Dist dk2 = apply_kernel(delta, k2);  // (1/5, 4/5)
  double r6 = renyi_divergence(dk2, pi, 6.0) / renyi_divergence(delta, pi, 6.0);
  c.req(std::abs(r6 - 0.6138) <= 1e-3,
        "order-6 divergence ratio " + std::to_string(r6) + " != 0.6138 (1e-3)");
}

// --- 2. independent-case recovery of the bounded-difference bound -----------
void mcdiarmid_recovery(Check& c) {
  int points = 0;
  for (std::size_t n = 5; n <= 50; n += 5)
    for (int k = 1; k <= 10; ++k) {
      double t = 0.05 * k;
      BoundParams p;
      p.n = n;
      p.t = t;
      p.alpha = kPosInf;  // beta = 1, certificate defaults to all-1/n
      BoundReport r = mcdiarmid_dep_bound(p, 0.0);
      double want = kLn2 - 2.0 * static_cast<double>(n) * t * t;
      c.req(std::abs(r.log_bound - want) <= 1e-12 * std::max(1.0, std::abs(want)),
            "grid point n=" + std::to_string(n) + " t=" + std::to_string(t));
      ++points;
    }
  c.req(points == 100, "grid must have 100 points");
}

// --- 3. tensorisation sandwich on enumerable processes ----------------------
void sandwich(Check& c) {
  struct P {
    std::string label;
    ProcessSpec proc;
    bool markov;
  };
  std::vector<P> procs = {{"binary(0.10)", binary_chain(0.1), true},
                          {"binary(0.25)", binary_chain(0.25), true},
                          {"binary(0.40)", binary_chain(0.4), true},
                          {"walk", ProcessSpec::ssrw(), true},
                          {"full-history", ProcessSpec::nonmarkov_binary(), false}};
  for (const auto& p : procs)
    for (std::size_t n = 2; n <= 12; ++n)
      for (double a : {1.5, 2.0, 4.0}) {
        double exact = exact_joint_hellinger(p.proc, n, a).log;
        double up = (p.markov ? tensor_upper_markov(p.proc, n, a)
                              : tensor_upper_general(p.proc, n, a))
                        .log_value;
        double lo = (p.markov ? tensor_lower_markov(p.proc, n, a)
                              : tensor_lower_general(p.proc, n, a))
                        .log_value;
        std::string at = p.label + " n=" + std::to_string(n) + " alpha=" + std::to_string(a);
        c.req(lo <= exact + 1e-10, "lower > exact at " + at);
        c.req(exact <= up + 1e-10, "exact > upper at " + at);
      }
}

// --- 4. walk budget: exact values and per-step products inside the envelope -
void walk_budget(Check& c) {
  ProcessSpec walk = ProcessSpec::ssrw();
  // Exact joint integral against the two-sided budget, enumerable range.
  for (std::size_t n = 2; n <= 12; ++n) {
    double nn = static_cast<double>(n);
    for (double a : {1.5, 2.0, 4.0}) {
      double beta = beta_of(a);
      double bits = exact_joint_hellinger(walk, n, a).log / (a * kLn2);
      std::string at = "n=" + std::to_string(n) + " alpha=" + std::to_string(a);
      c.req(bits >= (nn - 2.0) / (4.0 * beta) - 1e-9, "exact below lower budget at " + at);
      c.req(bits <= nn * (nn - 1.0) / (2.0 * beta) + 1e-9, "exact above upper budget at " + at);
    }
    // Density-ratio extreme (beta = 1): same envelope in plain bits.
    double bits_inf = exact_joint_esssup_log(walk, n) / kLn2;
    c.req(bits_inf >= (nn - 2.0) / 4.0 - 1e-9, "ess-sup below lower budget at n=" + std::to_string(n));
    c.req(bits_inf <= nn * (nn - 1.0) / 2.0 + 1e-9,
          "ess-sup above upper budget at n=" + std::to_string(n));
  }
  // Per-step product obeys the upper budget far past the enumerable range.
  for (std::size_t n : {25u, 50u, 100u, 200u}) {
    double nn = static_cast<double>(n);
    for (double a : {1.5, 2.0, 4.0}) {
      double beta = beta_of(a);
      double bits = tensor_upper_markov(walk, n, a).log_value / (a * kLn2);
      c.req(bits <= nn * (nn - 1.0) / (2.0 * beta) + 1e-9,
            "per-step product above budget at n=" + std::to_string(n) +
                " alpha=" + std::to_string(a));
    }
    double bits_inf = tensor_upper_markov_esssup_log(walk, n) / kLn2;
    c.req(bits_inf <= nn * (nn - 1.0) / 2.0 + 1e-9,
          "per-step ess-sup product above budget at n=" + std::to_string(n));
  }
}

// --- 5. exact tails never exceed active bounds ------------------------------
void dominance(Check& c) {
  auto check_bound = [&](const ProcessSpec& proc, const PathFunctional& f, Center center,
                         double t, std::size_t n, const BoundReport& r, const std::string& at) {
    if (r.trivial) return;  // vacuous bounds are flagged, not compared
    TailQuery q{proc, n, f, center, 0.0, t};
    double p = exact_tail(q).prob;
    if (p <= 0.0) return;
    c.req(std::log(p) <= r.log_bound + 1e-10,
          "exact tail above " + r.method + " at " + at +
              " (log p=" + std::to_string(std::log(p)) +
              ", log bound=" + std::to_string(r.log_bound) + ")");
  };
  PathFunctional ones{PathFunctional::Kind::FractionOnes};
  PathFunctional end{PathFunctional::Kind::Endpoint};

  for (double lam : {0.1, 0.25, 0.4}) {
    ProcessSpec proc = binary_chain(lam);
    for (std::size_t n : {4u, 8u, 12u})
      for (int k = 1; k <= 20; ++k) {
        double t = k / 20.0;
        std::string at = "binary(" + std::to_string(lam) + ") n=" + std::to_string(n) +
                         " t=" + std::to_string(t);
        for (double a : {2.0, kPosInf}) {
          check_bound(proc, ones, Center::ProductMean, t, n,
                      binary_chain_bound(lam, n, t, a), at);
          BoundParams bp;
          bp.n = n;
          bp.t = t;
          bp.alpha = a;
          for (ChainRoute route : {ChainRoute::Tensor, ChainRoute::Hyper, ChainRoute::Sdpi})
            check_bound(proc, ones, Center::ProductMean, t, n,
                        markov_chain_bound(proc, bp, route), at);
        }
      }
  }

  ProcessSpec walk = ProcessSpec::ssrw();
  for (std::size_t n : {4u, 8u, 12u})
    for (int k = 1; k <= 20; ++k) {
      double t = k / 20.0;
      std::string at = "walk n=" + std::to_string(n) + " t=" + std::to_string(t);
      for (double a : {2.0, kPosInf}) {
        check_bound(walk, end, Center::ProductMean, t, n, ssrw_bound(n, t, a), at);
        check_bound(walk, end, Center::JointMean, t, n,
                    ssrw_bound(n, t, a, Centering::JointMean), at + " (joint mean)");
      }
    }

  ProcessSpec nm = ProcessSpec::nonmarkov_binary();
  for (std::size_t n : {4u, 8u, 12u})
    for (int k = 1; k <= 20; ++k) {
      double t = k / 20.0;
      std::string at = "full-history n=" + std::to_string(n) + " t=" + std::to_string(t);
      check_bound(nm, ones, Center::ProductMean, t, n, nonmarkov_bound_best(n, t), at);
      check_bound(nm, ones, Center::ProductMean, t, n, nonmarkov_bound(n, t, 2.0), at);
    }

  ProcessSpec coin = coin_pm1();
  for (std::size_t n : {4u, 8u, 12u})
    for (int k = 1; k <= 20; ++k) {
      double t = k / 20.0;
      BoundParams bp;
      bp.n = n;
      bp.t = t;
      bp.alpha = kPosInf;
      check_bound(coin, ones, Center::ProductMean, t, n, mcdiarmid_dep_bound(bp, 0.0),
                  "independent n=" + std::to_string(n) + " t=" + std::to_string(t));
    }
}

// --- 6. walk headline comparison at t = sqrt(n) -----------------------------
void walk_headline(Check& c) {
  std::size_t n = 1000;
  double t = std::sqrt(static_cast<double>(n));
  BoundReport ours = ssrw_bound(n, t, kPosInf);
  BoundReport base = kontorovich_bound_homog(n, t, 1.0);
  c.req_close(base.log_bound, kLn2 - 0.5, 1e-12, "mixing-matrix bound at t=sqrt(n)");
  double budget = -1e5 * (2.0 - kLn2 / 2.0) + 10.0 * static_cast<double>(n);
  c.req(ours.log_bound <= budget, "walk bound " + std::to_string(ours.log_bound) +
                                      " misses the headline budget " + std::to_string(budget));
  c.req(base.log_bound - ours.log_bound >= 1e5,
        "headline gap " + std::to_string(base.log_bound - ours.log_bound) + " < 1e5 nats");
}

// --- 7. crossover thresholds are genuine ------------------------------------
void crossovers(Check& c) {
  const std::size_t n = 10000;
  double nn = static_cast<double>(n);
  for (double lam : {0.1, 0.2, 0.3, 0.4}) {
    std::string at = " (lambda=" + std::to_string(lam) + ")";

    CrossoverResult ck = crossover_binary_kontorovich(lam, n, kPosInf);
    c.req(ck.verified && ck.log_ours_at_check < ck.log_base_at_check,
          "mixing-matrix crossover not verified at 1.01 t_bar" + at);
    double th = 0.5 * ck.t_bar;
    double ours = binary_chain_bound(lam, n, th, kPosInf).log_bound;
    double base = kontorovich_bound_homog(n, th, std::abs(1.0 - 2.0 * lam)).log_bound;
    c.req(base < ours, "mixing-matrix baseline does not win at 0.5 t_bar" + at);

    CrossoverResult cf = crossover_binary_fan(lam, n);
    c.req(cf.verified && cf.log_ours_at_check < cf.log_base_at_check,
          "spectral crossover not verified at 1.01 t_bar" + at);
    th = 0.5 * cf.t_bar;
    ours = binary_chain_bound(lam, n, th, kPosInf).log_bound;
    base = fan_bound(n, th, 1.0 - 2.0 * lam).log_bound;
    c.req(base < ours, "spectral baseline does not win at 0.5 t_bar" + at);

    CrossoverResult cm = crossover_binary_marton(lam, n);
    c.req(cm.verified && cm.log_ours_at_check < cm.log_base_at_check,
          "blow-up crossover not verified at 1.01 t_bar" + at);
    th = 0.5 * cm.t_bar;
    double cn = (nn - 1.0) * std::log(2.0 * (1.0 - lam));
    ours = median_bound_general_log(n, th, cn);
    try {
      base = marton_blowup_bound(n, th, 2.0 * lam, -kLn2).log_bound;
      c.req(base < ours, "blow-up baseline does not win at 0.5 t_bar" + at);
    } catch (const Error&) {
      // 0.5 t_bar sits below the blow-up validity floor: undefined, skipped.
    }
  }
}

// --- 8. Monte-Carlo consistency at one million samples -----------------------
void monte_carlo(Check& c) {
  const std::uint64_t samples = 1000000;
  PathFunctional ones{PathFunctional::Kind::FractionOnes};
  PathFunctional end{PathFunctional::Kind::Endpoint};

  struct Inst {
    std::string label;
    ProcessSpec proc;
    PathFunctional f;
    std::size_t n;
    double t;
    std::vector<BoundReport> bounds;
  };
  std::vector<Inst> insts;
  auto binary_bounds = [](double lam, std::size_t n, double t) {
    std::vector<BoundReport> b = {binary_chain_bound(lam, n, t, kPosInf)};
    BoundParams bp;
    bp.n = n;
    bp.t = t;
    bp.alpha = kPosInf;
    ProcessSpec proc = binary_chain(lam);
    for (ChainRoute route : {ChainRoute::Tensor, ChainRoute::Hyper, ChainRoute::Sdpi})
      b.push_back(markov_chain_bound(proc, bp, route));
    return b;
  };
  insts.push_back({"binary(0.3) n=100", binary_chain(0.3), ones, 100, 0.45,
                   binary_bounds(0.3, 100, 0.45)});
  insts.push_back({"binary(0.3) n=1000", binary_chain(0.3), ones, 1000, 0.414,
                   binary_bounds(0.3, 1000, 0.414)});
  {
    BoundParams bp;
    bp.n = 100;
    bp.t = 0.2;
    bp.alpha = kPosInf;
    insts.push_back({"independent n=100", coin_pm1(), ones, 100, 0.2,
                     {mcdiarmid_dep_bound(bp, 0.0)}});
    bp.n = 1000;
    bp.t = 0.06;
    insts.push_back({"independent n=1000", coin_pm1(), ones, 1000, 0.06,
                     {mcdiarmid_dep_bound(bp, 0.0)}});
  }
  insts.push_back({"walk n=100", ProcessSpec::ssrw(), end, 100, 0.3,
                   {ssrw_bound(100, 0.3, kPosInf), ssrw_bound(100, 0.3, 2.0)}});
  insts.push_back({"walk n=1000", ProcessSpec::ssrw(), end, 1000, 0.3,
                   {ssrw_bound(1000, 0.3, kPosInf)}});
  // The full-history process is not samplable at n=100 (its halving p-rule
  // weights sum to within one ulp of 1), and its closed-form bounds are
  // vacuous at reachable t; it is exercised at enumerable n below instead.

  int active = 0;
  std::uint64_t idx = 0;
  for (const auto& inst : insts) {
    TailQuery q{inst.proc, inst.n, inst.f, Center::ProductMean, 0.0, inst.t};
    McEstimate est = empirical_tail(q, samples, kDefaultSeed + (idx++));
    double log_hi = std::log(est.ci_high);
    for (const BoundReport& r : inst.bounds) {
      if (r.trivial) continue;
      ++active;
      c.req(log_hi <= r.log_bound,
            inst.label + ": CI upper " + std::to_string(log_hi) + " above " + r.method + " " +
                std::to_string(r.log_bound));
    }
  }
  c.req(active >= 6, "too few active bounds exercised: " + std::to_string(active));

  // Randomized enumerable queries: the CI must trap the exact oracle value.
  std::vector<ProcessSpec> procs = {coin_pm1(), binary_chain(0.1), binary_chain(0.3),
                                    ProcessSpec::ssrw(), ProcessSpec::nonmarkov_binary()};
  RngStream pick(kDefaultSeed, 9001);
  int contained = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const ProcessSpec& proc = procs[trial % procs.size()];
    std::size_t n = 4 + static_cast<std::size_t>(pick.next_double() * 9.0);
    double t = 0.05 + 0.45 * pick.next_double();
    PathFunctional f{proc.kind == ProcessSpec::Kind::Ssrw ? PathFunctional::Kind::Endpoint
                                                          : PathFunctional::Kind::FractionOnes};
    TailQuery q{proc, n, f, Center::ProductMean, 0.0, t};
    double exact = exact_tail(q).prob;
    McEstimate est =
        empirical_tail(q, samples, kDefaultSeed + 100 + static_cast<std::uint64_t>(trial));
    if (est.ci_low <= exact + 1e-12 && exact <= est.ci_high + 1e-12) ++contained;
  }
  c.req(contained >= 49,
        "only " + std::to_string(contained) + "/50 CIs contain the exact value");
  if (c.ok) c.note = " (contained " + std::to_string(contained) + "/50)";
}

// --- 9. burn-in grows logarithmically ---------------------------------------
void burnin_scaling(Check& c) {
  Kernel flip = Kernel::binary_flip(parse_prob("1/4"));
  Dist delta = Dist::delta(0, {0, 1});
  std::vector<std::size_t> ens = {100, 1000, 10000};
  std::vector<double> xs, ys;
  for (std::size_t en : ens) {
    McmcReport b0 = mcmc_bound(delta, flip, 0, en, 1.0, kPosInf);
    double tt = 1.1 * b0.t_bar;
    McmcReport b = mcmc_bound(delta, flip, 0, en, tt, kPosInf);
    double floor_log = b.ours.log_bound - b.log_c;
    std::size_t n0 =
        min_burnin(delta, flip, en, tt, kPosInf, floor_log + 1.0 / static_cast<double>(en));
    xs.push_back(std::log(static_cast<double>(en)));
    ys.push_back(static_cast<double>(n0));
  }
  // Least-squares fit n0 = a log n + b over the three decades.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double m = static_cast<double>(xs.size());
  double a = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double b = (sy - a * sx) / m;
  c.req(a > 0.0, "fitted slope is not positive");
  std::string fits;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double fit = a * xs[i] + b;
    double rel = std::abs(fit - ys[i]) / std::max(1.0, std::abs(ys[i]));
    fits += (i ? ", " : "") + std::to_string(static_cast<int>(ys[i]));
    c.req(rel < 0.25, "relative residual " + std::to_string(rel) + " at n=" +
                          std::to_string(ens[i]) + " (n0=" + std::to_string(ys[i]) +
                          ", fit=" + std::to_string(fit) + ")");
  }
  if (c.ok) c.note = " (n0 = " + fits + ")";
}

// --- 10. hypercontractive order matches the operator-norm bisection ---------
void gamma_star_bisection(Check& c) {
  Dist u = Dist::uniform({0, 1});
  // Near the crossing the objective is flat and the multi-start guard can
  // trip on micro-disagreements; retry seeds, then read flatness as "at one"
  // (the ambiguity is orders of magnitude inside the 1e-3 agreement band).
  auto norm_at = [&u](const Kernel& k, double a, double g) {
    for (std::uint64_t s = 0; s < 6; ++s) {
      try {
        return operator_norm(k, u, a, g, kDefaultSeed + s).value;
      } catch (const Error&) {
      }
    }
    return 1.0;
  };
  for (double lam : {0.1, 0.25, 0.4}) {
    Kernel k = Kernel::binary_flip(lam);
    for (double a : {2.0, 3.0, 6.0}) {
      double gs = dsbs_gamma_star(lam, a);
      // The norm is nonincreasing in the input order and crosses one at the
      // hypercontractive point; bisect for that crossing.
      double lo = 1.0, hi = a;
      for (int it = 0; it < 60 && hi - lo > 5e-5; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = norm_at(k, a, mid);
        // Ascent under-estimates a sup, so values above the crossing stay at
        // one up to rounding; the excess below it fades quadratically, hence
        // the tight cut.
        if (v > 1.0 + 1e-9)
          lo = mid;
        else
          hi = mid;
      }
      double bis = 0.5 * (lo + hi);
      c.req(std::abs(bis - gs) <= 1e-3,
            "bisection " + std::to_string(bis) + " vs closed form " + std::to_string(gs) +
                " at lambda=" + std::to_string(lam) + " alpha=" + std::to_string(a));
    }
  }
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    void (*run)(Check&);
  };
  const Entry entries[] = {
      {"golden divergence and contraction values stay exact", golden_values},
      {"independent case recovers the bounded-difference bound", mcdiarmid_recovery},
      {"tensorisation sandwich on enumerable processes", sandwich},
      {"walk budget holds exactly and per step", walk_budget},
      {"exact tails never exceed active bounds", dominance},
      {"walk headline comparison at t = sqrt(n)", walk_headline},
      {"crossover thresholds are genuine", crossovers},
      {"Monte-Carlo consistency at one million samples", monte_carlo},
      {"burn-in grows logarithmically", burnin_scaling},
      {"hypercontractive order matches the operator-norm bisection", gamma_star_bisection},
  };
  int failures = 0;
  int idx = 0;
  for (const Entry& e : entries) {
    ++idx;
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.ok = false;
      c.note = std::string("\n         - unexpected exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d. %-58s %6.2fs%s\n", c.ok ? "PASS" : "FAIL", idx, e.title, secs,
                c.note.c_str());
    if (!c.ok) ++failures;
  }
  std::printf("%d/10 checks passed\n", 10 - failures);
  return failures;
}
