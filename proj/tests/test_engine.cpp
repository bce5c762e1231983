#include <cmath>
#include <functional>
#include <vector>

#include "depbound/engine.hpp"
#include "depbound/errors.hpp"
#include "depbound/harness.hpp"
#include "depbound/tensorize.hpp"
#include "doctest.h"

using namespace depbound;

namespace {

constexpr double kLn2 = 0.6931471805599453;

ProcessSpec dsbs(const char* flip) {
  return ProcessSpec::homogeneous(Dist::uniform({0, 1}), Kernel::binary_flip(parse_prob(flip)));
}

// Walk budget used throughout: log H_alpha <= alpha * n(n-1) ln2 / (2 beta).
double walk_log_mult(std::size_t n, double beta) {
  return kLn2 * static_cast<double>(n) * (static_cast<double>(n) - 1) / (2.0 * beta);
}

double exact_log_mult(const ProcessSpec& proc, std::size_t n, double alpha) {
  return alpha == kPosInf ? exact_joint_esssup_log(proc, n)
                          : exact_joint_hellinger(proc, n, alpha).log / alpha;
}

}  // namespace

TEST_SUITE_BEGIN("engine");

TEST_CASE("parameter derivation and validation") {
  BoundParams p{4, 0.1, kPosInf, {}};
  CHECK(p.beta() == 1.0);
  CHECK(p.sum_c_sq() == doctest::Approx(0.25).epsilon(1e-15));
  p.alpha = 2.0;
  CHECK(p.beta() == 2.0);
  p.alpha = 1.5;
  CHECK(p.beta() == doctest::Approx(3.0).epsilon(1e-15));
  p.c = {0.5, 0.25, 0.25, 0.5};
  CHECK(p.sum_c_sq() == doctest::Approx(0.625).epsilon(1e-15));
  p.validate();

  CHECK_THROWS_AS((BoundParams{0, 0.1, 2.0, {}}).validate(), Error);
  CHECK_THROWS_AS((BoundParams{4, -0.1, 2.0, {}}).validate(), Error);
  CHECK_THROWS_AS((BoundParams{4, 0.1, 1.0, {}}).validate(), Error);
  CHECK_THROWS_AS((BoundParams{4, 0.1, 0.5, {}}).validate(), Error);
  CHECK_THROWS_AS((BoundParams{4, 0.1, 2.0, {0.5, 0.5}}).validate(), Error);
  CHECK_THROWS_AS((BoundParams{2, 0.1, 2.0, {0.5, 0.0}}).validate(), Error);
}

TEST_CASE("change-of-measure event bound") {
  for (double lp : {-0.5, -3.0, -20.0})
    CHECK(general_event_bound_log(lp, 0.0, kPosInf) == lp);
  CHECK(general_event_bound_log(-5.0, 0.5, 2.0) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(general_event_bound_log(-1.0, kPosInf, 2.0) == kPosInf);
  // A unit multiplier can only relax the independent bound, never beat it.
  for (double a : {1.5, 2.0, 8.0}) {
    double b = general_event_bound_log(-3.0, 0.0, a);
    CHECK(b >= -3.0);
    CHECK(b <= 0.0);
  }
  CHECK_THROWS_AS(general_event_bound_log(0.5, 0.0, 2.0), Error);
  CHECK_THROWS_AS(general_event_bound_log(-1.0, 0.0, 1.0), Error);
}

TEST_CASE("independent inputs recover the classical bound exactly") {
  for (std::size_t n : {10u, 100u, 1000u})
    for (double t : {0.05, 0.2, 0.4}) {
      BoundReport r = mcdiarmid_dep_bound({n, t, kPosInf, {}}, 0.0);
      CHECK(r.log_bound ==
            doctest::Approx(kLn2 - 2.0 * static_cast<double>(n) * t * t).epsilon(1e-12));
      CHECK(r.threshold == 0.0);
    }
  BoundReport r = mcdiarmid_dep_bound({2, 0.3, kPosInf, {0.5, 0.25}}, 0.0);
  CHECK(r.log_bound == doctest::Approx(kLn2 - 2.0 * 0.09 / 0.3125).epsilon(1e-12));
}

TEST_CASE("deviation bound plug-ins") {
  // Two-step stay-3/4 chain with its exact integral H = 5/4.
  double log_mult = 0.5 * std::log(1.25);
  BoundReport r = mcdiarmid_dep_bound({2, 0.6, 2.0, {}}, log_mult);
  CHECK(r.log_bound == doctest::Approx(0.5 * kLn2 - 0.72 + log_mult).epsilon(1e-12));
  CHECK(r.threshold == doctest::Approx(std::sqrt(std::log(1.25) / 4.0)).epsilon(1e-12));
  CHECK(!r.trivial);
  CHECK(r.method == "deviation");
  // Walk at t = sqrt(n) under its quadratic budget.
  for (std::size_t n : {4u, 10u, 100u})
    for (double a : {2.0, kPosInf}) {
      double nn = static_cast<double>(n);
      BoundParams p{n, std::sqrt(nn), a, {}};
      double beta = p.beta();
      BoundReport w = mcdiarmid_dep_bound(p, walk_log_mult(n, beta));
      double expected =
          kLn2 / beta - (nn * nn / beta) * (2.0 - kLn2 / 2.0 + kLn2 / (2.0 * nn));
      CHECK(w.log_bound == doctest::Approx(expected).epsilon(1e-12));
      CHECK(!w.trivial);
    }
  // t = 0 keeps the multiplier and prefactor only: always trivial.
  BoundReport z = mcdiarmid_dep_bound({5, 0.0, 2.0, {}}, 0.3);
  CHECK(z.trivial);
  CHECK(z.log_bound == doctest::Approx(0.5 * kLn2 + 0.3).epsilon(1e-12));
}

TEST_CASE("decay threshold") {
  CHECK(threshold_t({7, 0.1, 2.0, {}}, 0.0) == 0.0);
  CHECK(threshold_t({7, 0.1, 2.0, {}}, -0.5) == 0.0);
  // Walk: every alpha gives the same threshold sqrt((n-1) ln 2)/2.
  for (double a : {1.5, 2.0, kPosInf})
    for (std::size_t n : {2u, 10u, 1000u}) {
      BoundParams p{n, 0.0, a, {}};
      double expected = std::sqrt((static_cast<double>(n) - 1) * kLn2) / 2.0;
      CHECK(threshold_t(p, walk_log_mult(n, p.beta())) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  // Full-history binary process: t*^2 = ((n-1)/n) beta ln2 / 2.
  for (double a : {1.5, 2.0, 4.0})
    for (std::size_t n : {3u, 10u, 100u}) {
      BoundParams p{n, 0.0, a, {}};
      double nn = static_cast<double>(n);
      double t2 = threshold_t(p, (nn - 1.0) * kLn2);
      CHECK(t2 * t2 == doctest::Approx(((nn - 1.0) / nn) * p.beta() * kLn2 / 2.0).epsilon(1e-12));
    }
  // The exponent changes sign exactly at the threshold.
  for (double a : {2.0, kPosInf})
    for (double log_mult : {0.2, 1.0, 4.0}) {
      BoundParams p{9, 0.0, a, {}};
      double ts = threshold_t(p, log_mult);
      BoundParams above = p;
      above.t = ts * (1.0 + 1e-6);
      BoundParams below = p;
      below.t = ts * (1.0 - 1e-6);
      double exp_above = mcdiarmid_dep_bound(above, log_mult).log_bound - kLn2 / p.beta();
      double exp_below = mcdiarmid_dep_bound(below, log_mult).log_bound - kLn2 / p.beta();
      CHECK(exp_above < 0.0);
      CHECK(exp_below >= 0.0);
    }
}

TEST_CASE("chain routes on symmetric binary chains") {
  for (std::size_t n : {3u, 8u}) {
    double m = static_cast<double>(n) - 1.0;
    BoundParams p{n, 0.4, kPosInf, {}};
    BoundReport tensor = markov_chain_bound(dsbs("1/4"), p, ChainRoute::Tensor);
    BoundReport hyper = markov_chain_bound(dsbs("1/4"), p, ChainRoute::Hyper);
    BoundReport sdpi = markov_chain_bound(dsbs("1/4"), p, ChainRoute::Sdpi);
    CHECK(tensor.log_mult == doctest::Approx(m * std::log(1.5)).epsilon(1e-10));
    CHECK(hyper.log_mult == doctest::Approx(m * kLn2).epsilon(1e-10));
    CHECK(sdpi.log_mult == doctest::Approx((2.0 / 3.0) * m * kLn2).epsilon(1e-10));
    CHECK(tensor.log_mult <= sdpi.log_mult);
    CHECK(sdpi.log_mult <= hyper.log_mult);
    CHECK(tensor.method == "chain-tensor");
    // Independent steps: the data-processing coefficient vanishes.
    BoundReport free = markov_chain_bound(dsbs("1/2"), p, ChainRoute::Sdpi);
    CHECK(free.log_mult == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(free.log_bound ==
          doctest::Approx(kLn2 - 2.0 * static_cast<double>(n) * 0.16).epsilon(1e-12));
    CHECK(markov_chain_bound(dsbs("1/2"), p, ChainRoute::Tensor).log_mult ==
          doctest::Approx(0.0).epsilon(1e-12));
    // At full noise the hypercontractive order is exactly one, so the
    // backward-channel route collapses to a unit multiplier as well.
    CHECK(markov_chain_bound(dsbs("1/2"), p, ChainRoute::Hyper).log_mult ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("closed-form routes dominate the exact multiplier") {
  for (const char* lam : {"1/10", "1/4", "2/5"})
    for (std::size_t n : {4u, 8u})
      for (double a : {2.0, 4.0, kPosInf}) {
        ProcessSpec proc = dsbs(lam);
        double exact = exact_log_mult(proc, n, a);
        BoundParams p{n, 0.3, a, {}};
        CHECK(markov_chain_bound(proc, p, ChainRoute::Tensor).log_mult >= exact - 1e-10);
        CHECK(markov_chain_bound(proc, p, ChainRoute::Hyper).log_mult >= exact - 1e-10);
        CHECK(markov_chain_bound(proc, p, ChainRoute::Sdpi).log_mult >= exact - 1e-10);
      }
}

TEST_CASE("hypercontractive route details") {
  BoundParams p{50, 0.35, 4.0, {}};
  BoundReport r = markov_chain_bound(dsbs("1/4"), p, ChainRoute::Hyper);
  CHECK(std::isfinite(r.log_bound));
  REQUIRE(!r.notes.empty());
  CHECK(r.notes.front().find("1.750000") != std::string::npos);

  // A vanishing marginal state makes the multiplier infinite, flagged not thrown.
  ProcessSpec stuck = ProcessSpec::homogeneous(
      Dist::delta(0, {0, 1}), Kernel::from_linear({0, 1}, {{1.0, 0.0}, {0.0, 1.0}}));
  BoundReport z = markov_chain_bound(stuck, BoundParams{3, 0.3, 2.0, {}}, ChainRoute::Hyper);
  CHECK(z.log_mult == kPosInf);
  CHECK(z.log_bound == kPosInf);
  CHECK(z.trivial);
  CHECK(!z.notes.empty());
}

TEST_CASE("route preconditions") {
  BoundParams p{4, 0.3, 2.0, {}};
  ProcessSpec skewed = ProcessSpec::homogeneous(
      Dist::uniform({0, 1}), Kernel::from_linear({0, 1}, {{0.8, 0.2}, {0.3, 0.7}}));
  CHECK_THROWS_AS(markov_chain_bound(skewed, p, ChainRoute::Sdpi), Error);
  ProcessSpec off = ProcessSpec::homogeneous(Dist::delta(0, {0, 1}),
                                             Kernel::binary_flip(parse_prob("1/4")));
  CHECK_THROWS_AS(markov_chain_bound(off, p, ChainRoute::Sdpi), Error);
  CHECK_THROWS_AS(markov_chain_bound(ProcessSpec::ssrw(), p, ChainRoute::Tensor), Error);
  CHECK_THROWS_AS(markov_chain_bound(ProcessSpec::nonmarkov_binary(), p, ChainRoute::Hyper),
                  Error);
}

TEST_CASE("order optimization") {
  std::vector<double> grid = alpha_grid();
  REQUIRE(grid.size() == 38);
  CHECK(grid.front() == doctest::Approx(1.001).epsilon(1e-12));
  CHECK(grid.back() == kPosInf);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i - 1] < grid[i]);

  // Independent case past the threshold: the top order wins.
  auto indep = [](double a) { return mcdiarmid_dep_bound({10, 0.5, a, {}}, 0.0); };
  AlphaChoice c = optimize_alpha(indep);
  CHECK(c.alpha == kPosInf);
  CHECK(c.report.log_bound == doctest::Approx(kLn2 - 5.0).epsilon(1e-12));
  CHECK(c.grid.size() == 38);

  // Exact tie across the grid resolves to the largest order.
  double t_tie = std::sqrt(kLn2 / 20.0);
  auto tie = [&](double a) { return mcdiarmid_dep_bound({10, t_tie, a, {}}, 0.0); };
  CHECK(optimize_alpha(tie).alpha == kPosInf);

  // Walk at t = sqrt(n): the top order beats alpha = 2.
  for (std::size_t n : {2u, 4u, 10u}) {
    auto walk = [&](double a) {
      BoundParams p{n, std::sqrt(static_cast<double>(n)), a, {}};
      return mcdiarmid_dep_bound(p, walk_log_mult(n, p.beta()));
    };
    AlphaChoice w = optimize_alpha(walk);
    CHECK(w.alpha == kPosInf);
    CHECK(w.report.log_bound < walk(2.0).log_bound);
  }
}

TEST_CASE("mean-gap bound") {
  MeanGap d = mean_gap_bound({10, 0.0, 2.0, {}}, 0.0);
  CHECK(d.degenerate);
  CHECK(d.value == 0.0);

  // Two-step chain: closed form agrees with the split-point display.
  double lnh = std::log(1.25);
  BoundParams p2{2, 0.0, 2.0, {}};
  MeanGap g = mean_gap_bound(p2, lnh / 2.0);
  CHECK(g.t0 * g.t0 == doctest::Approx(lnh / 4.0).epsilon(1e-12));
  double second = std::sqrt(2.0) / (std::pow(2.0, 0.5) * std::sqrt((2.0 * 2.0 / 2.0) * lnh));
  CHECK(g.value == doctest::Approx(g.t0 + second).epsilon(1e-12));

  // Walk, n = 100: the second term obeys its o(1) budget.
  BoundParams pw{100, 0.0, 2.0, {}};
  MeanGap w = mean_gap_bound(pw, walk_log_mult(100, 2.0));
  double budget = std::pow(2.0, 0.5) * 2.0 / (100.0 * std::sqrt(kLn2 * (2.0 - 4.0 / 100.0)));
  CHECK(w.value - w.t0 <= budget + 1e-15);
  CHECK(w.value > w.t0);
}

TEST_CASE("mean-gap bound dominates enumerated mean gaps") {
  std::vector<ProcessSpec> procs = {dsbs("1/10"), dsbs("1/4"), dsbs("2/5"),
                                    ProcessSpec::ssrw(), ProcessSpec::nonmarkov_binary()};
  for (const auto& proc : procs)
    for (std::size_t n : {4u, 8u})
      for (PathFunctional::Kind kind :
           {PathFunctional::Kind::FractionOnes, PathFunctional::Kind::MatchFraction}) {
        PathFunctional f{kind};
        if (kind == PathFunctional::Kind::FractionOnes &&
            proc.kind == ProcessSpec::Kind::Ssrw)
          f.kind = PathFunctional::Kind::Endpoint;
        ExactTail tail = exact_tail({proc, n, f, Center::ProductMean, 0.0, 0.0});
        double truth = std::abs(tail.joint_mean - tail.product_mean);
        BoundParams p{n, 0.0, 2.0, f.certificate(n)};
        MeanGap g = mean_gap_bound(p, exact_log_mult(proc, n, 2.0));
        double bound = g.degenerate ? 0.0 : g.value;
        CHECK(truth <= bound + 1e-12);
      }
}

TEST_CASE("median and mean shifts of a tail profile") {
  for (std::size_t n : {10u, 100u}) {
    double nn = static_cast<double>(n);
    auto log_h = [nn](double r) { return kLn2 - 2.0 * nn * r * r; };
    MedianShift m = median_shift(log_h);
    CHECK(!m.no_half_point);
    CHECK(m.r0 == doctest::Approx(std::sqrt(2.0 * kLn2 / (2.0 * nn))).epsilon(1e-9));
    CHECK(m.hbar ==
          doctest::Approx(std::sqrt(std::acos(-1.0) / (2.0 * nn))).epsilon(1e-7));
  }
  // Already below one half at r = 0: nothing to solve for.
  MedianShift flat = median_shift([](double r) { return std::log(0.4) - r; });
  CHECK(flat.no_half_point);
  CHECK(flat.r0 == 0.0);
  // Exactly one half at r = 0 is a genuine half-point.
  MedianShift edge = median_shift([](double r) { return -kLn2 - r; });
  CHECK(!edge.no_half_point);
  CHECK(edge.r0 == 0.0);
  // A profile that never decays runs into the cap.
  MedianShift fat = median_shift([](double) { return 0.0; });
  CHECK(fat.no_half_point);

  CHECK(packaged_constant_log(std::log(3.0), 2.0, 2.0, 1.5) ==
        doctest::Approx(std::log(3.0) + 4.5).epsilon(1e-12));
  CHECK(kappa_p(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kappa_p(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(kappa_p(0.0), Error);
  CHECK_THROWS_AS(packaged_constant_log(0.0, 1.0, -1.0, 1.0), Error);
}

TEST_CASE("median-centered closed form") {
  for (std::size_t n : {5u, 50u})
    for (double t : {0.1, 0.4})
      for (double cn : {0.0, 0.8, 3.0}) {
        double nn = static_cast<double>(n);
        double direct = -kLn2 - 2.0 * nn * t * t + 2.0 * t * std::sqrt(2.0 * nn * (2.0 * kLn2 + cn));
        CHECK(median_bound_general_log(n, t, cn) == doctest::Approx(direct).epsilon(1e-12));
        // Same value written as a shifted Gaussian around the half-point.
        double r0 = std::sqrt((2.0 * kLn2 + cn) / (2.0 * nn));
        double shifted = kLn2 + cn - 2.0 * nn * (t - r0) * (t - r0);
        CHECK(median_bound_general_log(n, t, cn) == doctest::Approx(shifted).epsilon(1e-12));
      }
  CHECK_THROWS_AS(median_bound_general_log(0, 0.1, 0.0), Error);
  CHECK_THROWS_AS(median_bound_general_log(5, -0.1, 0.0), Error);
  CHECK_THROWS_AS(median_bound_general_log(5, 0.1, -1.0), Error);
}

TEST_CASE("bound dominates exact tails on enumerable instances") {
  std::vector<ProcessSpec> procs = {dsbs("1/10"), dsbs("1/4"), dsbs("2/5"),
                                    ProcessSpec::ssrw(), ProcessSpec::nonmarkov_binary()};
  for (const auto& proc : procs)
    for (std::size_t n : {4u, 8u})
      for (double a : {2.0, kPosInf}) {
        double log_mult = exact_log_mult(proc, n, a);
        PathFunctional f{proc.kind == ProcessSpec::Kind::Ssrw
                             ? PathFunctional::Kind::Endpoint
                             : PathFunctional::Kind::FractionOnes};
        for (int k = 1; k <= 20; ++k) {
          double t = 0.025 * k;
          ExactTail tail = exact_tail({proc, n, f, Center::ProductMean, 0.0, t});
          BoundReport r = mcdiarmid_dep_bound({n, t, a, {}}, log_mult);
          CHECK(std::log(tail.prob) <= r.log_bound + 1e-12);
        }
      }
}

TEST_SUITE_END();
