#include "depbound/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depbound/errors.hpp"

namespace depbound {
namespace {

constexpr double kSlack = 1e-12;  // inclusive-threshold slack for grid-aligned events

void check_query(const TailQuery& q) {
  if (q.n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  if (std::isnan(q.t) || q.t < 0.0) fail(Err::InvalidConfig, "t must be >= 0");
  if (q.f.kind == PathFunctional::Kind::MatchFraction && q.n < 2)
    fail(Err::InvalidConfig, "match-fraction needs n >= 2");
}

}  // namespace

double PathFunctional::eval(std::span<const std::int64_t> path) const {
  const std::size_t n = path.size();
  switch (kind) {
    case Kind::FractionOnes: {
      double s = 0.0;
      for (std::int64_t x : path) s += x == 1 ? 1.0 : 0.0;
      return s / static_cast<double>(n);
    }
    case Kind::Endpoint:
      return (static_cast<double>(path.back()) + static_cast<double>(n)) /
             (2.0 * static_cast<double>(n));
    case Kind::MatchFraction: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) s += path[i] == path[i + 1] ? 1.0 : 0.0;
      return s / static_cast<double>(n - 1);
    }
  }
  fail(Err::Unreachable, "unknown functional");
}

std::vector<double> PathFunctional::certificate(std::size_t n) const {
  if (n == 0) fail(Err::InvalidConfig, "n must be >= 1");
  switch (kind) {
    case Kind::FractionOnes:
    case Kind::Endpoint:
      return std::vector<double>(n, 1.0 / static_cast<double>(n));
    case Kind::MatchFraction:
      if (n < 2) fail(Err::InvalidConfig, "match-fraction needs n >= 2");
      return std::vector<double>(n, 2.0 / static_cast<double>(n - 1));
  }
  fail(Err::Unreachable, "unknown functional");
}

double PathFunctional::product_mean(const std::vector<Dist>& margs) const {
  const std::size_t n = margs.size();
  if (n == 0) fail(Err::InvalidConfig, "need marginals");
  switch (kind) {
    case Kind::FractionOnes: {
      double s = 0.0;
      for (const Dist& m : margs) {
        auto at = m.index_of(1);
        if (at) s += m.prob(*at);
      }
      return s / static_cast<double>(n);
    }
    case Kind::Endpoint: {
      const Dist& last = margs.back();
      double e = 0.0;
      for (std::size_t i = 0; i < last.size(); ++i)
        e += last.prob(i) * static_cast<double>(last.states()[i]);
      return (e + static_cast<double>(n)) / (2.0 * static_cast<double>(n));
    }
    case Kind::MatchFraction: {
      if (n < 2) fail(Err::InvalidConfig, "match-fraction needs n >= 2");
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const Dist& a = margs[i];
        const Dist& b = margs[i + 1];
        for (std::size_t j = 0; j < a.size(); ++j) {
          auto at = b.index_of(a.states()[j]);
          if (at) s += a.prob(j) * b.prob(*at);
        }
      }
      return s / static_cast<double>(n - 1);
    }
  }
  fail(Err::Unreachable, "unknown functional");
}

std::string PathFunctional::name() const {
  switch (kind) {
    case Kind::FractionOnes: return "fraction-ones";
    case Kind::Endpoint: return "endpoint";
    case Kind::MatchFraction: return "match-fraction";
  }
  return "?";
}

PathFunctional PathFunctional::by_name(const std::string& name) {
  if (name == "fraction-ones") return {Kind::FractionOnes};
  if (name == "endpoint") return {Kind::Endpoint};
  if (name == "match-fraction") return {Kind::MatchFraction};
  fail(Err::InvalidConfig, "unknown functional '" + name + "'");
}

ExactTail exact_tail(const TailQuery& q) {
  check_query(q);
  ExactTail out;
  std::vector<Dist> margs = marginals(q.proc, q.n);
  out.product_mean = q.f.product_mean(margs);

  std::vector<std::pair<double, double>> atoms;  // (f value, probability)
  for_each_path(q.proc, q.n, [&](std::span<const std::int64_t> path, double logp) {
    atoms.emplace_back(q.f.eval(path), std::exp(logp));
  });
  double mean = 0.0;
  for (const auto& [v, p] : atoms) mean += v * p;
  out.joint_mean = mean;
  std::sort(atoms.begin(), atoms.end());
  double cum = 0.0;
  out.median = atoms.back().first;
  for (const auto& [v, p] : atoms) {
    cum += p;
    if (cum >= 0.5 - kSlack) {
      out.median = v;
      break;
    }
  }
  switch (q.center) {
    case Center::ProductMean: out.center = out.product_mean; break;
    case Center::JointMean: out.center = out.joint_mean; break;
    case Center::Median: out.center = out.median; break;
    case Center::Explicit: out.center = q.explicit_center; break;
  }
  double tail = 0.0;
  for (const auto& [v, p] : atoms)
    if (std::abs(v - out.center) >= q.t - kSlack) tail += p;
  out.prob = std::min(tail, 1.0);
  return out;
}

McEstimate empirical_tail(const TailQuery& q, std::uint64_t samples, std::uint64_t seed,
                          double confidence) {
  check_query(q);
  if (samples < 1000) fail(Err::InvalidConfig, "need at least 1000 samples");
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.rng = rng_algorithm();
  switch (q.center) {
    case Center::ProductMean:
      est.center = q.f.product_mean(marginals(q.proc, q.n));
      break;
    case Center::Explicit:
      est.center = q.explicit_center;
      break;
    case Center::JointMean:
    case Center::Median: {
      ExactTail e = exact_tail(q);  // enumerable instances only
      est.center = q.center == Center::JointMean ? e.joint_mean : e.median;
      break;
    }
  }
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < samples; ++idx) {
    RngStream stream(seed, idx);
    std::vector<std::int64_t> path = sample_path(q.proc, q.n, stream);
    if (std::abs(q.f.eval(path) - est.center) >= q.t - kSlack) ++hits;
  }
  est.hits = hits;
  est.point = static_cast<double>(hits) / static_cast<double>(samples);
  BinomialCi ci = binomial_ci(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(samples),
                              confidence);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

bool verify_certificate(const ProcessSpec& proc, std::size_t n, const PathFunctional& f,
                        double tol) {
  if (n > 10) fail(Err::TooLarge, "certificate enumeration is capped at n = 10");
  std::vector<double> cert = f.certificate(n);
  // log-probability of path under proc, -inf when outside the joint support
  auto log_joint = [&](std::span<const std::int64_t> path) {
    double lp = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      Dist step = conditional_dist(proc, j, path.subspan(0, j - 1));
      auto at = step.index_of(path[j - 1]);
      if (!at || !step.in_support(*at)) return kNegInf;
      lp += step.log_prob(*at);
    }
    return lp;
  };
  bool ok = true;
  for_each_path(proc, n, [&](std::span<const std::int64_t> path, double) {
    if (!ok) return;
    double base = f.eval(path);
    std::vector<std::int64_t> mod(path.begin(), path.end());
    for (std::size_t i = 1; i <= n && ok; ++i) {
      Dist step = conditional_dist(proc, i, path.subspan(0, i - 1));
      for (std::size_t s = 0; s < step.size(); ++s) {
        if (!step.in_support(s) || step.states()[s] == path[i - 1]) continue;
        mod[i - 1] = step.states()[s];
        if (log_joint(mod) != kNegInf &&
            std::abs(f.eval(mod) - base) > cert[i - 1] + tol) {
          ok = false;
          break;
        }
      }
      mod[i - 1] = path[i - 1];
    }
  });
  return ok;
}

}  // namespace depbound
