#include "depbound/process.hpp"

#include <cmath>

#include "depbound/errors.hpp"
#include "depbound/stats.hpp"

namespace depbound {

ProcessSpec ProcessSpec::independent(std::vector<Dist> factors) {
  if (factors.empty()) fail(Err::InvalidConfig, "independent product needs factors");
  ProcessSpec p;
  p.kind = Kind::IndependentProduct;
  p.factors = std::move(factors);
  return p;
}

ProcessSpec ProcessSpec::homogeneous(Dist init, Kernel k) {
  if (init.states() != k.states()) fail(Err::DomainMismatch, "chain init states differ from kernel");
  ProcessSpec p;
  p.kind = Kind::HomogeneousChain;
  p.init = std::move(init);
  p.kernel = std::move(k);
  return p;
}

ProcessSpec ProcessSpec::inhomogeneous(Dist init, std::vector<Kernel> ks) {
  if (ks.empty()) fail(Err::InvalidConfig, "inhomogeneous chain needs kernels");
  for (const Kernel& k : ks)
    if (init.states() != k.states())
      fail(Err::DomainMismatch, "chain init states differ from kernel");
  ProcessSpec p;
  p.kind = Kind::InhomogeneousChain;
  p.init = std::move(init);
  p.kernels = std::move(ks);
  return p;
}

ProcessSpec ProcessSpec::ssrw() {
  ProcessSpec p;
  p.kind = Kind::Ssrw;
  return p;
}

ProcessSpec ProcessSpec::nonmarkov_binary() {
  return nonmarkov_binary([](std::size_t j) { return std::ldexp(1.0, -static_cast<int>(j) - 1); },
                          "dyadic");
}

ProcessSpec ProcessSpec::nonmarkov_binary(std::function<double(std::size_t)> rule,
                                          std::string name) {
  ProcessSpec p;
  p.kind = Kind::NonMarkovBinary;
  p.p_rule = std::move(rule);
  p.p_rule_name = std::move(name);
  return p;
}

std::string ProcessSpec::describe() const {
  switch (kind) {
    case Kind::IndependentProduct: return "independent-product";
    case Kind::HomogeneousChain: return "homogeneous-chain";
    case Kind::InhomogeneousChain: return "inhomogeneous-chain";
    case Kind::Ssrw: return "ssrw";
    case Kind::NonMarkovBinary: return "nonmarkov-binary(" + p_rule_name + ")";
  }
  return "?";
}

namespace {

const Dist& factor_at(const ProcessSpec& p, std::size_t i) {
  return p.factors[(i - 1) % p.factors.size()];
}

const Kernel& kernel_at(const ProcessSpec& p, std::size_t i) {
  if (p.kind == ProcessSpec::Kind::HomogeneousChain) return p.kernel;
  return p.kernels[std::min(i - 2, p.kernels.size() - 1)];
}

std::vector<double> nonmarkov_weights(const ProcessSpec& p, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = p.p_rule(j);
    if (!(w[j] > 0.0)) fail(Err::InvalidConfig, "p-rule weights must be positive");
    total += w[j];
  }
  if (!(total < 1.0)) fail(Err::InvalidConfig, "p-rule weights must sum below 1");
  return w;
}

}  // namespace

double ssrw_log_marginal(std::size_t i, std::int64_t s) {
  auto n = static_cast<std::int64_t>(i);
  if (s < -n || s > n || ((s + n) & 1) != 0) return kNegInf;
  return log_binomial(n, (n + s) / 2) - static_cast<double>(n) * std::log(2.0);
}

std::vector<Dist> marginals(const ProcessSpec& proc, std::size_t n) {
  if (n == 0) fail(Err::InvalidConfig, "need n >= 1");
  std::vector<Dist> out;
  out.reserve(n);
  switch (proc.kind) {
    case ProcessSpec::Kind::IndependentProduct:
      for (std::size_t i = 1; i <= n; ++i) out.push_back(factor_at(proc, i));
      return out;
    case ProcessSpec::Kind::HomogeneousChain:
    case ProcessSpec::Kind::InhomogeneousChain: {
      Dist cur = proc.init;
      out.push_back(cur);
      for (std::size_t i = 2; i <= n; ++i) {
        cur = apply_kernel(cur, kernel_at(proc, i));
        out.push_back(cur);
      }
      return out;
    }
    case ProcessSpec::Kind::Ssrw: {
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::int64_t> states;
        std::vector<double> lp;
        for (std::int64_t s = -static_cast<std::int64_t>(i); s <= static_cast<std::int64_t>(i);
             s += 2) {
          states.push_back(s);
          lp.push_back(ssrw_log_marginal(i, s));
        }
        // Recenter: summing ~i binomial terms drifts the mass past the
        // validator tolerance for large i.
        double total = log_sum_exp(lp);
        for (double& v : lp) v -= total;
        out.push_back(Dist::from_log(std::move(states), std::move(lp)));
      }
      return out;
    }
    case ProcessSpec::Kind::NonMarkovBinary: {
      // Every marginal is uniform: E[X_i] = 0 by induction since the seed
      // weight is 1/2 and all earlier coordinates are centered. The exact
      // enumeration oracle re-derives this in tests.
      nonmarkov_weights(proc, n);
      for (std::size_t i = 1; i <= n; ++i) out.push_back(Dist::uniform({-1, 1}));
      return out;
    }
  }
  fail(Err::UnsupportedProcess, "unknown process kind");
}

Dist conditional_dist(const ProcessSpec& proc, std::size_t i,
                      std::span<const std::int64_t> prefix) {
  if (i == 0 || prefix.size() + 1 != i) fail(Err::InvalidPrefix, "prefix length must be i-1");
  switch (proc.kind) {
    case ProcessSpec::Kind::IndependentProduct:
      return factor_at(proc, i);
    case ProcessSpec::Kind::HomogeneousChain:
    case ProcessSpec::Kind::InhomogeneousChain: {
      if (i == 1) return proc.init;
      const Kernel& k = kernel_at(proc, i);
      auto idx = k.row(0).index_of(prefix.back());
      if (!idx) fail(Err::OutOfSupport, "conditioning state not in kernel domain");
      return k.row(*idx);
    }
    case ProcessSpec::Kind::Ssrw: {
      std::int64_t prev = i == 1 ? 0 : prefix.back();
      return Dist::from_rational({prev - 1, prev + 1}, {Rational{1, 2}, Rational{1, 2}});
    }
    case ProcessSpec::Kind::NonMarkovBinary: {
      auto w = nonmarkov_weights(proc, i);
      double p1 = w[0];  // seed coordinate x_0 = +1
      for (std::size_t j = 0; j + 1 < i; ++j) {
        if (prefix[j] != 1 && prefix[j] != -1)
          fail(Err::InvalidPrefix, "nonmarkov prefix entries must be +/-1");
        p1 += w[j + 1] * static_cast<double>(prefix[j]);
      }
      if (!(p1 > 0.0) || !(p1 < 1.0))
        fail(Err::InvalidPrefix, "conditional probability left (0,1)");
      return Dist::from_linear({-1, 1}, {1.0 - p1, p1});
    }
  }
  fail(Err::UnsupportedProcess, "unknown process kind");
}

namespace {

struct Enumerator {
  const ProcessSpec& proc;
  std::size_t n;
  const std::function<void(std::span<const std::int64_t>, double)>& visit;
  std::vector<std::int64_t> path;
  std::uint64_t visited = 0;

  void go(std::size_t i, double log_joint) {
    if (i > n) {
      if (++visited > kMaxEnumPaths) fail(Err::TooLarge, "path enumeration exceeds 2^22");
      visit(std::span<const std::int64_t>(path.data(), n), log_joint);
      return;
    }
    Dist step = conditional_dist(proc, i, std::span<const std::int64_t>(path.data(), i - 1));
    for (std::size_t s = 0; s < step.size(); ++s) {
      double lp = step.log_prob(s);
      if (lp == kNegInf) continue;
      path[i - 1] = step.states()[s];
      go(i + 1, log_joint + lp);
    }
  }
};

}  // namespace

void for_each_path(const ProcessSpec& proc, std::size_t n,
                   const std::function<void(std::span<const std::int64_t>, double)>& visit) {
  if (n == 0) fail(Err::InvalidConfig, "need n >= 1");
  Enumerator e{proc, n, visit, std::vector<std::int64_t>(n), 0};
  e.go(1, 0.0);
}

std::uint64_t count_paths(const ProcessSpec& proc, std::size_t n) {
  std::uint64_t c = 0;
  for_each_path(proc, n, [&c](std::span<const std::int64_t>, double) { ++c; });
  return c;
}

std::vector<std::int64_t> sample_path(const ProcessSpec& proc, std::size_t n, RngStream& rng) {
  std::vector<std::int64_t> path(n);
  if (n == 0) return path;
  switch (proc.kind) {
    case ProcessSpec::Kind::Ssrw: {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        s += rng.next_bit() ? 1 : -1;
        path[i] = s;
      }
      return path;
    }
    case ProcessSpec::Kind::NonMarkovBinary: {
      auto w = nonmarkov_weights(proc, n);
      double p1 = w[0];
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t x = rng.next_double() < p1 ? 1 : -1;
        path[i] = x;
        if (i + 1 < n) p1 += w[i + 1] * static_cast<double>(x);
      }
      return path;
    }
    default: break;
  }
  // Chains and products: precompute per-row CDFs once, then walk by index.
  auto draw = [&rng](const std::vector<double>& cdf) {
    double u = rng.next_double();
    std::size_t s = 0;
    while (s + 1 < cdf.size() && u >= cdf[s]) ++s;
    return s;
  };
  auto cdf_of = [](const Dist& d) {
    std::vector<double> cdf(d.size());
    double acc = 0.0;
    for (std::size_t s = 0; s < d.size(); ++s) cdf[s] = (acc += d.prob(s));
    return cdf;
  };
  if (proc.kind == ProcessSpec::Kind::IndependentProduct) {
    std::vector<std::vector<double>> cdfs(proc.factors.size());
    for (std::size_t j = 0; j < proc.factors.size(); ++j) cdfs[j] = cdf_of(proc.factors[j]);
    for (std::size_t i = 0; i < n; ++i) {
      const Dist& d = proc.factors[i % proc.factors.size()];
      path[i] = d.states()[draw(cdfs[i % cdfs.size()])];
    }
    return path;
  }
  path[0] = proc.init.states()[draw(cdf_of(proc.init))];
  const Kernel* last = nullptr;
  std::vector<std::vector<double>> cdfs;
  std::size_t idx = 0;
  for (std::size_t i = 2; i <= n; ++i) {
    const Kernel& k = kernel_at(proc, i);
    if (&k != last) {
      cdfs.assign(k.size(), {});
      for (std::size_t x = 0; x < k.size(); ++x) cdfs[x] = cdf_of(k.row(x));
      last = &k;
      auto at = k.row(0).index_of(path[i - 2]);
      if (!at) fail(Err::UnsupportedProcess, "chain state missing from kernel state set");
      idx = *at;
    }
    idx = draw(cdfs[idx]);
    path[i - 1] = k.states()[idx];
  }
  return path;
}

}  // namespace depbound
