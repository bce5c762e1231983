#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "depbound/process.hpp"
#include "depbound/stats.hpp"

namespace depbound {

// Executable path functionals with bounded-difference certificates.
//  - fraction-ones: mean of 1{x_i = 1}; certificate all 1/n.
//  - endpoint: (x_n + n)/(2n); certificate all 1/n (within joint support).
//  - match-fraction: fraction of adjacent equal pairs; certificate 2/(n-1),
//    the only non-separable functional (its joint and product means differ).
struct PathFunctional {
  enum class Kind { FractionOnes, Endpoint, MatchFraction };
  Kind kind = Kind::FractionOnes;

  double eval(std::span<const std::int64_t> path) const;
  std::vector<double> certificate(std::size_t n) const;
  // Mean under the product of the given marginals (closed form).
  double product_mean(const std::vector<Dist>& margs) const;
  std::string name() const;
  static PathFunctional by_name(const std::string& name);
};

enum class Center { ProductMean, JointMean, Median, Explicit };

struct TailQuery {
  ProcessSpec proc;
  std::size_t n = 1;
  PathFunctional f;
  Center center = Center::ProductMean;
  double explicit_center = 0.0;
  double t = 0.0;
};

struct ExactTail {
  double prob = 0.0;  // P(|f - center| >= t), threshold inclusive
  double joint_mean = 0.0;
  double product_mean = 0.0;
  double median = 0.0;  // lower median of f under the joint law
  double center = 0.0;  // the value the query resolved to
};

// Ground-truth tail by full path enumeration (TooLarge past 2^22 paths).
// Comparisons carry a 1e-12 slack so grid-aligned events stay inclusive.
ExactTail exact_tail(const TailQuery& query);

struct McEstimate {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;  // exact binomial two-sided interval
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double center = 0.0;
  std::string rng;
};

// Monte Carlo tail estimate with an exact binomial CI; deterministic given
// the seed (per-sample counter-based streams). Needs samples >= 1000.
// Joint-mean/median centers are resolved by enumeration and therefore need
// an enumerable instance.
McEstimate empirical_tail(const TailQuery& query, std::uint64_t samples, std::uint64_t seed,
                          double confidence = 0.99);

// Verifies the bounded-difference certificate by enumerating every
// single-coordinate substitution that stays inside the joint support
// (n <= 10; TooLarge beyond). Returns false on the first violation.
bool verify_certificate(const ProcessSpec& proc, std::size_t n, const PathFunctional& f,
                        double tol = 1e-12);

}  // namespace depbound
