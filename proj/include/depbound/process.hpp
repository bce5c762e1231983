#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "depbound/dist.hpp"
#include "depbound/kernel.hpp"
#include "depbound/rng.hpp"

namespace depbound {

// Joint law of a finite sequence X_1..X_n from one of the supported process
// families. A ProcessSpec is length-agnostic; every operation takes n.
struct ProcessSpec {
  enum class Kind {
    IndependentProduct,
    HomogeneousChain,
    InhomogeneousChain,
    Ssrw,
    NonMarkovBinary,
  };

  Kind kind = Kind::IndependentProduct;
  std::vector<Dist> factors;       // IndependentProduct (cycled if shorter than n)
  Dist init;                       // chains: law of X_1
  Kernel kernel;                   // HomogeneousChain
  std::vector<Kernel> kernels;     // InhomogeneousChain: step i>=2 uses kernels[i-2]
  // NonMarkovBinary: P(X_i = 1 | past) = sum_{j<i} p(j) x_j with x_0 = +1;
  // p(0) is the weight of the pinned seed coordinate.
  std::function<double(std::size_t)> p_rule;
  std::string p_rule_name;

  static ProcessSpec independent(std::vector<Dist> factors);
  static ProcessSpec homogeneous(Dist init, Kernel k);
  static ProcessSpec inhomogeneous(Dist init, std::vector<Kernel> ks);
  static ProcessSpec ssrw();
  static ProcessSpec nonmarkov_binary();  // default rule p(j) = 2^{-j-1}
  static ProcessSpec nonmarkov_binary(std::function<double(std::size_t)> rule, std::string name);

  bool markov() const {
    return kind == Kind::IndependentProduct || kind == Kind::HomogeneousChain ||
           kind == Kind::InhomogeneousChain || kind == Kind::Ssrw;
  }
  std::string describe() const;
};

// Per-coordinate marginal laws of X_1..X_n.
std::vector<Dist> marginals(const ProcessSpec& proc, std::size_t n);

// Conditional law of X_i given the full prefix x_1..x_{i-1} (1-based i).
Dist conditional_dist(const ProcessSpec& proc, std::size_t i, std::span<const std::int64_t> prefix);

inline constexpr std::uint64_t kMaxEnumPaths = 1ull << 22;

// Visits every positive-probability path with its joint log-probability.
// Throws TooLarge past kMaxEnumPaths visited paths.
void for_each_path(const ProcessSpec& proc, std::size_t n,
                   const std::function<void(std::span<const std::int64_t>, double)>& visit);

// Number of positive-probability paths, capped at kMaxEnumPaths (TooLarge).
std::uint64_t count_paths(const ProcessSpec& proc, std::size_t n);

// Forward-samples one trajectory.
std::vector<std::int64_t> sample_path(const ProcessSpec& proc, std::size_t n, RngStream& rng);

// SSRW marginal: log P(S_i = s).
double ssrw_log_marginal(std::size_t i, std::int64_t s);

}  // namespace depbound
