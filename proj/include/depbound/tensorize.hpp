#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depbound/process.hpp"

namespace depbound {

// Interpolation schedule for the chained Holder split. Entries are
// alpha_2..alpha_n; alpha_1 = 1 and beta_0 = 1 are fixed endpoints, and the
// final entry must be 1. Upper-bound schedules need every entry >= 1,
// lower-bound schedules every entry <= 1 (and > 1/alpha so inner orders stay
// above 1).
struct Schedule {
  enum class Preset { AllOne, Geometric, Custom };
  Preset preset = Preset::AllOne;
  std::vector<double> alphas;  // Custom only

  static Schedule all_one() { return {}; }
  static Schedule geometric() { return {Preset::Geometric, {}}; }
  static Schedule custom(std::vector<double> alphas) {
    return {Preset::Custom, std::move(alphas)};
  }
  // Materialized alpha_2..alpha_n for a given n; validates entries.
  std::vector<double> materialize(std::size_t n, bool upper, double alpha) const;
  std::string name() const;
};

struct TensorResult {
  double log_value = 0.0;  // log of the product bound on H_alpha
  // Extremizing conditioning state per step (steps 2..n); ties toward the
  // smallest label. Mean-type factors report the argmax of the step integral.
  std::vector<std::int64_t> arg_states;
};

// Exact joint Hellinger integral H_alpha(joint || product of own marginals)
// by full path enumeration (TooLarge past 2^22 paths).
LogValue exact_joint_hellinger(const ProcessSpec& proc, std::size_t n, double alpha);

// alpha -> inf analogue: log ess-sup over paths of d(joint)/d(product).
double exact_joint_esssup_log(const ProcessSpec& proc, std::size_t n);

// Markov tensorisation upper bound: product over steps of the scheduled
// Holder factor, the all-one limit being per-step maxima
//   prod_i max_x H_alpha(Q_i(.|x) || P_i).
TensorResult tensor_upper_markov(const ProcessSpec& proc, std::size_t n, double alpha,
                                 const Schedule& schedule = Schedule::all_one());

// Reverse-Holder lower bound (per-step minima in the all-one limit).
TensorResult tensor_lower_markov(const ProcessSpec& proc, std::size_t n, double alpha,
                                 const Schedule& schedule = Schedule::all_one());

// General (non-Markov) variant: extremes over full history prefixes.
TensorResult tensor_upper_general(const ProcessSpec& proc, std::size_t n, double alpha);
TensorResult tensor_lower_general(const ProcessSpec& proc, std::size_t n, double alpha);

// Per-step log multiplicative factor at alpha = inf (all-one schedule):
// sum over steps of max_x ess-sup_y log(Q_i(y|x)/P_i(y)).
double tensor_upper_markov_esssup_log(const ProcessSpec& proc, std::size_t n);

// Renyi-form rewrite of the scheduled upper bound; agrees with
// log(tensor_upper_markov)/(alpha-1) and exists as an independent
// cross-check of the Holder bookkeeping.
double tensor_upper_markov_renyi(const ProcessSpec& proc, std::size_t n, double alpha,
                                 const Schedule& schedule = Schedule::all_one());

}  // namespace depbound
