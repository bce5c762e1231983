#pragma once

#include <cstdint>
#include <functional>

namespace depbound {

// log C(n, k) via lgamma.
double log_binomial(std::int64_t n, std::int64_t k);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double reg_inc_beta(double a, double b, double x);

struct BinomialCi {
  double low = 0.0;
  double high = 1.0;
};

// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
// proportion with k successes out of n at the given confidence level.
BinomialCi binomial_ci(std::int64_t k, std::int64_t n, double confidence);

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace depbound
