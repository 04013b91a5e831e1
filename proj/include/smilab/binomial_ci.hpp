#ifndef SMILAB_BINOMIAL_CI_HPP
#define SMILAB_BINOMIAL_CI_HPP

#include <cstdint>

namespace smilab {

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x);

// Inverse of I_x(a, b) in x for fixed a, b (monotone bisection).
double inv_reg_inc_beta(double a, double b, double p);

// Exact (Clopper-Pearson) binomial confidence bounds for x successes in
// n trials.  Each bound is one-sided at level alpha, i.e. the lower
// bound undershoots the true p with probability at most alpha, and
// symmetrically for the upper bound.  Bounds are used with alpha = 1e-3
// throughout, giving 99.9% one-sided confidence per side.
double clopper_pearson_lower(std::int64_t x, std::int64_t n, double alpha);
double clopper_pearson_upper(std::int64_t x, std::int64_t n, double alpha);

}  // namespace smilab

#endif
