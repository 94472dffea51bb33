#pragma once

namespace wccmine {

// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
// x in [0, 1]. Continued-fraction evaluation, absolute error <= 1e-12.
double reg_inc_beta(double x, double a, double b);

// Density of the Beta(a, b) distribution at x.
double beta_pdf(double x, double a, double b);

struct BoundParams {
    int successes = 0;  // k, number of observed successes
    int trials = 0;     // n, number of observed trials
    double alpha = 0.01;

    void validate() const;
};

// Conservative estimate of a binomial proportion after k successes in n
// trials: the alpha-quantile of the Beta(k + 1, n - k + 1) posterior under
// a uniform prior, i.e. the x solving I_x(k + 1, n - k + 1) = alpha.
// The true proportion lies above the returned value with credibility
// 1 - alpha. Solved to an absolute tolerance of 1e-10; for n = 0 the
// posterior is uniform and the bound is alpha itself.
double lower_credible_bound(const BoundParams& p);

} // namespace wccmine
