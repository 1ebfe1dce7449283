#pragma once

#include <cstddef>
#include <vector>

namespace exmix::stats {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double var = 0.0;  // unbiased sample variance
  double se_mean = 0.0;
  double se_var = 0.0;  // normal-approximation SE of the sample variance
};

Summary summarize(const std::vector<double>& xs);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t n, double z = 1.96);

double normal_sf(double z);  // P(Z > z)

// Regularized incomplete gamma Q(a, x); chi-square survival uses Q(k/2, x/2).
double gamma_q(double a, double x);
double chi_square_sf(double x, double dof);

// Goodness-of-fit chi-square; bins with expected < 5 are pooled from the right.
struct ChiSquare {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};
ChiSquare chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected);

// Two-sample chi-square over shared categories.
ChiSquare chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b);

// Two-sided two-proportion z test (pooled).
double two_proportion_p(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2);

// Two-sided two-sample Kolmogorov-Smirnov (asymptotic p-value).
double ks_two_sample_p(std::vector<double> a, std::vector<double> b);

// One-sided Mann-Whitney; p-value for the alternative "a tends smaller than b".
double mann_whitney_less_p(const std::vector<double>& a, const std::vector<double>& b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace exmix::stats
