#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ctree {

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::int64_t n_samples = 0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> details;

  void add(std::string key, double value) { details.emplace_back(std::move(key), value); }
};

using Histogram = std::map<std::string, std::int64_t>;

/// Asymptotic Kolmogorov critical constant c(alpha) = sqrt(-log(alpha/2)/2).
double ks_critical_constant(double alpha);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_tail(double lambda);

/// sup |F_emp - cdf| over the sample.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Passes iff D < threshold; threshold <= 0 selects c(0.01)/sqrt(N).
TestReport ks_one_sample(const std::vector<double>& samples,
                         const std::function<double(double)>& cdf, double threshold = 0.0);

/// Passes iff D < threshold; threshold <= 0 selects c(0.01) sqrt((n+m)/(nm)).
TestReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                         double threshold = 0.0);

/// Pearson statistic of a 2 x C contingency table after pooling categories
/// whose smaller expected count is below 5. Passes iff the p-value is >= level.
TestReport chi_square_two_sample(const Histogram& a, const Histogram& b, double level = 0.01);

/// Pearson goodness of fit of `counts` to `probs` (which must sum to 1), with
/// the same pooling rule. Categories missing from `counts` count as zero.
TestReport chi_square_goodness_of_fit(const Histogram& counts,
                                      const std::map<std::string, double>& probs,
                                      double level = 0.01);

/// Upper tail of the chi-square distribution.
double chi_square_tail(double statistic, double dof);

/// Least-squares slope of log(value) against log(n).
double loglog_slope(const std::vector<std::pair<double, double>>& pairs);

/// Per-coordinate two-sample KS; passes iff every coordinate has D < tol.
TestReport marginal_vector_compare(const std::vector<std::vector<double>>& a,
                                   const std::vector<std::vector<double>>& b, double tol);

}  // namespace ctree
