#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "choicetree/rng.hpp"
#include "choicetree/stats.hpp"

using namespace ctree;

namespace {

double uniform_cdf(double u) { return std::clamp(u, 0.0, 1.0); }

// O(N^2) reference: sup over every sample point of both one-sided gaps
double brute_ks(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  std::vector<double> pts(a);
  pts.insert(pts.end(), b.begin(), b.end());
  for (double x : pts) {
    const double fa = std::count_if(a.begin(), a.end(), [x](double v) { return v <= x; }) / double(a.size());
    const double fb = std::count_if(b.begin(), b.end(), [x](double v) { return v <= x; }) / double(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace

TEST_CASE("ks constants") {
  CHECK(ks_critical_constant(0.05) == doctest::Approx(1.3581).epsilon(1e-4));
  CHECK(ks_critical_constant(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(kolmogorov_tail(1.3581) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(kolmogorov_tail(0.0) == 1.0);
  CHECK_THROWS_AS(ks_critical_constant(0.0), std::invalid_argument);
}

TEST_CASE("ks statistic examples") {
  CHECK(ks_statistic({0.5}, uniform_cdf) == doctest::Approx(0.5));
  CHECK(ks_statistic({0.25, 0.75}, uniform_cdf) == doctest::Approx(0.25));
  CHECK(ks_statistic({1.0, 2.0}, {3.0, 4.0}) == 1.0);
  CHECK(ks_statistic({1.0, 2.0}, {1.0, 2.0}) == 0.0);
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, uniform_cdf), std::invalid_argument);
}

TEST_CASE("two-sample ks agrees with brute force, ties included") {
  RngStream rng(1, 0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(1 + rng.below(15)), b(1 + rng.below(15));
    for (auto& v : a) v = static_cast<double>(rng.below(6));
    for (auto& v : b) v = static_cast<double>(rng.below(6));
    CHECK(ks_statistic(a, b) == doctest::Approx(brute_ks(a, b)));
  }
}

TEST_CASE("ks reports") {
  const auto r = ks_one_sample({0.5}, uniform_cdf, 0.6);
  CHECK(r.pass);
  CHECK(r.n_samples == 1);
  CHECK_FALSE(ks_one_sample({0.5}, uniform_cdf, 0.5).pass);
  const auto d = ks_two_sample({0.0, 1.0}, {0.0, 1.0});
  CHECK(d.threshold > 0.0);
  CHECK(d.pass);
}

TEST_CASE("chi-square examples") {
  const auto apart = chi_square_two_sample({{"A", 100}, {"B", 0}}, {{"A", 0}, {"B", 100}});
  CHECK(apart.statistic == doctest::Approx(200.0));
  CHECK_FALSE(apart.pass);
  const auto same = chi_square_two_sample({{"A", 50}, {"B", 50}}, {{"A", 50}, {"B", 50}});
  CHECK(same.statistic == 0.0);
  CHECK(same.pass);
  const auto fit = chi_square_goodness_of_fit({{"x", 60}, {"y", 40}}, {{"x", 0.5}, {"y", 0.5}});
  CHECK(fit.statistic == doctest::Approx(4.0));
  CHECK(fit.pass);
  CHECK(chi_square_tail(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK_THROWS_AS(chi_square_goodness_of_fit({{"x", 1}}, {{"x", 0.5}}), std::invalid_argument);
}

TEST_CASE("tests hold their level under the null") {
  int ks_pass = 0, chi_pass = 0;
  const std::vector<double> p{1.0 / 9, 4.0 / 9, 4.0 / 9};
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(2, rep);
    std::vector<double> s(2000);
    for (auto& v : s) v = rng.uniform();
    ks_pass += ks_one_sample(s, uniform_cdf).pass;
    Histogram a, b;
    for (int i = 0; i < 3000; ++i) {
      for (Histogram* h : {&a, &b}) {
        const double u = rng.uniform();
        ++(*h)[u < p[0] ? "t0" : u < p[0] + p[1] ? "t1" : "t2"];
      }
    }
    chi_pass += chi_square_two_sample(a, b).pass;
  }
  CHECK(ks_pass >= 95);
  CHECK(chi_pass >= 95);
}

TEST_CASE("loglog slope") {
  CHECK(loglog_slope({{10, 100}, {100, 10000}, {1000, 1e6}}) == doctest::Approx(2.0));
  CHECK(loglog_slope({{1, 3}, {8, 6}, {27, 9}}) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(loglog_slope({{10, 1}, {20, 2}}), std::invalid_argument);
}

TEST_CASE("marginal vector compare") {
  const std::vector<std::vector<double>> a{{0.0, 1.0}, {0.0, 2.0}};
  const std::vector<std::vector<double>> b{{0.0, 1.0}, {0.0, 5.0}};
  const auto r = marginal_vector_compare(a, b, 0.6);
  CHECK(r.pass);
  CHECK(r.details.size() == 2);
  CHECK_FALSE(marginal_vector_compare(a, b, 0.5).pass);
  CHECK_THROWS_AS(marginal_vector_compare(a, {{0.0}}, 0.5), std::invalid_argument);
}
