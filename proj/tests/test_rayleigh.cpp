#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "choicetree/rayleigh.hpp"
#include "choicetree/stats.hpp"

using namespace ctree;

TEST_CASE("gap inverts the cumulative hazard") {
  CHECK(rayleigh_gap(1, 0.0, 0.5) == doctest::Approx(1.0));
  for (int k : {1, 2, 3}) {
    for (double r : {0.0, 0.3, 2.0}) {
      const double e = 0.7;
      const double d = rayleigh_gap(k, r, e);
      const double h = (std::pow(r + d, k + 1) - std::pow(r, k + 1)) / (k + 1);
      CHECK(h == doctest::Approx(e).epsilon(1e-12));
    }
  }
}

TEST_CASE("stationary tail values") {
  CHECK(stationary_tail(1, 1.0) == doctest::Approx(0.60653).epsilon(1e-5));
  CHECK(stationary_tail(2, 1.0) == doctest::Approx(0.71653).epsilon(1e-5));
  CHECK(stationary_tail(3, 0.0) == 1.0);
  CHECK_THROWS_AS(stationary_tail(1, -1.0), std::invalid_argument);
}

TEST_CASE("path shape: R_t = t before the first jump, R_t <= t, jumps go down") {
  for (int r = 0; r < 200; ++r) {
    RngStream rng(1, r);
    const auto p = sample_rayleigh(1 + r % 3, 8.0, rng);
    const double first = p.jumps.empty() ? p.t_max : p.jumps.front().s;
    CHECK(rayleigh_eval(p, first * 0.5) == first * 0.5);
    for (const auto& j : p.jumps) {
      CHECK(j.x < rayleigh_left_limit(p, j.s));
      CHECK(rayleigh_eval(p, j.s) == j.x);
    }
    for (double t = 0.0; t <= 8.0; t += 0.05) {
      const double v = rayleigh_eval(p, t);
      CHECK(v <= t + 1e-12);
      CHECK(v >= 0.0);
    }
    const auto f = to_step_function(p);
    validate(f);
    CHECK(step_eval(f, 3.3) == doctest::Approx(rayleigh_eval(p, 3.3)));
  }
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample_rayleigh(2, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_rayleigh(0, 1.0, rng), std::invalid_argument);
}

TEST_CASE("first jump time survives w.p. exp(-t^(k+1)/(k+1)), k=2") {
  std::vector<double> first;
  for (int r = 0; r < 100000; ++r) {
    RngStream rng(2, r);
    const auto p = sample_rayleigh(2, 50.0, rng);
    REQUIRE_FALSE(p.jumps.empty());
    first.push_back(p.jumps.front().s);
  }
  CHECK(ks_one_sample(first, [](double t) { return 1.0 - stationary_tail(2, t); }, 0.02).pass);
}

TEST_CASE("jump target over pre-jump level has CDF u^k") {
  for (int k : {1, 3}) {
    std::vector<double> ratio;
    for (int r = 0; ratio.size() < 100000; ++r) {
      RngStream rng(3, r);
      const auto p = sample_rayleigh(k, 30.0, rng);
      for (const auto& j : p.jumps) ratio.push_back(j.x / rayleigh_left_limit(p, j.s));
    }
    CHECK(ks_one_sample(ratio, [k](double u) { return std::pow(std::clamp(u, 0.0, 1.0), k); }, 0.02).pass);
  }
}

TEST_CASE("sample_rayleigh_value matches the stored path in law at small T") {
  std::vector<double> a, b;
  for (int r = 0; r < 20000; ++r) {
    RngStream r1(4, r), r2(5, r);
    a.push_back(sample_rayleigh_value(2, 1.3, r1));
    b.push_back(rayleigh_eval(sample_rayleigh(2, 1.3, r2), 1.3));
  }
  CHECK(ks_two_sample(a, b).pass);
}

TEST_CASE("rayleigh_from_points uses the defining minimum") {
  PointSet2D s{1, 5.0, 5.0, {{1.0, 0.5}, {2.0, 1.6}, {3.0, 0.2}}};
  const auto p = rayleigh_from_points(s, 5.0);
  // brute force min(t, min_{s<=t} x + t - s)
  for (double t = 0.0; t <= 5.0; t += 0.01) {
    double v = t;
    for (const auto& q : s.points) {
      if (q.s <= t) v = std::min(v, q.x + t - q.s);
    }
    CHECK(rayleigh_eval(p, t) == doctest::Approx(v).epsilon(1e-12));
  }
  CHECK(p.jumps.size() == 2);  // (2, 1.6) sits above the running path
}

TEST_CASE("box occupancy probability 1 - exp(-(i^k - (i-1)^k)/n^k)") {
  const std::size_t n = 3;
  const int k = 2;
  const double h = grid_cell(n, k);
  const int reps = 20000;
  std::map<int, int> hits;
  for (int r = 0; r < reps; ++r) {
    RngStream rng(6, r);
    const auto set = ppp_strip(k, 2 * h, 3 * h, rng);
    for (int i = 1; i <= 3; ++i) hits[i] += box_occupied(set, h, i, 2);
  }
  for (int i = 1; i <= 3; ++i) {
    const double p = 1.0 - std::exp(-(std::pow(i, k) - std::pow(i - 1, k)) / std::pow(double(n), k));
    CHECK(std::abs(hits[i] / double(reps) - p) < 3 * std::sqrt(p * (1 - p) / reps));
  }
}

TEST_CASE("grid process rule on a hand-built point set") {
  const double h = 1.0;
  // column 2 has a point in row 1, column 4 in row 3, column 5 in row 2
  PointSet2D s{1, 6.0, 6.0, {{1.5, 0.5}, {3.5, 2.5}, {4.5, 1.5}}};
  const auto c = grid_process(s, h, 6);
  CHECK(c == std::vector<std::int64_t>{1, 2, 1, 2, 3, 2, 3});
}

TEST_CASE("coupled pair invariants and the proximity bound") {
  for (int r = 0; r < 20; ++r) {
    RngStream rng(7, r);
    const auto cp = coupled_pair(10000, 2, 5.0, rng);
    const auto& c = cp.grid.c_values;
    CHECK(c[0] == 1);
    for (std::size_t m = 1; m < c.size(); ++m) {
      CHECK(c[m] >= 1);
      CHECK(c[m] <= static_cast<std::int64_t>(m) + 1);
      CHECK(c[m] <= c[m - 1] + 1);
    }
    CHECK(coupling_max_deviation(cp) <= 1.0 + 1e-9);
  }
  RngStream rng(7, 0);
  CHECK_THROWS_AS(coupled_pair(1000000000000ULL, 2, 5.0, rng), ResourceLimitError);
}
