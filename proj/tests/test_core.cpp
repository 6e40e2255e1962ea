#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "choicetree/point_process.hpp"
#include "choicetree/rng.hpp"
#include "choicetree/stats.hpp"
#include "choicetree/step_function.hpp"

using namespace ctree;

TEST_CASE("rng streams replay and differ by stream id") {
  RngStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs_c = differs_c || x != c();
    differs_d = differs_d || x != d();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("rng conversions stay in range") {
  RngStream r(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    const double v = r.uniform_pos();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK((v > 0.0 && v <= 1.0));
    CHECK(r.below(7) < 7u);
  }
  CHECK(r.below(1) == 0u);
}

TEST_CASE("below is uniform") {
  RngStream r(5, 0);
  Histogram h;
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++h[std::to_string(r.below(6))];
  std::map<std::string, double> p;
  for (int i = 0; i < 6; ++i) p[std::to_string(i)] = 1.0 / 6;
  CHECK(chi_square_goodness_of_fit(h, p).pass);
}

TEST_CASE("derive_seed separates labels") {
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("halfline inverse map") {
  CHECK(halfline_from_unit(1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(halfline_from_unit(0.0, 3.5) == doctest::Approx(3.5));
  for (double beta : {0.0, 0.5, 2.0}) {
    for (double t : {0.1, 1.0, 4.0}) {
      CHECK(halfline_from_unit(beta, halfline_cumulative(beta, t)) == doctest::Approx(t).epsilon(1e-12));
    }
  }
}

TEST_CASE("ppp_halfline window and errors") {
  RngStream r(3, 0);
  const auto s = ppp_halfline(1.5, 4.0, r);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    CHECK(s.points[i] > 0.0);
    CHECK(s.points[i] <= 4.0);
    if (i) CHECK(s.points[i] > s.points[i - 1]);
  }
  CHECK_THROWS_AS(ppp_halfline(1.0, 0.0, r), std::invalid_argument);
  CHECK_THROWS_AS(ppp_halfline(1.0, INFINITY, r), std::invalid_argument);
  CHECK_THROWS_AS(ppp_halfline(-1.0, 1.0, r), std::invalid_argument);
}

TEST_CASE("ppp_halfline counts: beta=0 mean T, beta=1 mean T^2/2") {
  for (auto [beta, mean] : {std::pair{0.0, 3.0}, std::pair{1.0, 4.5}}) {
    const int reps = 10000;
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
      RngStream rng(11, r);
      sum += static_cast<double>(ppp_halfline(beta, 3.0, rng).points.size());
    }
    const double sigma = std::sqrt(mean / reps);
    CHECK(std::abs(sum / reps - mean) < 3 * sigma);
  }
}

TEST_CASE("beta=0 gaps are exponential(1)") {
  RngStream rng(12, 0);
  const auto pts = halfline_arrivals(0.0, 100000, rng);
  std::vector<double> gaps(pts.size());
  std::adjacent_difference(pts.begin(), pts.end(), gaps.begin());
  const auto r = ks_one_sample(gaps, [](double x) { return 1.0 - std::exp(-x); }, 0.02);
  CHECK(r.pass);
}

TEST_CASE("first arrival survival exp(-x^(b+1)/(b+1))") {
  for (double beta : {0.5, 2.0}) {
    std::vector<double> first;
    for (int r = 0; r < 100000; ++r) {
      RngStream rng(13, r);
      first.push_back(halfline_arrivals(beta, 1, rng)[0]);
    }
    const auto rep = ks_one_sample(
        first, [beta](double x) { return 1.0 - std::exp(-std::pow(x, beta + 1) / (beta + 1)); }, 0.02);
    CHECK(rep.pass);
  }
}

TEST_CASE("ppp_strip heights and counts") {
  SUBCASE("k=1 heights uniform") {
    std::vector<double> xs;
    for (int r = 0; xs.size() < 20000; ++r) {
      RngStream rng(14, r);
      for (const auto& p : ppp_strip(1, 10.0, 2.0, rng).points) xs.push_back(p.x);
    }
    CHECK(ks_one_sample(xs, [](double x) { return std::clamp(x / 2.0, 0.0, 1.0); }, 0.02).pass);
  }
  SUBCASE("k=2, P(x <= 1/2) = 1/4") {
    std::int64_t below = 0, total = 0;
    for (int r = 0; r < 20000; ++r) {
      RngStream rng(15, r);
      for (const auto& p : ppp_strip(2, 1.0, 1.0, rng).points) {
        ++total;
        below += p.x <= 0.5;
      }
    }
    const double f = static_cast<double>(below) / total;
    CHECK(std::abs(f - 0.25) < 3 * std::sqrt(0.25 * 0.75 / total));
  }
  SUBCASE("k=3 count mean t_max y_max^k and sub-window restriction") {
    const int reps = 10000;
    double sum = 0.0, sub = 0.0;
    for (int r = 0; r < reps; ++r) {
      RngStream rng(16, r);
      const auto s = ppp_strip(3, 2.0, 1.0, rng);
      sum += static_cast<double>(s.points.size());
      sub += static_cast<double>(count_in_window(s, 0.5, 1.5, 0.5, 1.0));
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        const auto& p = s.points[i];
        CHECK((p.s > 0.0 && p.s <= 2.0 && p.x > 0.0 && p.x <= 1.0));
        if (i) CHECK(p.s >= s.points[i - 1].s);
      }
    }
    CHECK(std::abs(sum / reps - 2.0) < 3 * std::sqrt(2.0 / reps));
    const double sub_mean = 1.0 * (1.0 - 0.125);  // width 1, mass of (1/2, 1] under 3y^2
    CHECK(std::abs(sub / reps - sub_mean) < 3 * std::sqrt(sub_mean / reps));
  }
  RngStream rng(1, 1);
  CHECK_THROWS_AS(ppp_strip(2, -1.0, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(ppp_strip(2, 1.0, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(ppp_strip(0, 1.0, 1.0, rng), std::invalid_argument);
}

TEST_CASE("point sets replay byte for byte") {
  RngStream a(99, 5), b(99, 5);
  const auto s1 = ppp_strip(2, 3.0, 2.0, a);
  const auto s2 = ppp_strip(2, 3.0, 2.0, b);
  REQUIRE(s1.points.size() == s2.points.size());
  for (std::size_t i = 0; i < s1.points.size(); ++i) {
    CHECK(s1.points[i].s == s2.points[i].s);
    CHECK(s1.points[i].x == s2.points[i].x);
  }
}

TEST_CASE("step_eval") {
  CHECK(step_eval(StepFunction{{0.0}, {1.0}, 0.0}, 5.0) == 1.0);
  const StepFunction g{{0.0, 2.0}, {0.0, 0.5}, 1.0};
  CHECK(step_eval(g, 3.0) == doctest::Approx(1.5));
  CHECK(step_eval(g, 2.0) == 0.5);
  CHECK(step_eval(g, 1.999) == doctest::Approx(1.999));
  CHECK_THROWS_AS(step_eval(g, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(validate(StepFunction{{0.0, 0.0}, {1.0, 2.0}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(StepFunction{{1.0}, {1.0}, 0.0}), std::invalid_argument);
}

TEST_CASE("step csv") {
  std::ostringstream os;
  write_step_csv(os, StepFunction{{0.0, 2.0}, {1.0, 3.0}, 0.0}, "m", "Z");
  CHECK(os.str() == "m,Z\n0,1\n2,3\n");
}
