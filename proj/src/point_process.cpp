#include "choicetree/point_process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctree {

namespace {

void require_window(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void require_beta(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw std::invalid_argument("beta must be finite and >= 0");
  }
}

}  // namespace

double halfline_cumulative(double beta, double t) {
  return std::pow(t, beta + 1.0) / (beta + 1.0);
}

double halfline_from_unit(double beta, double u) {
  return std::pow((beta + 1.0) * u, 1.0 / (beta + 1.0));
}

PointSet1D ppp_halfline(double beta, double t_max, RngStream& rng) {
  require_beta(beta);
  require_window(t_max, "t_max");
  PointSet1D out{beta, t_max, {}};
  const double total = halfline_cumulative(beta, t_max);
  double u = rng.exponential();
  while (u <= total) {
    const double t = halfline_from_unit(beta, u);
    // pow round-off can push the last point a hair past the window.
    if (t > t_max) break;
    if (out.points.empty() || t > out.points.back()) out.points.push_back(t);
    u += rng.exponential();
  }
  return out;
}

std::vector<double> halfline_arrivals(double beta, std::size_t count, RngStream& rng) {
  require_beta(beta);
  std::vector<double> out;
  out.reserve(count);
  double u = 0.0;
  while (out.size() < count) {
    u += rng.exponential();
    const double t = halfline_from_unit(beta, u);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  return out;
}

PointSet2D ppp_strip(int k, double t_max, double y_max, RngStream& rng) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  require_window(t_max, "t_max");
  require_window(y_max, "y_max");
  PointSet2D out{k, t_max, y_max, {}};
  // Projected onto the s axis the process is homogeneous with rate y_max^k.
  const double rate = std::pow(y_max, k);
  double s = rng.exponential() / rate;
  while (s <= t_max) {
    const double x = y_max * std::pow(rng.uniform_pos(), 1.0 / k);
    out.points.push_back({s, x});
    s += rng.exponential() / rate;
  }
  return out;
}

std::size_t count_in_window(const PointSet2D& set, double s_lo, double s_hi, double x_lo,
                            double x_hi) {
  std::size_t c = 0;
  for (const auto& p : set.points) {
    if (p.s > s_lo && p.s <= s_hi && p.x > x_lo && p.x <= x_hi) ++c;
  }
  return c;
}

}  // namespace ctree
