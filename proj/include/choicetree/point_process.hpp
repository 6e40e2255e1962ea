#pragma once

#include <cstddef>
#include <vector>

#include "choicetree/rng.hpp"

namespace ctree {

/// Realization of a Poisson process on (0, t_max] with intensity t^beta dt.
struct PointSet1D {
  double beta = 0.0;
  double t_max = 0.0;
  std::vector<double> points;  // strictly increasing
};

struct StripPoint {
  double s;  // time coordinate
  double x;  // height coordinate
};

/// Realization of a Poisson process on (0, t_max] x (0, y_max] with intensity k y^(k-1) ds dy.
struct PointSet2D {
  int k = 1;
  double t_max = 0.0;
  double y_max = 0.0;
  std::vector<StripPoint> points;  // sorted by s
};

/// Maps an arrival time u of a unit-rate process through the inverse of
/// Lambda(t) = t^(beta+1) / (beta+1).
double halfline_from_unit(double beta, double u);

/// Cumulative intensity Lambda(t) = t^(beta+1) / (beta+1).
double halfline_cumulative(double beta, double t);

PointSet1D ppp_halfline(double beta, double t_max, RngStream& rng);

/// First `count` points of the t^beta dt process on [0, inf), without a window.
std::vector<double> halfline_arrivals(double beta, std::size_t count, RngStream& rng);

PointSet2D ppp_strip(int k, double t_max, double y_max, RngStream& rng);

/// Number of points of `set` inside (s_lo, s_hi] x (x_lo, x_hi].
std::size_t count_in_window(const PointSet2D& set, double s_lo, double s_hi, double x_lo,
                            double x_hi);

}  // namespace ctree
