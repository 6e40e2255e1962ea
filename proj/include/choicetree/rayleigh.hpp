#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "choicetree/point_process.hpp"
#include "choicetree/rng.hpp"
#include "choicetree/step_function.hpp"

namespace ctree {

struct RayleighJump {
  double s;  // jump time
  double x;  // post-jump value
};

/// Path of the k-Rayleigh process on [0, t_max]: unit-speed growth from 0,
/// downward jumps recorded in time order.
struct RayleighPath {
  int k = 1;
  double t_max = 0.0;
  std::vector<RayleighJump> jumps;
};

/// Thrown when a requested simulation window would not fit in memory.
class ResourceLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

double rayleigh_eval(const RayleighPath& path, double t);
double rayleigh_left_limit(const RayleighPath& path, double t);

/// Slope-1 step function with a breakpoint at 0 and at every jump.
StepFunction to_step_function(const RayleighPath& path);

/// Time until the next jump when the process sits at `level` and the
/// cumulative hazard must reach `e`: solves ((level+d)^(k+1) - level^(k+1))/(k+1) = e.
double rayleigh_gap(int k, double level, double e);

/// Exact event-driven sample on [0, t_max].
RayleighPath sample_rayleigh(int k, double t_max, RngStream& rng);

/// Value of the path at t_end only, without storing jumps.
double sample_rayleigh_value(int k, double t_end, RngStream& rng);

/// P(X > t) = exp(-t^(k+1)/(k+1)) for the stationary law.
double stationary_tail(int k, double t);

/// R_t = min(t, min over points (s,x), s <= t, of x + t - s), swept over the
/// time-sorted points of `set`, truncated to [0, t_max].
RayleighPath rayleigh_from_points(const PointSet2D& set, double t_max);

/// Discrete process C_m driven by box occupancy of a shared Poisson sample.
struct CoupledGridPair {
  std::size_t n = 0;
  int k = 1;
  double cell = 0.0;                    // box side n^(-k/(k+1))
  std::vector<std::int64_t> c_values;   // C_0 .. C_M
  PointSet2D points;
};

struct CoupledSample {
  CoupledGridPair grid;
  RayleighPath path;
};

/// Side of the coupling boxes, n^(-k/(k+1)).
double grid_cell(std::size_t n, int k);

/// Whether box (i, j) = ((j-1)h, jh) x ((i-1)h, ih) holds a point.
bool box_occupied(const PointSet2D& set, double cell, std::int64_t i, std::int64_t j);

/// C_0 = 1; C_m = C_{m-1} + 1 if no box (i, m) with i <= C_{m-1} is occupied,
/// otherwise the smallest such i.
std::vector<std::int64_t> grid_process(const PointSet2D& set, double cell, std::int64_t steps);

CoupledSample coupled_pair(std::size_t n, int k, double t_max, RngStream& rng);

/// max over m of |C_m h - R(m h)|, in units of h.
double coupling_max_deviation(const CoupledSample& sample);

}  // namespace ctree
