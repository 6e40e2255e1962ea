#include "choicetree/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ctree {

namespace {

constexpr double kMaxGridSteps = 5e7;

void require_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

void require_t_max(double t_max) {
  if (!std::isfinite(t_max) || t_max <= 0.0) {
    throw std::invalid_argument("t_max must be positive and finite");
  }
}

// index of the last jump with s <= t, or -1
std::ptrdiff_t last_jump_at_or_before(const RayleighPath& path, double t) {
  const auto it = std::upper_bound(path.jumps.begin(), path.jumps.end(), t,
                                   [](double v, const RayleighJump& j) { return v < j.s; });
  return (it - path.jumps.begin()) - 1;
}

}  // namespace

double rayleigh_eval(const RayleighPath& path, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const auto idx = last_jump_at_or_before(path, t);
  if (idx < 0) return t;
  const auto& j = path.jumps[static_cast<std::size_t>(idx)];
  return j.x + (t - j.s);
}

double rayleigh_left_limit(const RayleighPath& path, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const auto it = std::lower_bound(path.jumps.begin(), path.jumps.end(), t,
                                   [](const RayleighJump& j, double v) { return j.s < v; });
  if (it == path.jumps.begin()) return t;
  const auto& j = *(it - 1);
  return j.x + (t - j.s);
}

StepFunction to_step_function(const RayleighPath& path) {
  StepFunction f;
  f.slope_between = 1.0;
  f.breakpoints.push_back(0.0);
  f.values.push_back(0.0);
  for (const auto& j : path.jumps) {
    if (j.s == f.breakpoints.back()) {
      f.values.back() = j.x;
    } else {
      f.breakpoints.push_back(j.s);
      f.values.push_back(j.x);
    }
  }
  return f;
}

double rayleigh_gap(int k, double level, double e) {
  require_k(k);
  const double kp1 = k + 1.0;
  return std::pow(kp1 * e + std::pow(level, kp1), 1.0 / kp1) - level;
}

RayleighPath sample_rayleigh(int k, double t_max, RngStream& rng) {
  require_k(k);
  require_t_max(t_max);
  RayleighPath path{k, t_max, {}};
  double t = 0.0;
  double level = 0.0;
  for (;;) {
    const double gap = rayleigh_gap(k, level, rng.exponential());
    if (t + gap > t_max) break;
    t += gap;
    const double before = level + gap;
    level = before * std::pow(rng.uniform_pos(), 1.0 / k);
    path.jumps.push_back({t, level});
  }
  return path;
}

double sample_rayleigh_value(int k, double t_end, RngStream& rng) {
  require_k(k);
  require_t_max(t_end);
  double t = 0.0;
  double level = 0.0;
  for (;;) {
    const double gap = rayleigh_gap(k, level, rng.exponential());
    if (t + gap > t_end) return level + (t_end - t);
    t += gap;
    level = (level + gap) * std::pow(rng.uniform_pos(), 1.0 / k);
  }
}

double stationary_tail(int k, double t) {
  require_k(k);
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  return std::exp(-std::pow(t, k + 1.0) / (k + 1.0));
}

RayleighPath rayleigh_from_points(const PointSet2D& set, double t_max) {
  require_t_max(t_max);
  RayleighPath path{set.k, t_max, {}};
  // R_t = t + min(0, min_{s <= t} (x - s)); a point is a jump when it lowers the minimum.
  double offset = 0.0;
  for (const auto& p : set.points) {
    if (p.s > t_max) break;
    if (p.x - p.s < offset) {
      offset = p.x - p.s;
      path.jumps.push_back({p.s, p.x});
    }
  }
  return path;
}

double grid_cell(std::size_t n, int k) {
  require_k(k);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return std::pow(static_cast<double>(n), -static_cast<double>(k) / (k + 1.0));
}

bool box_occupied(const PointSet2D& set, double cell, std::int64_t i, std::int64_t j) {
  const double s_lo = (j - 1) * cell, s_hi = j * cell;
  const double x_lo = (i - 1) * cell, x_hi = i * cell;
  return std::any_of(set.points.begin(), set.points.end(), [&](const StripPoint& p) {
    return p.s > s_lo && p.s < s_hi && p.x > x_lo && p.x < x_hi;
  });
}

std::vector<std::int64_t> grid_process(const PointSet2D& set, double cell, std::int64_t steps) {
  // lowest occupied row per column; only columns 1..steps matter
  std::vector<std::int64_t> lowest_row(static_cast<std::size_t>(steps) + 1,
                                       std::numeric_limits<std::int64_t>::max());
  for (const auto& p : set.points) {
    const auto col = static_cast<std::int64_t>(std::floor(p.s / cell)) + 1;
    if (col < 1 || col > steps) continue;
    const auto row = static_cast<std::int64_t>(std::floor(p.x / cell)) + 1;
    auto& slot = lowest_row[static_cast<std::size_t>(col)];
    slot = std::min(slot, row);
  }
  std::vector<std::int64_t> c(static_cast<std::size_t>(steps) + 1);
  c[0] = 1;
  for (std::int64_t m = 1; m <= steps; ++m) {
    const auto prev = c[static_cast<std::size_t>(m - 1)];
    const auto row = lowest_row[static_cast<std::size_t>(m)];
    c[static_cast<std::size_t>(m)] = row <= prev ? row : prev + 1;
  }
  return c;
}

CoupledSample coupled_pair(std::size_t n, int k, double t_max, RngStream& rng) {
  require_k(k);
  require_t_max(t_max);
  const double cell = grid_cell(n, k);
  const double steps_real = std::floor(t_max / cell);
  if (steps_real > kMaxGridSteps) {
    throw ResourceLimitError("coupled_pair: window needs too many grid steps");
  }
  const auto steps = static_cast<std::int64_t>(steps_real);
  CoupledSample out;
  out.grid.n = n;
  out.grid.k = k;
  out.grid.cell = cell;
  // R_t <= t, so points above the diagonal never matter; y_max = t_max suffices.
  out.grid.points = ppp_strip(k, t_max, t_max, rng);
  out.grid.c_values = grid_process(out.grid.points, cell, steps);
  out.path = rayleigh_from_points(out.grid.points, t_max);
  return out;
}

double coupling_max_deviation(const CoupledSample& sample) {
  const double h = sample.grid.cell;
  double worst = 0.0;
  for (std::size_t m = 0; m < sample.grid.c_values.size(); ++m) {
    const double r = rayleigh_eval(sample.path, static_cast<double>(m) * h);
    const double d = std::abs(static_cast<double>(sample.grid.c_values[m]) * h - r) / h;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace ctree
