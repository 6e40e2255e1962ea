#include "choicetree/stickbreak.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "choicetree/point_process.hpp"

namespace ctree {

EmbeddedTree sb_build(const std::vector<double>& y, const std::vector<double>& z) {
  if (y.size() < 2 || y.front() != 0.0) {
    throw std::invalid_argument("sb_build: y must start at 0 and hold at least one cut");
  }
  if (z.size() + 1 != y.size()) throw std::invalid_argument("sb_build: need |z| = |y| - 1");
  EmbeddedTree t{y, z, {StickBranch{}}};
  t.branches.reserve(y.size());
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (!(y[i] > y[i - 1]) || !std::isfinite(y[i])) {
      throw std::invalid_argument("sb_build: y must be strictly increasing");
    }
    const double zi = z[i - 1];
    if (!(zi >= 0.0) || zi > y[i - 1]) throw std::invalid_argument("sb_build: need 0 <= z_i <= y_i");
    const TreePoint glue = project_rho(t, zi);
    t.branches.push_back({y[i] - y[i - 1], glue.branch, glue.offset});
  }
  return t;
}

void sb_glue_positions(double gamma, const std::vector<double>& y, RngStream& rng,
                       std::vector<double>& z) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  z.assign(y.size() - 1, 0.0);
  const double inv = 1.0 / (gamma + 1.0);
  for (std::size_t i = 1; i < z.size(); ++i) z[i] = y[i] * std::pow(rng.uniform(), inv);
}

StickSample sb_sample(double beta, double gamma, std::size_t branch_count, RngStream& rng) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be > 0");
  if (!(gamma >= 0.0) || gamma > beta - 1.0) {
    throw std::invalid_argument("gamma must lie in [0, beta - 1]");
  }
  if (branch_count < 1) throw std::invalid_argument("need at least one branch");
  StickSample s;
  s.beta = beta;
  s.gamma = gamma;
  s.y.reserve(branch_count + 1);
  s.y.push_back(0.0);
  for (double p : halfline_arrivals(beta, branch_count, rng)) s.y.push_back(p);
  sb_glue_positions(gamma, s.y, rng, s.z);
  s.tree = sb_build(s.y, s.z);
  return s;
}

TreePoint project_rho(const EmbeddedTree& tree, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("project_rho: t must be >= 0");
  // branches may be under construction, so only the finished prefix counts
  const std::size_t built = tree.branches.size() - 1;
  if (t > tree.y[built]) throw std::out_of_range("project_rho: t beyond the built sticks");
  if (t == 0.0) return {0, 0.0};
  const auto it = std::lower_bound(tree.y.begin() + 1, tree.y.begin() + built + 1, t);
  const auto i = static_cast<std::size_t>(it - tree.y.begin());
  return {static_cast<std::int32_t>(i), t - tree.y[i - 1]};
}

std::vector<std::pair<std::int32_t, double>> coordinates(const EmbeddedTree& tree, TreePoint p) {
  if (p.branch < 0 || static_cast<std::size_t>(p.branch) >= tree.branches.size()) {
    throw std::out_of_range("unknown branch");
  }
  std::vector<std::pair<std::int32_t, double>> out;
  while (p.branch != 0) {
    if (p.offset != 0.0) out.emplace_back(p.branch, p.offset);
    const auto& b = tree.branches[static_cast<std::size_t>(p.branch)];
    p = {b.attach_branch, b.attach_offset};
  }
  return out;
}

double distance(const EmbeddedTree& tree, TreePoint a, TreePoint b) {
  const auto ca = coordinates(tree, a);
  const auto cb = coordinates(tree, b);
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ca.size() || j < cb.size()) {
    if (j == cb.size() || (i < ca.size() && ca[i].first > cb[j].first)) {
      d += ca[i++].second;
    } else if (i == ca.size() || cb[j].first > ca[i].first) {
      d += cb[j++].second;
    } else {
      d += std::abs(ca[i++].second - cb[j++].second);
    }
  }
  return d;
}

double sb_measure_mass(const EmbeddedTree& tree, double gamma, std::size_t i, std::size_t j) {
  if (i > j) throw std::invalid_argument("sb_measure_mass: need i <= j");
  if (j == 0 || j > tree.branch_count()) throw std::out_of_range("sb_measure_mass: bad j");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  return std::pow(tree.y[i] / tree.y[j], gamma + 1.0);
}

double hausdorff_partial(const EmbeddedTree& tree, std::size_t i, std::size_t j) {
  if (i > j) throw std::invalid_argument("hausdorff_partial: need i <= j");
  if (j > tree.branch_count()) throw std::out_of_range("hausdorff_partial: j too large");
  // T^(i) contains T^(j)'s points except those on branches > i, and the
  // distance from a tip back to T^(i) is its coordinate mass on those branches
  double worst = 0.0;
  for (std::size_t b = i + 1; b <= j; ++b) {
    double excess = 0.0;
    TreePoint p{static_cast<std::int32_t>(b), tree.branches[b].length};
    while (static_cast<std::size_t>(p.branch) > i) {
      excess += p.offset;
      const auto& br = tree.branches[static_cast<std::size_t>(p.branch)];
      p = {br.attach_branch, br.attach_offset};
    }
    worst = std::max(worst, excess);
  }
  return worst;
}

std::vector<double> urn_run(UrnState& state, const std::vector<double>& deltas, RngStream& rng) {
  if (!(state.u >= 0.0) || !(state.v >= 0.0) || !(state.u + state.v > 0.0)) {
    throw std::invalid_argument("urn needs non-negative masses with positive total");
  }
  std::vector<double> trace;
  trace.reserve(deltas.size() + 1);
  trace.push_back(state.ratio());
  for (double d : deltas) {
    if (!(d >= 0.0)) throw std::invalid_argument("urn increments must be >= 0");
    if (rng.uniform() * (state.u + state.v) < state.u) {
      state.u += d;
    } else {
      state.v += d;
    }
    trace.push_back(state.ratio());
  }
  return trace;
}

}  // namespace ctree
