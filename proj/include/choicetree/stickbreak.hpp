#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "choicetree/rng.hpp"

namespace ctree {

/// Branch i of a stick-breaking tree, glued to the point `attach_offset` along
/// branch `attach_branch` (branch 0 is the root, a single point).
struct StickBranch {
  double length = 0.0;
  std::int32_t attach_branch = 0;
  double attach_offset = 0.0;
};

/// A point of the tree: distance `offset` from the base of branch `branch`.
struct TreePoint {
  std::int32_t branch = 0;
  double offset = 0.0;
};

/// Finite stick-breaking tree T^(j) built from boundaries y_0 = 0 < y_1 < ... < y_j
/// and glue positions z_0..z_{j-1}: branch i+1 is glued at rho(z_i).
///
/// Branch i is coordinate direction i, so a point embeds as the sparse vector
/// of offsets along its chain of ancestor branches and distances are l1.
struct EmbeddedTree {
  std::vector<double> y;
  std::vector<double> z;
  std::vector<StickBranch> branches;  // index 0 is the root placeholder

  std::size_t branch_count() const { return branches.size() - 1; }
  double total_length() const { return y.back(); }
};

EmbeddedTree sb_build(const std::vector<double>& y, const std::vector<double>& z);

struct StickSample {
  double beta = 0.0;
  double gamma = 0.0;
  std::vector<double> y;
  std::vector<double> z;
  EmbeddedTree tree;
};

/// Random stick breaking with cuts from the t^beta dt process and glue points
/// of density (gamma+1) u^gamma / Y_i^(gamma+1) on [0, Y_i).
StickSample sb_sample(double beta, double gamma, std::size_t branch_count, RngStream& rng);

/// Glue positions only, for callers that supply their own cuts.
void sb_glue_positions(double gamma, const std::vector<double>& y, RngStream& rng,
                       std::vector<double>& z);

TreePoint project_rho(const EmbeddedTree& tree, double t);

/// Sparse coordinates (branch, offset), ordered by decreasing branch index.
std::vector<std::pair<std::int32_t, double>> coordinates(const EmbeddedTree& tree, TreePoint p);

double distance(const EmbeddedTree& tree, TreePoint a, TreePoint b);

/// mu_j(T^(i)) = (y_i / y_j)^(gamma+1).
double sb_measure_mass(const EmbeddedTree& tree, double gamma, std::size_t i, std::size_t j);

/// Hausdorff distance between T^(i) and T^(j), i <= j.
double hausdorff_partial(const EmbeddedTree& tree, std::size_t i, std::size_t j);

struct UrnState {
  double u = 0.0;  // black mass
  double v = 0.0;  // white mass
  double ratio() const { return u / (u + v); }
};

/// Draws a colour with probability proportional to its mass and adds deltas[m]
/// to it, for every m. Returns R_0..R_M and leaves the final masses in `state`.
std::vector<double> urn_run(UrnState& state, const std::vector<double>& deltas, RngStream& rng);

}  // namespace ctree
