#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "choicetree/rng.hpp"
#include "choicetree/walk.hpp"

namespace ctree {

enum class TreeAlgorithm { ab, wilson };

/// One non-empty branch of a choice tree, in the order branches were added.
struct BranchRecord {
  Vertex attach = 0;              // tree vertex the branch hangs from
  std::int64_t size_before = 0;   // vertices in the tree before this branch
  std::int64_t length = 0;        // new vertices on the branch
  std::int64_t end_time = 0;      // walk time at which the branch ended
  /// AB only: forced collisions that immediately preceded this branch without
  /// adding a vertex (zero-length attempts).
  std::int64_t failed_attempts = 0;
  /// AB only: false when the branch was cut by the cover time, not a collision.
  bool ended_by_collision = true;
};

/// Wilson bookkeeping: vertex `position` of the loop-erased branch `branch`.
struct TimeStamp {
  std::int32_t branch = 0;
  std::int32_t position = 0;
};

/// Rooted spanning (or partial) tree of K_n with the history that built it.
///
/// For AB trees `first_entry` holds I(v), the first walk time at v. Wilson
/// trees have no single walk; there `first_entry` is the rank of v in the
/// time-stamp order, which plays the same role. `discovery` is the number of
/// tree vertices added before v in both cases. Vertices outside a partial
/// tree have parent, first_entry, discovery and branch_of all equal to -1.
struct LabeledTree {
  std::size_t n = 0;
  int k = 1;
  TreeAlgorithm algorithm = TreeAlgorithm::ab;
  StepRule variant = StepRule::maximal;
  Vertex root = 0;
  std::vector<Vertex> parent;  // root maps to itself
  std::vector<std::int64_t> first_entry;
  std::vector<std::int64_t> discovery;
  std::vector<std::int32_t> branch_of;  // 0 for the root, branches count from 1
  std::vector<std::int64_t> sigma;      // branch end times, strictly increasing
  std::vector<BranchRecord> branches;
  std::vector<TimeStamp> stamps;        // Wilson only
  std::vector<Vertex> trajectory;       // AB only, when requested

  std::size_t size() const;
  bool spanning() const { return size() == n; }
  bool contains(Vertex v) const;
};

struct AbOptions {
  /// Stop once this many non-empty branches have been closed by a collision; 0 = run to cover.
  std::size_t max_branches = 0;
  bool keep_trajectory = false;
};

LabeledTree sample_ab_tree(std::size_t n, int k, StepRule variant, RngStream& rng,
                           const AbOptions& options = {});
/// Same, reusing a full-past walk state of size n.
LabeledTree sample_ab_tree(ChoiceWalkState& workspace, int k, StepRule variant, RngStream& rng,
                           const AbOptions& options = {});

enum class WilsonOrder {
  shuffled,  // root 0, remaining vertices in uniformly random order
  identity,
};

LabeledTree sample_wilson_tree(std::size_t n, int k, StepRule variant, RngStream& rng,
                               WilsonOrder order = WilsonOrder::shuffled);

struct VertexMeasure {
  std::vector<double> weights;  // indexed by vertex; 0 outside the measured set
  double gamma = 0.0;
};

/// Weights proportional to first_entry^gamma (0^0 = 1), over the tree or, if
/// `branch_limit` is set, over the partial tree of its first branch_limit branches.
VertexMeasure tree_measure(const LabeledTree& tree, double gamma,
                           std::optional<std::int32_t> branch_limit = std::nullopt);

/// Rescaled cumulative tree sizes Y_0..Y_imax and attachment positions Z_0..Z_{imax-1}.
struct StickVector {
  int k = 1;
  std::size_t n = 0;
  std::vector<double> y;
  std::vector<double> z;
};

double stick_scale(std::size_t n, int k);

StickVector stick_vector(const LabeledTree& tree, std::size_t i_max);

/// AB stick vector straight from the walk, without materializing the tree.
StickVector sample_ab_sticks(ChoiceWalkState& workspace, int k, StepRule variant,
                             std::size_t i_max, RngStream& rng);

std::string canonical_tree_code(const LabeledTree& tree);

std::vector<std::vector<std::int64_t>> tree_distance_matrix(const LabeledTree& tree,
                                                            std::span<const Vertex> vertices);

/// One observation of a branch-extension event.
struct HazardObservation {
  std::int64_t size;   // tree size the branch grows from
  std::int64_t step;   // AB: attempt step p >= 1; Wilson: loop-erased index i >= 0
  bool survived;
};

/// AB: P(L >= p | L >= p-1, size) = 1 - ((size + p - 1)/n)^k.
void ab_hazard_observations(const LabeledTree& tree, std::vector<HazardObservation>& out);
/// Wilson: P(tau > i+1 | tau > i, size) = 1 - ((size + i + 1)/n)^k.
void wilson_hazard_observations(const LabeledTree& tree, std::vector<HazardObservation>& out);

const char* to_string(TreeAlgorithm a);
TreeAlgorithm parse_tree_algorithm(const std::string& s);

}  // namespace ctree
