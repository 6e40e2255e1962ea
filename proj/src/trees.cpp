#include "choicetree/trees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ctree {

namespace {

void require_tree_args(std::size_t n, int k) {
  if (n < 2) throw std::invalid_argument("tree samplers need n >= 2");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

// Runs the full-past choice walk from vertex 0 and reports first-entry steps
// and closed branches. A branch is a maximal run of fresh steps; the runs of
// forced collisions between branches pick its attachment vertex.
template <class Observer>
void run_ab_walk(ChoiceWalkState& walk, const ChoiceRule& rule, std::size_t max_branches,
                 RngStream& rng, Observer& obs) {
  if (walk.mode() != AvoidMode::full_past) {
    throw std::invalid_argument("AB sampler needs a full-past walk state");
  }
  walk.clear_terminals();
  walk.reset(0);
  const std::size_t n = walk.n();
  std::vector<Vertex> choices;
  BranchRecord open{0, 1, 0, 0, 0, true};
  std::size_t closed = 0;
  while (walk.visited_count() < n) {
    sample_choices(walk, rule, rng, choices);
    const Vertex from = walk.current();
    const StepDecision d = choice_step(walk, rule, choices);
    walk.advance(d.vertex);
    if (d.kind == StepCase::fresh) {
      if (open.length == 0) open.attach = from;
      ++open.length;
      obs.on_fresh(d.vertex, from, walk.time(), walk.discovery_index(d.vertex),
                   static_cast<std::int32_t>(closed + 1));
    } else if (open.length == 0) {
      ++open.failed_attempts;
    } else {
      open.end_time = walk.time() - 1;
      open.ended_by_collision = true;
      obs.on_branch(open);
      ++closed;
      if (max_branches != 0 && closed >= max_branches) return;
      open = BranchRecord{0, static_cast<std::int64_t>(walk.visited_count()), 0, 0, 0, true};
    }
  }
  if (open.length > 0) {
    open.end_time = walk.time();
    open.ended_by_collision = false;
    obs.on_branch(open);
  }
}

struct TreeBuilder {
  LabeledTree& tree;
  void on_fresh(Vertex v, Vertex from, std::int64_t time, std::int64_t discovery,
                std::int32_t branch) {
    tree.parent[v] = from;
    tree.first_entry[v] = time;
    tree.discovery[v] = discovery;
    tree.branch_of[v] = branch;
  }
  void on_branch(const BranchRecord& b) {
    tree.branches.push_back(b);
    tree.sigma.push_back(b.end_time);
  }
};

struct StickBuilder {
  const ChoiceWalkState& walk;
  std::vector<BranchRecord> branches;
  std::vector<std::int64_t> attach_discovery;
  void on_fresh(Vertex, Vertex, std::int64_t, std::int64_t, std::int32_t) {}
  void on_branch(const BranchRecord& b) {
    branches.push_back(b);
    attach_discovery.push_back(walk.discovery_index(b.attach));
  }
};

LabeledTree empty_tree(std::size_t n, int k, TreeAlgorithm algo, StepRule variant) {
  LabeledTree t;
  t.n = n;
  t.k = k;
  t.algorithm = algo;
  t.variant = variant;
  t.root = 0;
  t.parent.assign(n, -1);
  t.first_entry.assign(n, -1);
  t.discovery.assign(n, -1);
  t.branch_of.assign(n, -1);
  t.parent[0] = 0;
  t.first_entry[0] = 0;
  t.discovery[0] = 0;
  t.branch_of[0] = 0;
  return t;
}

std::vector<std::int64_t> depths(const LabeledTree& tree) {
  std::vector<std::int64_t> depth(tree.n, -1);
  std::vector<Vertex> chain;
  for (std::size_t s = 0; s < tree.n; ++s) {
    Vertex v = static_cast<Vertex>(s);
    if (tree.parent[v] < 0 || depth[v] >= 0) continue;
    chain.clear();
    while (depth[v] < 0 && v != tree.root) {
      chain.push_back(v);
      v = tree.parent[v];
      if (v < 0 || chain.size() > tree.n) throw std::invalid_argument("parent map is not a tree");
    }
    if (v == tree.root) depth[v] = 0;
    std::int64_t d = depth[v];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
  }
  return depth;
}

}  // namespace

std::size_t LabeledTree::size() const {
  return static_cast<std::size_t>(
      std::count_if(parent.begin(), parent.end(), [](Vertex p) { return p >= 0; }));
}

bool LabeledTree::contains(Vertex v) const {
  return v >= 0 && static_cast<std::size_t>(v) < n && parent[v] >= 0;
}

LabeledTree sample_ab_tree(std::size_t n, int k, StepRule variant, RngStream& rng,
                           const AbOptions& options) {
  require_tree_args(n, k);
  ChoiceWalkState walk(n, AvoidMode::full_past);
  return sample_ab_tree(walk, k, variant, rng, options);
}

LabeledTree sample_ab_tree(ChoiceWalkState& workspace, int k, StepRule variant, RngStream& rng,
                           const AbOptions& options) {
  const std::size_t n = workspace.n();
  require_tree_args(n, k);
  LabeledTree tree = empty_tree(n, k, TreeAlgorithm::ab, variant);
  TreeBuilder builder{tree};
  run_ab_walk(workspace, ChoiceRule{variant, k}, options.max_branches, rng, builder);
  if (options.keep_trajectory) {
    tree.trajectory.assign(workspace.trajectory().begin(), workspace.trajectory().end());
  }
  return tree;
}

LabeledTree sample_wilson_tree(std::size_t n, int k, StepRule variant, RngStream& rng,
                               WilsonOrder order) {
  require_tree_args(n, k);
  LabeledTree tree = empty_tree(n, k, TreeAlgorithm::wilson, variant);
  tree.stamps.assign(n, TimeStamp{});
  tree.stamps[0] = {1, 1};

  std::vector<Vertex> sequence(n);
  std::iota(sequence.begin(), sequence.end(), 0);
  if (order == WilsonOrder::shuffled) {
    for (std::size_t i = n - 1; i >= 2; --i) {
      const auto j = 1 + rng.below(i);  // uniform on [1, i]
      std::swap(sequence[i], sequence[j]);
    }
  }

  // branches are always grown by the maximal walk; the variant only changes
  // how Ter is ranked
  const ChoiceRule rule{StepRule::maximal, k};
  ChoiceWalkState walk(n, AvoidMode::loop_erasure);
  std::uint64_t next_priority = 0;
  walk.add_terminal(0, next_priority++);
  std::vector<std::uint32_t> key_epoch(n, 0);
  std::uint32_t epoch = 0;

  std::int64_t tree_size = 1;
  std::int64_t walk_time = 0;
  std::int32_t branch_no = 1;
  std::vector<Vertex> choices;
  for (std::size_t idx = 1; idx < n; ++idx) {
    const Vertex start = sequence[idx];
    if (tree.parent[start] >= 0) continue;
    ++branch_no;
    ++epoch;
    walk.reset(start);
    Vertex attach = -1;
    for (;;) {
      sample_choices(walk, rule, rng, choices);
      if (variant == StepRule::uniform) {
        // lazily realized uniform random order on Ter, fresh for each branch
        for (Vertex c : choices) {
          if (walk.is_terminal(c) && key_epoch[c] != epoch) {
            key_epoch[c] = epoch;
            walk.set_terminal_priority(c, rng());
          }
        }
      }
      const StepDecision d = choice_step(walk, rule, choices);
      ++walk_time;
      if (d.kind == StepCase::terminal) {
        attach = d.vertex;
        break;
      }
      walk.advance(d.vertex);
    }

    const auto le = walk.loop_erasure();
    const auto len = static_cast<std::int32_t>(le.size());
    tree.branches.push_back(BranchRecord{attach, tree_size, len, walk_time, 0, true});
    tree.sigma.push_back(walk_time);
    // add from the tree end outward so that discovery follows the stamp order
    for (std::int32_t j = len; j >= 1; --j) {
      const Vertex v = le[static_cast<std::size_t>(j - 1)];
      tree.parent[v] = j == len ? attach : le[static_cast<std::size_t>(j)];
      tree.stamps[v] = {branch_no, j};
      tree.first_entry[v] = tree_size;
      tree.discovery[v] = tree_size;
      tree.branch_of[v] = branch_no - 1;
      ++tree_size;
      walk.add_terminal(v, next_priority++);
    }
  }
  return tree;
}

VertexMeasure tree_measure(const LabeledTree& tree, double gamma,
                           std::optional<std::int32_t> branch_limit) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  VertexMeasure m{std::vector<double>(tree.n, 0.0), gamma};
  double total = 0.0;
  for (std::size_t v = 0; v < tree.n; ++v) {
    if (tree.parent[v] < 0) continue;
    if (branch_limit && tree.branch_of[v] > *branch_limit) continue;
    if (tree.first_entry[v] < 0) throw std::invalid_argument("tree has no first-entry times");
    const double w = std::pow(static_cast<double>(tree.first_entry[v]), gamma);
    m.weights[v] = w;
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("tree measure has zero total mass");
  for (double& w : m.weights) w /= total;
  return m;
}

double stick_scale(std::size_t n, int k) {
  return std::pow(static_cast<double>(n), -static_cast<double>(k) / (k + 1.0));
}

StickVector stick_vector(const LabeledTree& tree, std::size_t i_max) {
  if (tree.branches.size() < i_max) {
    throw std::out_of_range("stick_vector: tree has fewer branches than requested");
  }
  const double scale = stick_scale(tree.n, tree.k);
  StickVector sv{tree.k, tree.n, {0.0}, {0.0}};
  std::int64_t size = 1;
  for (std::size_t i = 0; i < i_max; ++i) {
    size += tree.branches[i].length;
    sv.y.push_back(scale * static_cast<double>(size));
    if (i + 1 < i_max) {
      const Vertex a = tree.branches[i + 1].attach;
      sv.z.push_back(scale * static_cast<double>(tree.discovery[a]));
    }
  }
  return sv;
}

StickVector sample_ab_sticks(ChoiceWalkState& workspace, int k, StepRule variant,
                             std::size_t i_max, RngStream& rng) {
  require_tree_args(workspace.n(), k);
  StickBuilder builder{workspace, {}, {}};
  run_ab_walk(workspace, ChoiceRule{variant, k}, i_max, rng, builder);
  if (builder.branches.size() < i_max) {
    throw std::out_of_range("sample_ab_sticks: walk covered K_n before enough branches");
  }
  const double scale = stick_scale(workspace.n(), k);
  StickVector sv{k, workspace.n(), {0.0}, {0.0}};
  std::int64_t size = 1;
  for (std::size_t i = 0; i < i_max; ++i) {
    size += builder.branches[i].length;
    sv.y.push_back(scale * static_cast<double>(size));
    if (i + 1 < i_max) sv.z.push_back(scale * static_cast<double>(builder.attach_discovery[i + 1]));
  }
  return sv;
}

std::string canonical_tree_code(const LabeledTree& tree) {
  if (!tree.spanning()) throw std::invalid_argument("canonical_tree_code: tree is not spanning");
  depths(tree);  // rejects cycles
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(tree.n - 1);
  for (std::size_t v = 0; v < tree.n; ++v) {
    const Vertex p = tree.parent[v];
    if (static_cast<Vertex>(v) == tree.root) continue;
    edges.emplace_back(std::min<Vertex>(p, static_cast<Vertex>(v)),
                       std::max<Vertex>(p, static_cast<Vertex>(v)));
  }
  std::sort(edges.begin(), edges.end());
  std::string code;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) code += '|';
    code += std::to_string(edges[i].first);
    code += '-';
    code += std::to_string(edges[i].second);
  }
  return code;
}

std::vector<std::vector<std::int64_t>> tree_distance_matrix(const LabeledTree& tree,
                                                            std::span<const Vertex> vertices) {
  for (Vertex v : vertices) {
    if (!tree.contains(v)) throw std::invalid_argument("tree_distance_matrix: unknown vertex");
  }
  const auto depth = depths(tree);
  const auto distance = [&](Vertex a, Vertex b) {
    std::int64_t d = 0;
    while (depth[a] > depth[b]) a = tree.parent[a], ++d;
    while (depth[b] > depth[a]) b = tree.parent[b], ++d;
    while (a != b) a = tree.parent[a], b = tree.parent[b], d += 2;
    return d;
  };
  const std::size_t m = vertices.size();
  std::vector<std::vector<std::int64_t>> out(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      out[i][j] = out[j][i] = distance(vertices[i], vertices[j]);
    }
  }
  return out;
}

void ab_hazard_observations(const LabeledTree& tree, std::vector<HazardObservation>& out) {
  for (const auto& b : tree.branches) {
    for (std::int64_t f = 0; f < b.failed_attempts; ++f) out.push_back({b.size_before, 1, false});
    for (std::int64_t p = 1; p <= b.length; ++p) out.push_back({b.size_before, p, true});
    if (b.ended_by_collision) out.push_back({b.size_before, b.length + 1, false});
  }
}

void wilson_hazard_observations(const LabeledTree& tree, std::vector<HazardObservation>& out) {
  for (const auto& b : tree.branches) {
    for (std::int64_t i = 0; i < b.length; ++i) {
      out.push_back({b.size_before, i, i + 1 < b.length});
    }
  }
}

const char* to_string(TreeAlgorithm a) { return a == TreeAlgorithm::ab ? "ab" : "wilson"; }

TreeAlgorithm parse_tree_algorithm(const std::string& s) {
  if (s == "ab") return TreeAlgorithm::ab;
  if (s == "wilson") return TreeAlgorithm::wilson;
  throw std::invalid_argument("unknown algorithm: " + s);
}

}  // namespace ctree
