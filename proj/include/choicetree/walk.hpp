#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "choicetree/rng.hpp"
#include "choicetree/step_function.hpp"

namespace ctree {

using Vertex = std::int32_t;

enum class StepRule { maximal, uniform };

struct ChoiceRule {
  StepRule variant = StepRule::maximal;
  int k = 1;
};

/// Which part of the past the walk tries to avoid.
enum class AvoidMode { full_past, loop_erasure };

enum class StepCase {
  fresh,            // some choice was outside Ter and Av
  avoid_collision,  // forced into Av (a loop, or a revisit for the full-past walk)
  terminal,         // every choice was in Ter
};

struct StepDecision {
  Vertex vertex;
  StepCase kind;
};

/// Trajectory of a choice walk on K_n (with self-loops) plus the bookkeeping
/// the step rules need: last occurrences, the incrementally maintained
/// loop-erasure, the avoid set and a ranked terminal set.
///
/// Single-owner and mutable. `reset` clears only the entries touched by the
/// previous trajectory, so one state can be reused across many replicas.
class ChoiceWalkState {
 public:
  ChoiceWalkState(std::size_t n, AvoidMode mode);

  void reset(Vertex start);
  void advance(Vertex next);

  std::size_t n() const { return n_; }
  AvoidMode mode() const { return mode_; }
  Vertex current() const { return trajectory_.back(); }
  /// Index of the current position, i.e. trajectory().size() - 1.
  std::int64_t time() const { return static_cast<std::int64_t>(trajectory_.size()) - 1; }
  std::span<const Vertex> trajectory() const { return trajectory_; }

  /// Largest i with trajectory()[i] == v, or -1.
  std::int64_t last_occurrence(Vertex v) const { return last_occurrence_[v]; }
  /// Smallest i with trajectory()[i] == v, or -1.
  std::int64_t first_entry(Vertex v) const { return first_entry_[v]; }
  std::size_t visited_count() const { return visited_; }
  /// Number of distinct vertices visited before v, or -1 if v is unvisited.
  std::int64_t discovery_index(Vertex v) const { return discovery_[v]; }

  bool in_avoid(Vertex v) const;
  /// Time at which v joined the avoid set (its current membership); -1 if absent.
  /// For the loop-erasure this is v's lambda-time, so it orders Av by LE position.
  std::int64_t avoid_entry(Vertex v) const;

  std::span<const Vertex> loop_erasure() const { return le_vertices_; }
  /// The lambda-times (indices into the trajectory) of the loop-erasure.
  std::span<const std::int64_t> le_indices() const { return le_times_; }
  std::size_t le_length() const { return le_vertices_.size(); }

  bool is_terminal(Vertex v) const { return terminal_[v] != 0; }
  std::uint64_t terminal_priority(Vertex v) const { return terminal_priority_[v]; }
  void add_terminal(Vertex v, std::uint64_t priority);
  void set_terminal_priority(Vertex v, std::uint64_t priority) { terminal_priority_[v] = priority; }
  void clear_terminals();

 private:
  std::size_t n_;
  AvoidMode mode_;
  std::vector<Vertex> trajectory_;
  std::vector<std::int64_t> last_occurrence_;
  std::vector<std::int64_t> first_entry_;
  std::vector<std::int64_t> discovery_;
  std::size_t visited_ = 0;
  std::vector<Vertex> le_vertices_;
  std::vector<std::int64_t> le_times_;
  std::vector<std::int32_t> le_position_;  // -1 if not on the loop-erasure
  std::vector<std::uint8_t> terminal_;
  std::vector<std::uint64_t> terminal_priority_;
  std::vector<Vertex> terminal_list_;
};

/// k independent uniform vertices of K_n, written into `out` (resized to k).
void sample_choices(const ChoiceWalkState& state, const ChoiceRule& rule, RngStream& rng,
                    std::vector<Vertex>& out);
std::vector<Vertex> sample_choices(const ChoiceWalkState& state, const ChoiceRule& rule,
                                   RngStream& rng);

/// Applies the maximal or uniform rule to a given list of choices.
StepDecision choice_step(const ChoiceWalkState& state, const ChoiceRule& rule,
                         std::span<const Vertex> choices);

/// Chronological loop-erasure computed from scratch by the lambda recursion.
std::vector<Vertex> loop_erase(std::span<const Vertex> path);

/// Loop-erasure lengths Z_0..Z_horizon of a walk from vertex 0 with Ter empty
/// and Av = LE, reusing `state` (its terminal set must be empty).
void le_length_trace(ChoiceWalkState& state, const ChoiceRule& rule, std::int64_t horizon,
                     RngStream& rng, std::vector<std::int32_t>& out);

StepFunction run_le_length_process(std::size_t n, const ChoiceRule& rule, std::int64_t horizon,
                                   RngStream& rng);

/// Raw trajectory of `steps` choice steps from vertex 0 with Ter empty.
std::vector<Vertex> run_choice_walk(std::size_t n, const ChoiceRule& rule, AvoidMode mode,
                                    std::int64_t steps, RngStream& rng);

const char* to_string(StepRule rule);
StepRule parse_step_rule(const std::string& s);

}  // namespace ctree
