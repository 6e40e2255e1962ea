#include "choicetree/walk.hpp"

#include <stdexcept>
#include <unordered_map>

namespace ctree {

ChoiceWalkState::ChoiceWalkState(std::size_t n, AvoidMode mode)
    : n_(n),
      mode_(mode),
      last_occurrence_(n, -1),
      first_entry_(n, -1),
      discovery_(n, -1),
      le_position_(n, -1),
      terminal_(n, 0),
      terminal_priority_(n, 0) {
  if (n < 1) throw std::invalid_argument("walk needs n >= 1");
  if (n > static_cast<std::size_t>(INT32_MAX)) throw std::invalid_argument("n too large");
}

void ChoiceWalkState::reset(Vertex start) {
  if (start < 0 || static_cast<std::size_t>(start) >= n_) {
    throw std::invalid_argument("start vertex out of range");
  }
  for (Vertex v : trajectory_) {
    last_occurrence_[v] = -1;
    first_entry_[v] = -1;
    discovery_[v] = -1;
    le_position_[v] = -1;
  }
  trajectory_.clear();
  le_vertices_.clear();
  le_times_.clear();
  visited_ = 0;
  advance(start);
}

void ChoiceWalkState::advance(Vertex next) {
  const auto t = static_cast<std::int64_t>(trajectory_.size());
  trajectory_.push_back(next);
  if (first_entry_[next] < 0) {
    first_entry_[next] = t;
    discovery_[next] = static_cast<std::int64_t>(visited_);
    ++visited_;
  }
  last_occurrence_[next] = t;
  const std::int32_t pos = le_position_[next];
  if (pos >= 0) {
    // close the loop: erase everything pushed after `next`
    while (static_cast<std::int32_t>(le_vertices_.size()) > pos + 1) {
      le_position_[le_vertices_.back()] = -1;
      le_vertices_.pop_back();
      le_times_.pop_back();
    }
  } else {
    le_position_[next] = static_cast<std::int32_t>(le_vertices_.size());
    le_vertices_.push_back(next);
    le_times_.push_back(t);
  }
}

bool ChoiceWalkState::in_avoid(Vertex v) const {
  return mode_ == AvoidMode::full_past ? first_entry_[v] >= 0 : le_position_[v] >= 0;
}

std::int64_t ChoiceWalkState::avoid_entry(Vertex v) const {
  if (mode_ == AvoidMode::full_past) return first_entry_[v];
  const std::int32_t pos = le_position_[v];
  return pos >= 0 ? le_times_[pos] : -1;
}

void ChoiceWalkState::add_terminal(Vertex v, std::uint64_t priority) {
  if (!terminal_[v]) {
    terminal_[v] = 1;
    terminal_list_.push_back(v);
  }
  terminal_priority_[v] = priority;
}

void ChoiceWalkState::clear_terminals() {
  for (Vertex v : terminal_list_) {
    terminal_[v] = 0;
    terminal_priority_[v] = 0;
  }
  terminal_list_.clear();
}

void sample_choices(const ChoiceWalkState& state, const ChoiceRule& rule, RngStream& rng,
                    std::vector<Vertex>& out) {
  if (rule.k < 1) throw std::invalid_argument("k must be >= 1");
  out.resize(static_cast<std::size_t>(rule.k));
  for (auto& c : out) c = static_cast<Vertex>(rng.below(state.n()));
}

std::vector<Vertex> sample_choices(const ChoiceWalkState& state, const ChoiceRule& rule,
                                   RngStream& rng) {
  std::vector<Vertex> out;
  sample_choices(state, rule, rng, out);
  return out;
}

StepDecision choice_step(const ChoiceWalkState& state, const ChoiceRule& rule,
                         std::span<const Vertex> choices) {
  if (choices.empty()) throw std::invalid_argument("choice_step: empty choice list");

  for (Vertex c : choices) {
    if (!state.is_terminal(c) && !state.in_avoid(c)) return {c, StepCase::fresh};
  }

  bool any_outside_ter = false;
  for (Vertex c : choices) {
    if (!state.is_terminal(c)) {
      if (rule.variant == StepRule::uniform) return {c, StepCase::avoid_collision};
      any_outside_ter = true;
    }
  }

  if (any_outside_ter) {
    // maximal: the choice that entered Av most recently
    Vertex best = -1;
    std::int64_t best_entry = -1;
    for (Vertex c : choices) {
      if (state.is_terminal(c)) continue;
      const std::int64_t e = state.avoid_entry(c);
      if (e > best_entry) {
        best_entry = e;
        best = c;
      }
    }
    return {best, StepCase::avoid_collision};
  }

  if (rule.variant == StepRule::uniform) return {choices.front(), StepCase::terminal};
  Vertex best = choices.front();
  for (Vertex c : choices.subspan(1)) {
    if (state.terminal_priority(c) > state.terminal_priority(best)) best = c;
  }
  return {best, StepCase::terminal};
}

std::vector<Vertex> loop_erase(std::span<const Vertex> path) {
  if (path.empty()) throw std::invalid_argument("loop_erase: empty path");
  std::unordered_map<Vertex, std::size_t> last;
  for (std::size_t t = 0; t < path.size(); ++t) last[path[t]] = t;
  std::vector<Vertex> out;
  std::size_t lambda = 0;
  while (lambda < path.size()) {
    out.push_back(path[lambda]);
    lambda = 1 + last[path[lambda]];
  }
  return out;
}

void le_length_trace(ChoiceWalkState& state, const ChoiceRule& rule, std::int64_t horizon,
                     RngStream& rng, std::vector<std::int32_t>& out) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be >= 1");
  if (state.mode() != AvoidMode::loop_erasure) {
    throw std::invalid_argument("le_length_trace needs a loop-erasure walk");
  }
  std::vector<Vertex> choices;
  state.reset(0);
  out.resize(static_cast<std::size_t>(horizon) + 1);
  out[0] = static_cast<std::int32_t>(state.le_length());
  for (std::int64_t m = 1; m <= horizon; ++m) {
    sample_choices(state, rule, rng, choices);
    state.advance(choice_step(state, rule, choices).vertex);
    out[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(state.le_length());
  }
}

StepFunction run_le_length_process(std::size_t n, const ChoiceRule& rule, std::int64_t horizon,
                                   RngStream& rng) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be >= 1");
  ChoiceWalkState state(n, AvoidMode::loop_erasure);
  std::vector<std::int32_t> z;
  le_length_trace(state, rule, horizon, rng, z);
  StepFunction f;
  f.breakpoints.reserve(z.size());
  f.values.reserve(z.size());
  for (std::size_t m = 0; m < z.size(); ++m) {
    f.breakpoints.push_back(static_cast<double>(m));
    f.values.push_back(z[m]);
  }
  return f;
}

std::vector<Vertex> run_choice_walk(std::size_t n, const ChoiceRule& rule, AvoidMode mode,
                                    std::int64_t steps, RngStream& rng) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  ChoiceWalkState state(n, mode);
  state.reset(0);
  std::vector<Vertex> choices;
  for (std::int64_t m = 0; m < steps; ++m) {
    sample_choices(state, rule, rng, choices);
    state.advance(choice_step(state, rule, choices).vertex);
  }
  return {state.trajectory().begin(), state.trajectory().end()};
}

const char* to_string(StepRule rule) {
  return rule == StepRule::maximal ? "maximal" : "uniform";
}

StepRule parse_step_rule(const std::string& s) {
  if (s == "maximal" || s == "max") return StepRule::maximal;
  if (s == "uniform" || s == "unif") return StepRule::uniform;
  throw std::invalid_argument("unknown variant: " + s);
}

}  // namespace ctree
