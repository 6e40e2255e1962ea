#include "choicetree/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "choicetree/experiments.hpp"
#include "choicetree/io.hpp"
#include "choicetree/rayleigh.hpp"
#include "choicetree/stickbreak.hpp"

namespace ctree {

namespace {

constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Flags {
  std::optional<std::size_t> n;
  std::optional<int> k;
  std::optional<std::int64_t> replicas;
  std::optional<std::int64_t> horizon;
  std::string variant;
  std::string algo = "ab";
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> t_max;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  int jobs = 0;
  bool serial = false;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", f.jobs, "worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--serial", f.serial, "run replicas on the serial reference path");
}

void add_model(CLI::App* cmd, Flags& f) {
  cmd->add_option("-n", f.n, "vertices of K_n");
  cmd->add_option("-k", f.k, "number of choices");
  cmd->add_option("--variant", f.variant, "maximal or uniform");
}

std::size_t need_n(const Flags& f) {
  if (!f.n) throw std::invalid_argument("-n is required");
  return *f.n;
}

int need_k(const Flags& f, int fallback) {
  const int k = f.k.value_or(fallback);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return k;
}

StepRule variant_of(const Flags& f) {
  return f.variant.empty() ? StepRule::maximal : parse_step_rule(f.variant);
}

std::int64_t horizon_of(const Flags& f, std::int64_t fallback) {
  const auto h = f.horizon.value_or(fallback);
  if (h < 1) throw std::invalid_argument("horizon must be >= 1");
  return h;
}

int cmd_sample_walk(const Flags& f, const std::string& avoid) {
  const std::size_t n = need_n(f);
  const ChoiceRule rule{variant_of(f), need_k(f, 1)};
  const AvoidMode mode = avoid == "loop-erasure" ? AvoidMode::loop_erasure : AvoidMode::full_past;
  RngStream rng(f.seed, 0);
  const auto path = run_choice_walk(n, rule, mode, horizon_of(f, 100), rng);
  Output out(f.out);
  if (f.format == "json") {
    out.stream() << nlohmann::json{{"n", n}, {"k", rule.k}, {"variant", to_string(rule.variant)},
                                   {"trajectory", path}}.dump()
                 << '\n';
  } else {
    write_trajectory_csv(out.stream(), path);
  }
  return 0;
}

int cmd_sample_le(const Flags& f) {
  const std::size_t n = need_n(f);
  const ChoiceRule rule{variant_of(f), need_k(f, 1)};
  RngStream rng(f.seed, 0);
  ChoiceWalkState state(n, AvoidMode::loop_erasure);
  std::vector<std::int32_t> z;
  le_length_trace(state, rule, horizon_of(f, 1000), rng, z);
  Output out(f.out);
  if (f.format == "json") {
    out.stream() << nlohmann::json{{"n", n}, {"k", rule.k}, {"variant", to_string(rule.variant)},
                                   {"Z", z}}.dump()
                 << '\n';
  } else {
    write_le_csv(out.stream(), z);
  }
  return 0;
}

int cmd_sample_rayleigh(const Flags& f, double grid, bool jumps) {
  RngStream rng(f.seed, 0);
  const auto path = sample_rayleigh(need_k(f, 1), f.t_max.value_or(10.0), rng);
  Output out(f.out);
  if (f.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& jump : path.jumps) j.push_back({jump.s, jump.x});
    out.stream() << nlohmann::json{{"k", path.k}, {"t_max", path.t_max}, {"jumps", j}}.dump() << '\n';
  } else if (jumps) {
    write_jumps_csv(out.stream(), path);
  } else {
    write_rayleigh_csv(out.stream(), path, grid);
  }
  return 0;
}

LabeledTree one_tree(const Flags& f, TreeAlgorithm algo, RngStream& rng) {
  const std::size_t n = need_n(f);
  const int k = need_k(f, 1);
  return algo == TreeAlgorithm::ab ? sample_ab_tree(n, k, variant_of(f), rng)
                                   : sample_wilson_tree(n, k, variant_of(f), rng);
}

int cmd_sample_tree(const Flags& f) {
  const TreeAlgorithm algo = parse_tree_algorithm(f.algo);
  const auto reps = f.replicas.value_or(1);
  if (reps < 1) throw std::invalid_argument("replicas must be >= 1");
  if (f.format == "csv" || reps > 1) {
    // a histogram of labeled-tree codes over the replicas
    const std::size_t n = need_n(f);
    const auto hist = tree_histogram(algo, n, need_k(f, 1), variant_of(f), static_cast<std::size_t>(reps),
                                     f.seed, f.serial ? Execution::serial : Execution::parallel, f.jobs);
    Output out(f.out);
    write_histogram_csv(out.stream(), hist);
    return 0;
  }
  RngStream rng(f.seed, 0);
  const auto tree = one_tree(f, algo, rng);
  Output out(f.out);
  out.stream() << to_json(tree).dump() << '\n';
  return 0;
}

int cmd_sample_sticks(const Flags& f, std::size_t branches) {
  if (branches < 1) throw std::invalid_argument("branches must be >= 1");
  RngStream rng(f.seed, 0);
  nlohmann::json j;
  if (f.algo == "sb") {
    const double beta = f.beta.value_or(need_k(f, 2));
    const double gamma = f.gamma.value_or(beta - 1.0);
    const auto s = sb_sample(beta, gamma, branches, rng);
    j = sticks_json(beta, gamma, s.y, s.z);
  } else if (f.algo == "ab") {
    const std::size_t n = need_n(f);
    const int k = need_k(f, 2);
    const StepRule v = variant_of(f);
    ChoiceWalkState ws(n, AvoidMode::full_past);
    const auto s = sample_ab_sticks(ws, k, v, branches, rng);
    j = sticks_json(k, v == StepRule::maximal ? k - 1.0 : 0.0, s.y, s.z);
    j["n"] = n;
    j["k"] = k;
    j["variant"] = to_string(v);
  } else {
    throw std::invalid_argument("sample-sticks: --algo must be sb or ab");
  }
  Output out(f.out);
  out.stream() << j.dump() << '\n';
  return 0;
}

int cmd_experiment(const Flags& f, const std::string& name, const std::string& summary) {
  ExperimentConfig cfg;
  cfg.n = f.n;
  cfg.k = f.k;
  cfg.replicas = f.replicas;
  cfg.horizon = f.horizon;
  if (!f.variant.empty()) cfg.variant = parse_step_rule(f.variant);
  cfg.beta = f.beta;
  cfg.gamma = f.gamma;
  cfg.t_max = f.t_max;
  cfg.seed = f.seed;
  cfg.jobs = f.jobs;
  cfg.exec = f.serial ? Execution::serial : Execution::parallel;
  const auto reports = run_experiment(name, cfg);
  bool ok = true;
  {
    Output out(f.out);
    for (const auto& r : reports) {
      write_report_line(out.stream(), r);
      ok = ok && r.pass;
    }
  }
  if (!summary.empty()) {
    Output s(summary);
    write_summary_csv(s.stream(), reports);
  }
  return ok ? 0 : kFailure;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"k-choice random walks, choice spanning trees and their scaling limits"};
  app.require_subcommand(1);
  Flags f;
  std::function<int()> run;

  auto* walk = app.add_subcommand("sample-walk", "raw choice-walk trajectory (CSV m,vertex)");
  std::string avoid = "full-past";
  add_model(walk, f);
  add_common(walk, f);
  walk->add_option("--horizon", f.horizon, "number of steps");
  walk->add_option("--avoid", avoid, "full-past or loop-erasure")
      ->check(CLI::IsMember({"full-past", "loop-erasure"}));
  walk->callback([&] { run = [&] { return cmd_sample_walk(f, avoid); }; });

  auto* le = app.add_subcommand("sample-le", "loop-erased length process (CSV m,Z)");
  add_model(le, f);
  add_common(le, f);
  le->add_option("--horizon", f.horizon, "number of steps");
  le->callback([&] { run = [&] { return cmd_sample_le(f); }; });

  auto* ray = app.add_subcommand("sample-rayleigh", "k-Rayleigh path (CSV t,value or s,x)");
  double grid = 0.01;
  bool jumps = false;
  ray->add_option("-k", f.k, "Rayleigh index");
  ray->add_option("--t-max", f.t_max, "time window");
  ray->add_option("--grid", grid, "evaluation grid step");
  ray->add_flag("--jumps", jumps, "write the jump list instead of a grid");
  add_common(ray, f);
  ray->callback([&] { run = [&] { return cmd_sample_rayleigh(f, grid, jumps); }; });

  auto* tree = app.add_subcommand("sample-tree", "choice spanning tree (JSON) or code histogram (CSV)");
  add_model(tree, f);
  add_common(tree, f);
  tree->add_option("--algo", f.algo, "ab or wilson");
  tree->add_option("--replicas", f.replicas, "trees to histogram");
  tree->callback([&] { run = [&] { return cmd_sample_tree(f); }; });

  auto* sticks = app.add_subcommand("sample-sticks", "stick-breaking vector (JSON)");
  std::size_t branches = 5;
  add_model(sticks, f);
  add_common(sticks, f);
  std::string stick_source = "sb";
  sticks->add_option("--algo", stick_source, "sb (random stick breaking) or ab (rescaled AB walk)");
  sticks->add_option("--beta", f.beta);
  sticks->add_option("--gamma", f.gamma);
  sticks->add_option("--branches", branches, "number of sticks");
  sticks->callback([&] {
    f.algo = stick_source;
    run = [&] { return cmd_sample_sticks(f, branches); };
  });

  auto* exp = app.add_subcommand("experiment", "run a named statistical check (JSON lines)");
  std::string name, summary;
  exp->add_option("name", name, "experiment name")->required()->check(CLI::IsMember(experiment_names()));
  add_model(exp, f);
  add_common(exp, f);
  exp->add_option("--replicas", f.replicas);
  exp->add_option("--horizon", f.horizon);
  exp->add_option("--beta", f.beta);
  exp->add_option("--gamma", f.gamma);
  exp->add_option("--t-max", f.t_max);
  exp->add_option("--summary", summary, "also write a CSV summary table here");
  exp->callback([&] { run = [&] { return cmd_experiment(f, name, summary); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace ctree
