#include "choicetree/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "choicetree/rayleigh.hpp"
#include "choicetree/stickbreak.hpp"

namespace ctree {

namespace {

std::uint64_t sub_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
  for (auto l : labels) seed = derive_seed(seed, l);
  return seed;
}

std::string tag(const char* name, std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::string s = name;
  for (const auto& [k, v] : kv) {
    s += ' ';
    s += k;
    s += '=';
    s += v;
  }
  return s;
}

std::string num(double x) {
  std::string s = std::to_string(x);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

template <class T>
std::vector<T> pick(const std::optional<T>& forced, std::vector<T> preset) {
  return forced ? std::vector<T>{*forced} : preset;
}

std::size_t replicas_or(const ExperimentConfig& cfg, std::size_t preset) {
  if (!cfg.replicas) return preset;
  if (*cfg.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  return static_cast<std::size_t>(*cfg.replicas);
}

double scale_exponent(int k) { return static_cast<double>(k) / (k + 1.0); }

std::vector<double> rayleigh_marginals(int k, double t, std::size_t replicas, std::uint64_t seed,
                                       Execution exec, int jobs) {
  return run_replicas<double>(replicas, seed, exec, jobs, NoWorkspace{},
                              [&](int, RngStream& rng, std::size_t) {
                                return sample_rayleigh_value(k, t, rng);
                              });
}

// Criterion 5 protocol, shared with the k = 1 regression.
std::vector<TestReport> le_vs_rayleigh(const ExperimentConfig& cfg, const std::vector<int>& ks,
                                       std::uint64_t label) {
  const std::size_t n = cfg.n.value_or(10000);
  const std::size_t reps = replicas_or(cfg, 10000);
  const StepRule variant = cfg.variant.value_or(StepRule::maximal);
  const std::vector<double> times{0.5, 1.0, 2.0};
  std::vector<TestReport> out;
  for (int k : ks) {
    const double growth = std::pow(static_cast<double>(n), scale_exponent(k));
    std::vector<std::int64_t> steps;
    for (double t : times) steps.push_back(static_cast<std::int64_t>(std::floor(t * growth)));
    const auto z = le_samples(n, k, variant, steps, reps, sub_seed(cfg.seed, {label, 1, std::uint64_t(k)}),
                              cfg.exec, cfg.jobs);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      // path length in edges against R at the lattice time, so that the atoms
      // of both laws (no jump / no loop yet) sit at the same point
      std::vector<double> scaled(reps);
      for (std::size_t r = 0; r < reps; ++r) scaled[r] = (z[r][ti] - 1) / growth;
      const double lattice_t = static_cast<double>(steps[ti]) / growth;
      const auto exact = rayleigh_marginals(
          k, lattice_t, reps, sub_seed(cfg.seed, {label, 2, std::uint64_t(k), ti}), cfg.exec, cfg.jobs);
      TestReport r = ks_two_sample(scaled, exact, 0.05);
      r.name = tag("le-vs-rayleigh", {{"n", std::to_string(n)}, {"k", std::to_string(k)},
                                      {"variant", to_string(variant)}, {"t", num(times[ti])}});
      r.add("step", static_cast<double>(steps[ti]));
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<TestReport> exp_tree_equality(const ExperimentConfig& cfg) {
  const std::size_t reps = replicas_or(cfg, 100000);
  std::vector<TestReport> out;
  for (std::size_t n : pick(cfg.n, {3, 4})) {
    for (int k : pick(cfg.k, {2, 3})) {
      for (StepRule v : pick(cfg.variant, {StepRule::maximal, StepRule::uniform})) {
        const auto vl = static_cast<std::uint64_t>(v);
        const auto ab = tree_histogram(TreeAlgorithm::ab, n, k, v, reps,
                                       sub_seed(cfg.seed, {1, n, std::uint64_t(k), vl, 0}),
                                       cfg.exec, cfg.jobs);
        const auto wil = tree_histogram(TreeAlgorithm::wilson, n, k, v, reps,
                                        sub_seed(cfg.seed, {1, n, std::uint64_t(k), vl, 1}),
                                        cfg.exec, cfg.jobs);
        TestReport r = chi_square_two_sample(ab, wil, 0.01);
        r.name = tag("tree-equality", {{"n", std::to_string(n)}, {"k", std::to_string(k)},
                                       {"variant", to_string(v)}});
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<TestReport> exp_branch_hazard(const ExperimentConfig& cfg, TreeAlgorithm algo) {
  const std::size_t n = cfg.n.value_or(50);
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  const StepRule variant = cfg.variant.value_or(StepRule::maximal);
  const std::size_t target = replicas_or(cfg, 100000);
  const bool wilson = algo == TreeAlgorithm::wilson;
  std::vector<TestReport> out;
  for (int k : pick(cfg.k, {2, 3})) {
    const auto seed = sub_seed(cfg.seed, {wilson ? 3u : 2u, n, std::uint64_t(k)});
    // trees are taken in replica order until `target` observations are in
    std::vector<HazardObservation> all;
    std::size_t trees = 0;
    const std::size_t batch = (target + n - 2) / (n - 1);
    for (std::size_t first = 0; all.size() < target; first += batch) {
      const auto per_tree = run_replicas<std::vector<HazardObservation>>(
          batch, derive_seed(seed, first), cfg.exec, cfg.jobs,
          [&] { return ChoiceWalkState(n, AvoidMode::full_past); },
          [&](ChoiceWalkState& ws, RngStream& rng, std::size_t) {
            std::vector<HazardObservation> obs;
            if (wilson) {
              wilson_hazard_observations(sample_wilson_tree(n, k, variant, rng), obs);
            } else {
              ab_hazard_observations(sample_ab_tree(ws, k, variant, rng), obs);
            }
            return obs;
          });
      for (const auto& v : per_tree) {
        if (all.size() >= target) break;
        all.insert(all.end(), v.begin(), v.end());
        ++trees;
      }
    }
    TestReport r = hazard_check(all, n, k, wilson);
    r.name = tag(wilson ? "branch-hazard-wilson" : "branch-hazard-ab",
                 {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"variant", to_string(variant)}});
    r.add("trees", static_cast<double>(trees));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TestReport> exp_rayleigh_tail(const ExperimentConfig& cfg) {
  const std::size_t reps = replicas_or(cfg, 100000);
  const double t_end = cfg.t_max.value_or(20.0);
  const std::vector<double> grid{0.25, 0.5, 1.0, 1.5};
  std::vector<TestReport> out;
  for (int k : pick(cfg.k, {1, 2, 3})) {
    const auto values =
        rayleigh_marginals(k, t_end, reps, sub_seed(cfg.seed, {4, std::uint64_t(k)}), cfg.exec, cfg.jobs);
    TestReport r;
    r.name = tag("rayleigh-tail", {{"k", std::to_string(k)}, {"T", num(t_end)}});
    r.threshold = 0.01;
    r.n_samples = static_cast<std::int64_t>(reps);
    for (double t : grid) {
      const auto above = std::count_if(values.begin(), values.end(), [t](double x) { return x > t; });
      const double emp = static_cast<double>(above) / static_cast<double>(reps);
      const double err = std::abs(emp - stationary_tail(k, t));
      r.add("err_t" + num(t), err);
      r.statistic = std::max(r.statistic, err);
    }
    r.pass = r.statistic <= r.threshold;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TestReport> exp_coupling_bound(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.n.value_or(10000);
  const double t_max = cfg.t_max.value_or(5.0);
  const std::size_t reps = replicas_or(cfg, 100);
  std::vector<TestReport> out;
  for (int k : pick(cfg.k, {2})) {
    const auto dev = run_replicas<double>(
        reps, sub_seed(cfg.seed, {5, n, std::uint64_t(k)}), cfg.exec, cfg.jobs, NoWorkspace{},
        [&](int, RngStream& rng, std::size_t) {
          return coupling_max_deviation(coupled_pair(n, k, t_max, rng));
        });
    TestReport r;
    r.name = tag("coupling-bound", {{"n", std::to_string(n)}, {"k", std::to_string(k)},
                                    {"t_max", num(t_max)}});
    // deviation measured in units of the box side; the slack absorbs rounding only
    r.threshold = 1.0 + 1e-9;
    r.n_samples = static_cast<std::int64_t>(reps);
    r.statistic = *std::max_element(dev.begin(), dev.end());
    const auto violations =
        std::count_if(dev.begin(), dev.end(), [&](double d) { return d > r.threshold; });
    r.add("violations", static_cast<double>(violations));
    r.pass = violations == 0;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TestReport> exp_stick_marginals(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.n.value_or(10000);
  const std::size_t reps = replicas_or(cfg, 10000);
  constexpr std::size_t i_max = 4;
  std::vector<TestReport> out;
  for (int k : pick(cfg.k, {2})) {
    for (StepRule v : pick(cfg.variant, {StepRule::maximal, StepRule::uniform})) {
      const double beta = cfg.beta.value_or(k);
      const double gamma = cfg.gamma.value_or(v == StepRule::maximal ? k - 1.0 : 0.0);
      const auto vl = static_cast<std::uint64_t>(v);
      const auto ab = ab_stick_samples(n, k, v, i_max, reps, sub_seed(cfg.seed, {7, std::uint64_t(k), vl, 0}),
                                       cfg.exec, cfg.jobs);
      const auto sb = run_replicas<StickSample>(
          reps, sub_seed(cfg.seed, {7, std::uint64_t(k), vl, 1}), cfg.exec, cfg.jobs, NoWorkspace{},
          [&](int, RngStream& rng, std::size_t) { return sb_sample(beta, gamma, i_max, rng); });
      const auto flatten = [&](const std::vector<double>& y, const std::vector<double>& z) {
        std::vector<double> row(y.begin() + 1, y.end());
        row.insert(row.end(), z.begin() + 1, z.end());
        return row;
      };
      std::vector<std::vector<double>> a, b;
      for (const auto& s : ab) a.push_back(flatten(s.y, s.z));
      for (const auto& s : sb) b.push_back(flatten(s.y, s.z));
      TestReport r = marginal_vector_compare(a, b, 0.05);
      r.name = tag("stick-marginals", {{"n", std::to_string(n)}, {"k", std::to_string(k)},
                                       {"variant", to_string(v)}, {"beta", num(beta)},
                                       {"gamma", num(gamma)}});
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<TestReport> exp_attachment_law(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.n.value_or(10000);
  const std::size_t reps = replicas_or(cfg, 10000);
  std::vector<TestReport> out;
  for (int k : pick(cfg.k, {2})) {
    for (StepRule v : pick(cfg.variant, {StepRule::maximal, StepRule::uniform})) {
      const auto sticks = ab_stick_samples(n, k, v, 2, reps,
                                           sub_seed(cfg.seed, {8, std::uint64_t(k), std::uint64_t(v)}),
                                           cfg.exec, cfg.jobs);
      std::vector<double> ratio;
      ratio.reserve(reps);
      for (const auto& s : sticks) ratio.push_back(s.z[1] / s.y[1]);
      const double power = v == StepRule::maximal ? k : 1.0;
      TestReport r = ks_one_sample(
          ratio, [power](double a) { return a <= 0.0 ? 0.0 : a >= 1.0 ? 1.0 : std::pow(a, power); },
          0.05);
      r.name = tag("attachment-law", {{"n", std::to_string(n)}, {"k", std::to_string(k)},
                                      {"variant", to_string(v)}});
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<TestReport> exp_scaling_exponent(const ExperimentConfig& cfg) {
  const std::size_t reps = replicas_or(cfg, 10000);
  const StepRule variant = cfg.variant.value_or(StepRule::maximal);
  const double t = cfg.t_max.value_or(2.0);
  std::vector<TestReport> out;
  for (int k : pick(cfg.k, {2})) {
    std::vector<std::pair<double, double>> pairs;
    TestReport r;
    for (double e : {3.0, 3.5, 4.0, 4.5, 5.0}) {
      const auto n = static_cast<std::size_t>(std::llround(std::pow(10.0, e)));
      const auto step =
          static_cast<std::int64_t>(std::floor(t * std::pow(static_cast<double>(n), scale_exponent(k))));
      const auto z = le_samples(n, k, variant, {step}, reps, sub_seed(cfg.seed, {9, n, std::uint64_t(k)}),
                                cfg.exec, cfg.jobs);
      double sum = 0.0;
      for (const auto& row : z) sum += row[0];
      const double mean = sum / static_cast<double>(reps);
      pairs.emplace_back(static_cast<double>(n), mean);
      r.add("mean_n" + std::to_string(n), mean);
    }
    const double slope = loglog_slope(pairs);
    r.name = tag("scaling-exponent", {{"k", std::to_string(k)}, {"variant", to_string(variant)},
                                      {"t", num(t)}});
    r.statistic = std::abs(slope - scale_exponent(k));
    r.threshold = 0.05;
    r.n_samples = static_cast<std::int64_t>(reps * pairs.size());
    r.pass = r.statistic <= r.threshold;
    r.add("slope", slope);
    r.add("target", scale_exponent(k));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TestReport> exp_first_stick(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.n.value_or(10000);
  const std::size_t reps = replicas_or(cfg, 10000);
  std::vector<TestReport> out;
  for (int k : pick(cfg.k, {2})) {
    const double beta = cfg.beta.value_or(k);
    const auto cdf_for = [](double b) {
      return [b](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(x, b + 1.0) / (b + 1.0)); };
    };
    for (StepRule v : pick(cfg.variant, {StepRule::maximal})) {
      const auto sticks = ab_stick_samples(n, k, v, 1, reps,
                                           sub_seed(cfg.seed, {10, std::uint64_t(k), std::uint64_t(v)}),
                                           cfg.exec, cfg.jobs);
      const double h = stick_scale(n, k);
      std::vector<double> len;
      len.reserve(reps);
      for (const auto& s : sticks) len.push_back(s.y[1] - h);  // the root is not on the branch
      TestReport r = ks_one_sample(len, cdf_for(k), 0.05);
      r.name = tag("first-stick ab", {{"n", std::to_string(n)}, {"k", std::to_string(k)},
                                      {"variant", to_string(v)}});
      out.push_back(std::move(r));
    }
    const std::size_t sb_reps = std::max<std::size_t>(reps, 100000);
    const auto y1 = run_replicas<double>(
        sb_reps, sub_seed(cfg.seed, {10, std::uint64_t(k), 99}), cfg.exec, cfg.jobs, NoWorkspace{},
        [&](int, RngStream& rng, std::size_t) { return halfline_arrivals(beta, 1, rng)[0]; });
    TestReport r = ks_one_sample(y1, cdf_for(beta), 0.02);
    r.name = tag("first-stick stick-breaking", {{"beta", num(beta)}});
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TestReport> exp_urn_martingale(const ExperimentConfig& cfg) {
  const std::size_t reps = replicas_or(cfg, 100000);
  const auto steps = static_cast<std::size_t>(cfg.horizon.value_or(50));
  const UrnState start{1.0, 2.0};
  const std::vector<double> deltas(steps, 1.0);
  const auto finals = run_replicas<double>(reps, sub_seed(cfg.seed, {11}), cfg.exec, cfg.jobs,
                                           NoWorkspace{}, [&](int, RngStream& rng, std::size_t) {
                                             UrnState s = start;
                                             return urn_run(s, deltas, rng).back();
                                           });
  const double m = static_cast<double>(reps);
  const double mean = std::accumulate(finals.begin(), finals.end(), 0.0) / m;
  double ss = 0.0;
  for (double x : finals) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (m - 1.0));
  TestReport r;
  r.name = tag("urn-martingale", {{"U0", "1"}, {"V0", "2"}, {"delta", "1"}, {"M", std::to_string(steps)}});
  r.statistic = std::abs(mean - start.ratio());
  r.threshold = 3.0 * sd / std::sqrt(m);
  r.n_samples = static_cast<std::int64_t>(reps);
  r.pass = r.statistic < r.threshold;
  r.add("mean", mean);
  r.add("R0", start.ratio());
  r.add("sd", sd);
  return {r};
}

std::vector<TestReport> exp_classical_k1(const ExperimentConfig& cfg) {
  const std::size_t reps = replicas_or(cfg, 100000);
  std::map<std::string, double> uniform3{{"0-1|0-2", 1.0 / 3}, {"0-1|1-2", 1.0 / 3}, {"0-2|1-2", 1.0 / 3}};
  std::vector<TestReport> out;
  for (auto algo : {TreeAlgorithm::ab, TreeAlgorithm::wilson}) {
    const auto hist = tree_histogram(algo, 3, 1, StepRule::maximal, reps,
                                     sub_seed(cfg.seed, {12, std::uint64_t(algo)}), cfg.exec, cfg.jobs);
    TestReport r = chi_square_goodness_of_fit(hist, uniform3, 0.01);
    r.name = tag("classical-k1 spanning-tree", {{"algo", to_string(algo)}, {"n", "3"}});
    out.push_back(std::move(r));
  }
  ExperimentConfig le = cfg;
  le.replicas.reset();
  le.n.reset();
  for (auto& r : le_vs_rayleigh(le, {1}, 13)) {
    r.name = "classical-k1 " + r.name;
    out.push_back(std::move(r));
  }
  return out;
}

using Runner = std::function<std::vector<TestReport>(const ExperimentConfig&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r{
      {"tree-equality", exp_tree_equality},
      {"branch-hazard-wilson", [](const auto& c) { return exp_branch_hazard(c, TreeAlgorithm::wilson); }},
      {"branch-hazard-ab", [](const auto& c) { return exp_branch_hazard(c, TreeAlgorithm::ab); }},
      {"rayleigh-tail", exp_rayleigh_tail},
      {"le-vs-rayleigh", [](const auto& c) { return le_vs_rayleigh(c, pick(c.k, {1, 2}), 6); }},
      {"coupling-bound", exp_coupling_bound},
      {"stick-marginals", exp_stick_marginals},
      {"attachment-law", exp_attachment_law},
      {"scaling-exponent", exp_scaling_exponent},
      {"first-stick", exp_first_stick},
      {"urn-martingale", exp_urn_martingale},
      {"classical-k1", exp_classical_k1},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  // acceptance order
  static const std::vector<std::string> names{
      "tree-equality",  "branch-hazard-wilson", "branch-hazard-ab", "rayleigh-tail",
      "le-vs-rayleigh", "coupling-bound",       "stick-marginals",  "attachment-law",
      "scaling-exponent", "first-stick",        "urn-martingale",   "classical-k1"};
  return names;
}

std::vector<TestReport> run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown experiment: " + name);
  return it->second(cfg);
}

Histogram tree_histogram(TreeAlgorithm algo, std::size_t n, int k, StepRule variant,
                         std::size_t count, std::uint64_t seed, Execution exec, int jobs) {
  const auto codes = run_replicas<std::string>(
      count, seed, exec, jobs, [n] { return ChoiceWalkState(n, AvoidMode::full_past); },
      [&](ChoiceWalkState& ws, RngStream& rng, std::size_t) {
        return canonical_tree_code(algo == TreeAlgorithm::ab ? sample_ab_tree(ws, k, variant, rng)
                                                             : sample_wilson_tree(n, k, variant, rng));
      });
  Histogram h;
  for (const auto& c : codes) ++h[c];
  return h;
}

std::vector<std::vector<std::int32_t>> le_samples(std::size_t n, int k, StepRule variant,
                                                  const std::vector<std::int64_t>& steps,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  Execution exec, int jobs) {
  if (steps.empty()) throw std::invalid_argument("le_samples: no steps requested");
  const std::int64_t horizon = std::max<std::int64_t>(1, *std::max_element(steps.begin(), steps.end()));
  struct Workspace {
    ChoiceWalkState state;
    std::vector<std::int32_t> trace;
  };
  const ChoiceRule rule{variant, k};
  return run_replicas<std::vector<std::int32_t>>(
      replicas, seed, exec, jobs,
      [n] { return Workspace{ChoiceWalkState(n, AvoidMode::loop_erasure), {}}; },
      [&](Workspace& ws, RngStream& rng, std::size_t) {
        le_length_trace(ws.state, rule, horizon, rng, ws.trace);
        std::vector<std::int32_t> row;
        row.reserve(steps.size());
        for (auto m : steps) row.push_back(ws.trace[static_cast<std::size_t>(m)]);
        return row;
      });
}

std::vector<StickVector> ab_stick_samples(std::size_t n, int k, StepRule variant,
                                          std::size_t i_max, std::size_t replicas,
                                          std::uint64_t seed, Execution exec, int jobs) {
  return run_replicas<StickVector>(
      replicas, seed, exec, jobs, [n] { return ChoiceWalkState(n, AvoidMode::full_past); },
      [&](ChoiceWalkState& ws, RngStream& rng, std::size_t) {
        return sample_ab_sticks(ws, k, variant, i_max, rng);
      });
}

TestReport hazard_check(const std::vector<HazardObservation>& obs, std::size_t n, int k,
                        bool wilson, std::int64_t min_obs, double sigmas) {
  struct Tally {
    std::int64_t total = 0;
    std::int64_t survived = 0;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, Tally> cells;
  for (const auto& o : obs) {
    auto& c = cells[{o.size, o.step}];
    ++c.total;
    c.survived += o.survived ? 1 : 0;
  }
  TestReport r;
  r.threshold = sigmas;
  r.n_samples = static_cast<std::int64_t>(obs.size());
  std::int64_t tested = 0, failing = 0;
  double worst_size = -1, worst_step = -1;
  for (const auto& [key, c] : cells) {
    if (c.total < min_obs) continue;
    ++tested;
    const auto [size, step] = key;
    const double frac = static_cast<double>(size + (wilson ? step + 1 : step - 1)) / static_cast<double>(n);
    const double p = 1.0 - std::pow(frac, k);
    const double freq = static_cast<double>(c.survived) / static_cast<double>(c.total);
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(c.total));
    double z;
    if (sd > 0.0) {
      z = std::abs(freq - p) / sd;
    } else {
      z = std::abs(freq - p) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (z > sigmas) ++failing;
    if (z >= r.statistic) {
      r.statistic = z;
      worst_size = static_cast<double>(size);
      worst_step = static_cast<double>(step);
    }
  }
  r.pass = tested > 0 && failing == 0;
  r.add("cells_tested", static_cast<double>(tested));
  r.add("cells_outside", static_cast<double>(failing));
  r.add("worst_size", worst_size);
  r.add("worst_step", worst_step);
  return r;
}

}  // namespace ctree
