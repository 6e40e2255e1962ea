// Runs every acceptance criterion with its preset parameters and a fixed seed.
// Usage: acceptance [seed [criterion ids...]]
// One PASS/FAIL line per criterion; a criterion passes when all of its reports
// pass and it finishes inside its time budget.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "choicetree/experiments.hpp"

namespace {

struct Criterion {
  int id;
  const char* experiment;
  double budget_seconds;
};

const std::vector<Criterion> kCriteria{
    {1, "tree-equality", 120},     {2, "branch-hazard-wilson", 60}, {3, "branch-hazard-ab", 60},
    {4, "rayleigh-tail", 60},      {5, "le-vs-rayleigh", 300},      {6, "coupling-bound", 60},
    {7, "stick-marginals", 300},   {8, "attachment-law", 120},      {9, "scaling-exponent", 600},
    {10, "first-stick", 120},      {11, "urn-martingale", 30},      {12, "classical-k1", 120},
};

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  std::vector<Criterion> selected;
  for (int i = 2; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    for (const auto& c : kCriteria) {
      if (c.id == id) selected.push_back(c);
    }
  }
  if (selected.empty()) selected = kCriteria;
  int failures = 0;
  for (const auto& c : selected) {
    ctree::ExperimentConfig cfg;
    cfg.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    std::vector<ctree::TestReport> reports;
    std::string error;
    try {
      reports = ctree::run_experiment(c.experiment, cfg);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && !reports.empty() && secs <= c.budget_seconds;
    for (const auto& r : reports) ok = ok && r.pass;
    std::printf("criterion %2d %-22s %s  (%.1f s, budget %.0f s)\n", c.id, c.experiment,
                ok ? "PASS" : "FAIL", secs, c.budget_seconds);
    for (const auto& r : reports) {
      std::printf("    %s  %-60s stat=%.6g thr=%.6g N=%lld", r.pass ? "ok  " : "FAIL", r.name.c_str(),
                  r.statistic, r.threshold, static_cast<long long>(r.n_samples));
      for (const auto& [k, v] : r.details) std::printf(" %s=%.6g", k.c_str(), v);
      std::printf("\n");
    }
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(selected.size()) - failures,
              selected.size());
  return failures == 0 ? 0 : 1;
}
