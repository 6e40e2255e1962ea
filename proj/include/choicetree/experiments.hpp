#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "choicetree/kernels.hpp"
#include "choicetree/stats.hpp"
#include "choicetree/trees.hpp"
#include "choicetree/walk.hpp"

namespace ctree {

/// Overrides for an experiment preset; unset fields keep the preset value.
/// When k, n or variant is set, the experiment is restricted to that value.
struct ExperimentConfig {
  std::optional<std::size_t> n;
  std::optional<int> k;
  std::optional<std::int64_t> replicas;
  std::optional<std::int64_t> horizon;
  std::optional<StepRule> variant;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> t_max;
  std::uint64_t seed = 1;
  int jobs = 0;
  Execution exec = Execution::parallel;
};

const std::vector<std::string>& experiment_names();

/// Runs a named preset. Throws std::invalid_argument for an unknown name.
std::vector<TestReport> run_experiment(const std::string& name, const ExperimentConfig& cfg);

/// Labeled-tree histogram of `count` samples.
Histogram tree_histogram(TreeAlgorithm algo, std::size_t n, int k, StepRule variant,
                         std::size_t count, std::uint64_t seed, Execution exec, int jobs = 0);

/// Loop-erasure lengths Z_m at each of `steps`, one row per replica.
std::vector<std::vector<std::int32_t>> le_samples(std::size_t n, int k, StepRule variant,
                                                  const std::vector<std::int64_t>& steps,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  Execution exec, int jobs = 0);

/// AB stick vectors (Y_0..Y_imax, Z_0..Z_imax-1), one per replica.
std::vector<StickVector> ab_stick_samples(std::size_t n, int k, StepRule variant,
                                          std::size_t i_max, std::size_t replicas,
                                          std::uint64_t seed, Execution exec, int jobs = 0);

/// Per-cell comparison of extension frequencies against a hazard formula:
/// each (size, step) cell with at least `min_obs` observations must lie within
/// `sigmas` binomial standard deviations of `survival(size, step)`.
TestReport hazard_check(const std::vector<HazardObservation>& obs, std::size_t n, int k,
                        bool wilson, std::int64_t min_obs = 200, double sigmas = 3.0);

}  // namespace ctree
