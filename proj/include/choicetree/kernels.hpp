#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#include "choicetree/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ctree {

enum class Execution { serial, parallel };

/// Runs `fn(workspace, rng, r)` for replicas r = 0..count-1, replica r drawing
/// from RngStream(seed, r). Each worker builds its own workspace with
/// `make_workspace()`. Results land in slot r, so the output does not depend
/// on the execution mode or thread count. `jobs` <= 0 leaves the thread count
/// to the OpenMP runtime.
template <class Result, class MakeWorkspace, class Fn>
std::vector<Result> run_replicas(std::size_t count, std::uint64_t seed, Execution exec, int jobs,
                                 MakeWorkspace make_workspace, Fn fn) {
  std::vector<Result> results(count);
  if (exec == Execution::serial) {
    auto ws = make_workspace();
    for (std::size_t r = 0; r < count; ++r) {
      RngStream rng(seed, r);
      results[r] = fn(ws, rng, r);
    }
    return results;
  }
#ifdef _OPENMP
  std::exception_ptr failure;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel num_threads(threads)
  {
    std::exception_ptr local;
    std::optional<decltype(make_workspace())> ws;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t r = 0; r < n; ++r) {
      if (local) continue;
      try {
        if (!ws) ws.emplace(make_workspace());
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        results[static_cast<std::size_t>(r)] = fn(*ws, rng, static_cast<std::size_t>(r));
      } catch (...) {
        local = std::current_exception();
      }
    }
    if (local) {
#pragma omp critical(ctree_replica_failure)
      if (!failure) failure = local;
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
#else
  (void)jobs;
  return run_replicas<Result>(count, seed, Execution::serial, 1, make_workspace, fn);
#endif
}

/// Workspace factory for kernels that need none.
struct NoWorkspace {
  int operator()() const { return 0; }
};

}  // namespace ctree
