#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ctree {

/// Deterministic random stream addressed by (seed, stream_id).
///
/// Replica r of an experiment uses stream_id r, so parallel fan-out never
/// shares a generator. Conversions to doubles and bounded integers are done
/// here rather than through <random> distributions, whose output is
/// implementation-defined.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  /// Exponential with rate 1.
  double exponential() { return -std::log(uniform_pos()); }

  /// Uniform integer on [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Mixes a label into a seed so that independent sub-experiments get unrelated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);

}  // namespace ctree
