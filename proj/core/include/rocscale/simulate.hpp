#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "rocscale/roc.hpp"

namespace rocscale::sim {

/// Deterministic counter-based random stream. Each (seed, stream) pair
/// yields an independent sequence, so per-trial streams make parallel and
/// serial runs bit-identical.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double next_unit();
  /// Unbiased uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

struct SimulationConfig {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
  std::uint64_t max_draws = 1000000;  // rejection-sampling cap per trial
  std::uint32_t bootstrap_resamples = 1000;
  double ci_level = 0.95;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct BootstrapSummary {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint32_t n_resamples = 0;
  double level = 0.95;
};

struct SimResult {
  BootstrapSummary accuracy;
  std::optional<BootstrapSummary> mean_draws;  // rejection only
  std::uint64_t trials_used = 0;
  std::uint64_t truncated_trials = 0;  // trials that hit max_draws
};

/// Percentile bootstrap of the mean: resamples the values with replacement
/// `n_resamples` times and takes the level-central percentile interval of
/// the resample means. Deterministic given the seed.
BootstrapSummary bootstrap(std::span<const double> values,
                           std::uint32_t n_resamples, double level,
                           std::uint64_t seed);

/// Monte-Carlo rejection sampling: per trial, draw uniformly with
/// replacement until a score clears the threshold (or max_draws is hit, in
/// which case the last drawn sample counts and the trial is flagged).
/// Requires at least one pool sample at or above the threshold.
SimResult simulate_rejection(const ScorePool& pool, double threshold,
                             const SimulationConfig& cfg);

/// Monte-Carlo Best-of-N: per trial, draw N samples with replacement and
/// keep the highest-scoring one, breaking score ties uniformly at random.
SimResult simulate_bon(const ScorePool& pool, int n,
                       const SimulationConfig& cfg);

/// Exact Best-of-N accuracy by enumerating all |pool|^N ordered draws with
/// uniform probability over argmax ties. Rejects enumerations beyond 10^6.
double brute_force_bon(const ScorePool& pool, int n);

struct RejectionCounts {
  double accuracy = 0.0;
  double expected_draws = 0.0;
};

/// Exact rejection-sampling accuracy and expected draw count by counting
/// the acceptance set.
RejectionCounts brute_force_rejection(const ScorePool& pool, double threshold);

}  // namespace rocscale::sim
