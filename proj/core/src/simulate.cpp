#include "rocscale/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

namespace rocscale::sim {

namespace {

std::uint64_t scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
  if (trials < 2048) return 1;
  unsigned n = requested ? requested : std::thread::hardware_concurrency();
  return std::clamp(n, 1u, 64u);
}

/// Runs fn(trial) for every trial index on `threads` workers. Each trial
/// writes only to its own slots, so the result is independent of the split.
template <typename Fn>
void for_each_trial(std::uint64_t trials, unsigned threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 1024;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= trials) return;
        std::uint64_t end = std::min(begin + kChunk, trials);
        for (std::uint64_t t = begin; t < end; ++t) fn(t);
      }
    });
  }
  for (auto& th : pool) th.join();
}

void check_config(const SimulationConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  if (cfg.max_draws < 1) throw DomainError("max_draws must be >= 1");
  if (cfg.bootstrap_resamples < 1)
    throw DomainError("bootstrap resamples must be >= 1");
  if (!(cfg.ci_level > 0.0 && cfg.ci_level < 1.0))
    throw DomainError("CI level must lie in (0,1)");
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) {
  return RngStream(seed, (1ULL << 63) | tag).next_u64();
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.size() == 1) return sorted.front();
  double h = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : state_(scramble(seed + 0x9E3779B97F4A7C15ULL) ^
             scramble(stream + 0x94D049BB133111EBULL)) {}

std::uint64_t RngStream::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return scramble(state_);
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  // Lemire's multiply-shift with rejection; exactly uniform.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

BootstrapSummary bootstrap(std::span<const double> values,
                           std::uint32_t n_resamples, double level,
                           std::uint64_t seed) {
  if (values.empty()) throw EmptyInputError("bootstrap over empty values");
  if (n_resamples < 1) throw DomainError("bootstrap needs >= 1 resample");
  if (!(level > 0.0 && level < 1.0))
    throw DomainError("CI level must lie in (0,1)");

  const std::size_t n = values.size();
  double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                static_cast<double>(n);

  RngStream rng(seed, 0);
  std::vector<double> means(n_resamples);
  for (std::uint32_t b = 0; b < n_resamples; ++b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += values[rng.next_below(n)];
    means[b] = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  double alpha = 1.0 - level;
  return BootstrapSummary{mean, sorted_quantile(means, alpha / 2.0),
                          sorted_quantile(means, 1.0 - alpha / 2.0),
                          n_resamples, level};
}

SimResult simulate_rejection(const ScorePool& pool, double threshold,
                             const SimulationConfig& cfg) {
  check_config(cfg);
  if (!std::isfinite(threshold)) throw DomainError("threshold must be finite");
  const auto& samples = pool.samples();
  bool any = std::any_of(samples.begin(), samples.end(),
                         [&](const LabeledSample& s) {
                           return s.score >= threshold;
                         });
  if (!any)
    throw NoAcceptingSampleError("no pool sample at or above the threshold");

  const std::uint64_t n = samples.size();
  std::vector<double> correct(cfg.trials);
  std::vector<double> draws(cfg.trials);
  std::vector<std::uint8_t> truncated(cfg.trials, 0);

  for_each_trial(cfg.trials, resolve_threads(cfg.threads, cfg.trials),
                 [&](std::uint64_t t) {
                   RngStream rng(cfg.seed, t);
                   std::uint64_t count = 0;
                   std::uint64_t idx = 0;
                   for (;;) {
                     idx = rng.next_below(n);
                     ++count;
                     if (samples[idx].score >= threshold) break;
                     if (count >= cfg.max_draws) {
                       truncated[t] = 1;
                       break;
                     }
                   }
                   correct[t] = samples[idx].label;
                   draws[t] = static_cast<double>(count);
                 });

  SimResult res;
  res.accuracy = bootstrap(correct, cfg.bootstrap_resamples, cfg.ci_level,
                           sub_seed(cfg.seed, 1));
  res.mean_draws = bootstrap(draws, cfg.bootstrap_resamples, cfg.ci_level,
                             sub_seed(cfg.seed, 2));
  res.trials_used = cfg.trials;
  res.truncated_trials =
      std::accumulate(truncated.begin(), truncated.end(), std::uint64_t{0});
  return res;
}

SimResult simulate_bon(const ScorePool& pool, int n_best,
                       const SimulationConfig& cfg) {
  check_config(cfg);
  if (n_best < 1) throw DomainError("N must be >= 1");
  const auto& samples = pool.samples();
  const std::uint64_t n = samples.size();
  std::vector<double> correct(cfg.trials);

  for_each_trial(cfg.trials, resolve_threads(cfg.threads, cfg.trials),
                 [&](std::uint64_t t) {
                   RngStream rng(cfg.seed, t);
                   double best = -1.0;
                   int label = 0;
                   std::uint64_t ties = 0;
                   for (int j = 0; j < n_best; ++j) {
                     std::uint64_t idx = rng.next_below(n);
                     double s = samples[idx].score;
                     if (s > best) {
                       best = s;
                       label = samples[idx].label;
                       ties = 1;
                     } else if (s == best) {
                       // Reservoir pick keeps the choice uniform over ties.
                       ++ties;
                       if (rng.next_below(ties) == 0) label = samples[idx].label;
                     }
                   }
                   correct[t] = label;
                 });

  SimResult res;
  res.accuracy = bootstrap(correct, cfg.bootstrap_resamples, cfg.ci_level,
                           sub_seed(cfg.seed, 1));
  res.trials_used = cfg.trials;
  return res;
}

double brute_force_bon(const ScorePool& pool, int n_best) {
  if (n_best < 1) throw DomainError("N must be >= 1");
  const auto& samples = pool.samples();
  const std::size_t n = samples.size();

  constexpr std::uint64_t kCap = 1000000;
  std::uint64_t total = 1;
  for (int j = 0; j < n_best; ++j) {
    total *= n;
    if (total > kCap) throw TooLargeError("enumeration exceeds 10^6 tuples");
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(n_best), 0);
  double sum = 0.0;
  for (std::uint64_t tuple = 0; tuple < total; ++tuple) {
    double best = -1.0;
    int ties = 0, correct_ties = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const auto& s = samples[idx[j]];
      if (s.score > best) {
        best = s.score;
        ties = 1;
        correct_ties = s.label;
      } else if (s.score == best) {
        ++ties;
        correct_ties += s.label;
      }
    }
    sum += static_cast<double>(correct_ties) / static_cast<double>(ties);
    for (std::size_t j = 0; j < idx.size(); ++j) {  // odometer
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
  }
  return sum / static_cast<double>(total);
}

RejectionCounts brute_force_rejection(const ScorePool& pool,
                                      double threshold) {
  std::size_t accepted = 0, accepted_pos = 0;
  for (const auto& s : pool.samples()) {
    if (s.score >= threshold) {
      ++accepted;
      accepted_pos += static_cast<std::size_t>(s.label);
    }
  }
  if (accepted == 0)
    throw NoAcceptingSampleError("no pool sample at or above the threshold");
  return RejectionCounts{
      static_cast<double>(accepted_pos) / static_cast<double>(accepted),
      static_cast<double>(pool.size()) / static_cast<double>(accepted)};
}

}  // namespace rocscale::sim
