#pragma once

// Monte Carlo cross-check of the closed-form detection probabilities.
//
// A level-n state is sampled as n independent excitations, each escaping
// with probability 1 - e^{-tau} during [0, t]; the click count is the number
// of escapes. This reproduces the k-click likelihood as trials -> infinity
// while sharing nothing with the analytic path except that escape
// probability, which is recomputed here from expm1.
//
// The generator is splitmix64 (Steele, Lea, Flood 2014; Vigna's
// fixed-increment variant), so estimates are reproducible from a 64-bit
// seed across implementations. Workers split off deterministic sub-streams
// via scramble(seed + (worker+1) * 0x9E3779B97F4A7C15); merging per-worker
// counts by summation keeps results reproducible for a fixed worker count.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "weakinfo/detection.hpp"  // DetectionContext only
#include "weakinfo/errors.hpp"
#include "weakinfo/state.hpp"

namespace weakinfo::oracle {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

  // Deterministic sub-stream for a worker index.
  SplitMix64 split(std::uint64_t worker) const {
    return SplitMix64(scramble(seed_ + (worker + 1) * 0x9E3779B97F4A7C15ULL));
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  static std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

inline constexpr long long kMinTrials = 10000;

struct OracleEstimate {
  double value = 0.0;      // probability estimate
  double std_error = 0.0;  // sqrt(value (1-value) / trials)
  long long trials = 0;
  std::uint64_t seed = 0;
};

// Empirical conditional distribution p(x_n | y_k) with per-entry standard
// errors and the number of conditioning samples.
struct PosteriorEstimate {
  std::vector<double> probs;
  std::vector<double> std_errors;
  long long matched = 0;  // samples with the conditioning outcome
  long long trials = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Escape probability 1 - e^{-tau}, recomputed here on purpose.
inline double escape_probability(const DetectionContext& ctx) {
  return -std::expm1(-ctx.tau());
}

inline int sample_clicks(int n, double escape_prob, SplitMix64& rng) {
  int clicks = 0;
  for (int i = 0; i < n; ++i)
    if (rng.next_double() < escape_prob) ++clicks;
  return clicks;
}

inline int sample_level(const PriorState& prior, SplitMix64& rng) {
  double u = rng.next_double();
  double acc = 0.0;
  for (std::size_t n = 0; n + 1 < prior.dim(); ++n) {
    acc += prior[n];
    if (u < acc) return static_cast<int>(n);
  }
  return prior.top_level();
}

inline void check_trials(long long trials) {
  if (trials < kMinTrials)
    raise(Errc::too_few_trials,
          "need at least " + std::to_string(kMinTrials) + " trials, got " +
              std::to_string(trials));
}

inline double frequency_std_error(double freq, long long count) {
  return std::sqrt(freq * (1.0 - freq) / double(count));
}

}  // namespace detail

// One draw of the click count for a level-n state.
inline int sample_click_count(int n, const DetectionContext& ctx,
                              SplitMix64& rng) {
  if (n < 0) raise(Errc::out_of_range, "level index < 0");
  return detail::sample_clicks(n, detail::escape_probability(ctx), rng);
}

// Empirical p(y_k | x_n). Calls with the same seed share one sample stream,
// so the estimates over k = 0..n partition the trials exactly.
inline OracleEstimate estimate_likelihood(int n, int k,
                                          const DetectionContext& ctx,
                                          long long trials,
                                          std::uint64_t seed) {
  if (n < 0 || k < 0) raise(Errc::out_of_range, "negative level or click count");
  detail::check_trials(trials);
  const double q = detail::escape_probability(ctx);
  SplitMix64 rng(seed);
  long long hits = 0;
  for (long long t = 0; t < trials; ++t)
    if (detail::sample_clicks(n, q, rng) == k) ++hits;
  double value = double(hits) / double(trials);
  return {value, detail::frequency_std_error(value, trials), trials, seed};
}

// Empirical p(y_k) by ancestral sampling: level from the prior, then clicks.
inline OracleEstimate estimate_outcome_prob(const PriorState& prior, int k,
                                            const DetectionContext& ctx,
                                            long long trials,
                                            std::uint64_t seed) {
  if (k < 0) raise(Errc::out_of_range, "click count < 0");
  detail::check_trials(trials);
  const double q = detail::escape_probability(ctx);
  SplitMix64 rng(seed);
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) {
    int level = detail::sample_level(prior, rng);
    if (detail::sample_clicks(level, q, rng) == k) ++hits;
  }
  double value = double(hits) / double(trials);
  return {value, detail::frequency_std_error(value, trials), trials, seed};
}

// Empirical p(x_n | y_k): conditional level frequencies among samples that
// produced exactly k clicks. Needs at least 100 conditioning samples.
inline PosteriorEstimate estimate_posterior(const PriorState& prior, int k,
                                            const DetectionContext& ctx,
                                            long long trials,
                                            std::uint64_t seed) {
  if (k < 0) raise(Errc::out_of_range, "click count < 0");
  detail::check_trials(trials);
  const double q = detail::escape_probability(ctx);
  SplitMix64 rng(seed);
  std::vector<long long> counts(prior.dim(), 0);
  long long matched = 0;
  for (long long t = 0; t < trials; ++t) {
    int level = detail::sample_level(prior, rng);
    if (detail::sample_clicks(level, q, rng) == k) {
      ++counts[static_cast<std::size_t>(level)];
      ++matched;
    }
  }
  if (matched < 100)
    raise(Errc::outcome_too_rare,
          "outcome k = " + std::to_string(k) + " observed only " +
              std::to_string(matched) + " times in " + std::to_string(trials) +
              " trials");
  PosteriorEstimate est;
  est.matched = matched;
  est.trials = trials;
  est.seed = seed;
  est.probs.resize(prior.dim());
  est.std_errors.resize(prior.dim());
  for (std::size_t n = 0; n < prior.dim(); ++n) {
    est.probs[n] = double(counts[n]) / double(matched);
    est.std_errors[n] = detail::frequency_std_error(est.probs[n], matched);
  }
  return est;
}

}  // namespace weakinfo::oracle
