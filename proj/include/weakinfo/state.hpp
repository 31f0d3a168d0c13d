#pragma once

// Multilevel Fock-state priors. A state |psi> = sum_n c_n |n> over levels
// n = 0..N enters every downstream quantity only through the weights
// p(x_n) = |c_n|^2, so amplitude vectors store magnitudes and complex input
// is rejected at the boundary. A vector of length L spans levels 0..L-1,
// i.e. N = L - 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "weakinfo/errors.hpp"

namespace weakinfo {

// Absolute tolerance on probability normalization.
inline constexpr double kNormTol = 1e-12;

// Normalized probability weights p(x_n) over levels 0..N, N >= 1.
class PriorState {
 public:
  explicit PriorState(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2)
      raise(Errc::empty_or_single_level,
            "prior needs at least 2 levels, got " + std::to_string(probs_.size()));
    double sum = 0.0;
    for (double p : probs_) {
      if (!std::isfinite(p))
        raise(Errc::out_of_range, "non-finite prior entry");
      if (p < 0.0) raise(Errc::negative_weight, "prior entry < 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTol)
      raise(Errc::not_normalized,
            "prior entries sum to " + std::to_string(sum) + ", expected 1");
  }

  const std::vector<double>& probs() const noexcept { return probs_; }
  double operator[](std::size_t n) const { return probs_[n]; }

  // Number of levels, N + 1.
  std::size_t dim() const noexcept { return probs_.size(); }
  // Highest level index N.
  int top_level() const noexcept { return static_cast<int>(probs_.size()) - 1; }

 private:
  std::vector<double> probs_;
};

// Magnitudes |c_n| of a pure state; squared magnitudes sum to 1.
class AmplitudeVector {
 public:
  explicit AmplitudeVector(std::vector<double> mags) : mags_(std::move(mags)) {
    if (mags_.size() < 2)
      raise(Errc::empty_or_single_level,
            "amplitude vector needs at least 2 levels");
    double norm2 = 0.0;
    for (double m : mags_) {
      if (!std::isfinite(m))
        raise(Errc::out_of_range, "non-finite amplitude magnitude");
      if (m < 0.0) raise(Errc::negative_weight, "amplitude magnitude < 0");
      norm2 += m * m;
    }
    if (std::abs(norm2 - 1.0) > kNormTol)
      raise(Errc::not_normalized,
            "squared magnitudes sum to " + std::to_string(norm2));
  }

  const std::vector<double>& mags() const noexcept { return mags_; }
  double operator[](std::size_t n) const { return mags_[n]; }
  std::size_t dim() const noexcept { return mags_.size(); }
  int top_level() const noexcept { return static_cast<int>(mags_.size()) - 1; }

 private:
  std::vector<double> mags_;
};

// Builds a PriorState from nonnegative weights, normalizing by their sum.
inline PriorState make_prior(const std::vector<double>& weights) {
  if (weights.size() < 2)
    raise(Errc::empty_or_single_level,
          "need at least 2 weights, got " + std::to_string(weights.size()));
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) raise(Errc::out_of_range, "non-finite weight");
    if (w < 0.0) raise(Errc::negative_weight, "weight < 0");
    sum += w;
  }
  if (sum <= 0.0) raise(Errc::all_zero, "weights sum to zero");
  std::vector<double> probs(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) probs[i] = weights[i] / sum;
  // Guard against residual rounding in the division.
  double psum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(psum - 1.0) > kNormTol)
    for (double& p : probs) p /= psum;
  return PriorState(std::move(probs));
}

// p(x_n) = |c_n|^2.
inline PriorState prior_from_amplitudes(const AmplitudeVector& a) {
  std::vector<double> probs(a.dim());
  for (std::size_t n = 0; n < a.dim(); ++n) probs[n] = a[n] * a[n];
  return PriorState(std::move(probs));
}

// Levels with strictly positive prior mass, ascending.
inline std::vector<int> support(const PriorState& prior) {
  std::vector<int> levels;
  for (std::size_t n = 0; n < prior.dim(); ++n)
    if (prior[n] > 0.0) levels.push_back(static_cast<int>(n));
  return levels;
}

}  // namespace weakinfo
