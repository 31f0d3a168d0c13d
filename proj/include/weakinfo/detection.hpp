#pragma once

// Photon-detection measurement family M_k on a decaying multilevel system.
// The k-click likelihood is the binomial law
//
//   p(y_k | x_n) = C(n,k) (1 - e^{-tau})^k e^{-tau (n-k)},   tau = 2*gamma*t,
//
// i.e. each of n excitations independently escapes with probability
// 1 - e^{-tau}. Everything is evaluated in log domain (evidence via
// log-sum-exp) so long-time tails stay finite; direct-domain values are
// exposed by exponentiation.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "weakinfo/errors.hpp"
#include "weakinfo/state.hpp"

namespace weakinfo {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 - e^{-tau}) for tau >= 0, stable at both ends; -inf at tau = 0.
inline double log1mexp(double tau) {
  if (tau == 0.0) return kNegInf;
  // Crossover at ln 2 keeps the argument of each log away from 0 and 1.
  if (tau <= std::numbers::ln2) return std::log(-std::expm1(-tau));
  return std::log1p(-std::exp(-tau));
}

// log C(n, k) via log-gamma; exact for the small n used at desk scale.
inline double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Decay rate, elapsed time, and the rescaled time tau = 2*gamma*t that both
// figures use as their x-axis. Rates in bits/s need gamma explicitly; pure
// tau input fixes gamma = 1 by convention.
class DetectionContext {
 public:
  static DetectionContext from_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
      raise(Errc::out_of_range, "tau must be finite and >= 0");
    return DetectionContext(1.0, tau / 2.0, tau);
  }

  static DetectionContext from_rate_time(double gamma, double t) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
      raise(Errc::out_of_range, "gamma must be finite and > 0");
    if (!(t >= 0.0) || !std::isfinite(t))
      raise(Errc::out_of_range, "t must be finite and >= 0");
    return DetectionContext(gamma, t, 2.0 * gamma * t);
  }

  double gamma() const noexcept { return gamma_; }
  double time() const noexcept { return t_; }
  double tau() const noexcept { return tau_; }

  // Paper naming: p(decay) = e^{-tau} is the per-excitation probability of
  // *no* emission in [0, t].
  double survival_prob() const noexcept { return std::exp(-tau_); }
  double log_survival() const noexcept { return -tau_; }

  // p(no decay) = 1 - e^{-tau}, the per-excitation escape probability.
  double escape_prob() const noexcept { return -std::expm1(-tau_); }
  double log_escape() const noexcept { return log1mexp(tau_); }

 private:
  DetectionContext(double gamma, double t, double tau)
      : gamma_(gamma), t_(t), tau_(tau) {}

  double gamma_;
  double t_;
  double tau_;
};

// Validated probability vector over levels 0..N (posterior or prior).
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    double sum = 0.0;
    for (double p : probs_) {
      if (!std::isfinite(p))
        raise(Errc::out_of_range, "non-finite distribution entry");
      if (p < 0.0) raise(Errc::negative_weight, "distribution entry < 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTol)
      raise(Errc::not_normalized,
            "distribution sums to " + std::to_string(sum));
  }

  const std::vector<double>& probs() const noexcept { return probs_; }
  double operator[](std::size_t n) const { return probs_[n]; }
  std::size_t dim() const noexcept { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

namespace detail {

inline void check_level_click(int n, int k) {
  if (n < 0) raise(Errc::out_of_range, "level index < 0");
  if (k < 0) raise(Errc::out_of_range, "click count < 0");
}

inline double logsumexp(const std::vector<double>& xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

}  // namespace detail

// Survival probability e^{-tau} of the whole interval for one excitation.
inline double survival_prob(const DetectionContext& ctx) {
  return ctx.survival_prob();
}

// log p(y_k | x_n); -inf when k > n (the binomial coefficient vanishes).
inline double log_outcome_likelihood(int n, int k, const DetectionContext& ctx) {
  detail::check_level_click(n, k);
  if (k > n) return kNegInf;
  if (k == 0) return -ctx.tau() * n;  // covers tau = 0 without 0 * inf
  return log_binom(n, k) + k * ctx.log_escape() - ctx.tau() * (n - k);
}

// p(y_k | x_n); exactly 0 when k > n.
inline double outcome_likelihood(int n, int k, const DetectionContext& ctx) {
  double ll = log_outcome_likelihood(n, k, ctx);
  return ll == kNegInf ? 0.0 : std::exp(ll);
}

// log p(y_k) = log sum_n p(x_n) p(y_k | x_n), over the prior support.
inline double log_outcome_prob(const PriorState& prior, int k,
                               const DetectionContext& ctx) {
  if (k < 0) raise(Errc::out_of_range, "click count < 0");
  std::vector<double> terms;
  terms.reserve(prior.dim());
  for (std::size_t n = 0; n < prior.dim(); ++n) {
    if (prior[n] <= 0.0) continue;
    double ll = log_outcome_likelihood(static_cast<int>(n), k, ctx);
    if (ll == kNegInf) continue;
    terms.push_back(std::log(prior[n]) + ll);
  }
  return detail::logsumexp(terms);
}

// p(y_k); 0 is a meaningful return (impossible outcome), not an error.
inline double outcome_prob(const PriorState& prior, int k,
                           const DetectionContext& ctx) {
  double lz = log_outcome_prob(prior, k, ctx);
  return lz == kNegInf ? 0.0 : std::exp(lz);
}

// Bayes posterior p(x_n | y_k) = p(x_n) p(y_k | x_n) / p(y_k).
inline Distribution posterior(const PriorState& prior, int k,
                              const DetectionContext& ctx) {
  double lz = log_outcome_prob(prior, k, ctx);
  if (lz == kNegInf)
    raise(Errc::impossible_outcome,
          "p(y_" + std::to_string(k) + ") = 0 for this prior and tau");
  std::vector<double> post(prior.dim(), 0.0);
  double sum = 0.0;
  for (std::size_t n = 0; n < prior.dim(); ++n) {
    if (prior[n] <= 0.0) continue;
    double ll = log_outcome_likelihood(static_cast<int>(n), k, ctx);
    if (ll == kNegInf) continue;
    post[n] = std::exp(std::log(prior[n]) + ll - lz);
    sum += post[n];
  }
  for (double& p : post) p /= sum;
  return Distribution(std::move(post));
}

// State update |psi'> proportional to M_k |psi| in magnitude: each magnitude
// picks up sqrt(p(y_k | x_n)), then the vector is renormalized. For k = 0
// this is the null-result contraction e^{-gamma t n} / norm.
inline AmplitudeVector post_measurement_amplitudes(const AmplitudeVector& a,
                                                   int k,
                                                   const DetectionContext& ctx) {
  std::vector<double> mags(a.dim(), 0.0);
  double norm2 = 0.0;
  for (std::size_t n = 0; n < a.dim(); ++n) {
    if (a[n] <= 0.0) continue;
    double ll = log_outcome_likelihood(static_cast<int>(n), k, ctx);
    if (ll == kNegInf) continue;
    mags[n] = a[n] * std::exp(0.5 * ll);
    norm2 += mags[n] * mags[n];
  }
  if (norm2 <= 0.0)
    raise(Errc::impossible_outcome, "post-measurement state has zero norm");
  double inv = 1.0 / std::sqrt(norm2);
  for (double& m : mags) m *= inv;
  return AmplitudeVector(std::move(mags));
}

}  // namespace weakinfo
