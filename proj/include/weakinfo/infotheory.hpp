#pragma once

// Information functionals and the conservation ledgers they assemble.
//
// Every identity is of the form  lhs = sum of signed terms  and is exact in
// real arithmetic; a ledger stores the left-hand side, the named terms, and
// the residual lhs - sum(terms). Residuals are the tested quantity: the
// 1e-9 bit budget covers log-sum-exp rounding across <= 64 levels and
// tau <= 30, and is tight enough to catch sign or term errors.
//
// Null result, per level:   I(y_0) = dI(x_n|y_0) + n I(decay)
// Null result, averaged:    I(y_0) = D(post||prior) + <n> I(decay)
// k clicks, per level:      I(y_k) = dI(x_n|y_k) + (n-k) I(decay)
//                                    + k I(no decay) - log2 C(n,k)
// k clicks, averaged:       I(y_k) = D + (<n>-k) I(decay)
//                                    + k I(no decay) - <I(W)>
//
// with I(decay) = tau/ln 2 and I(no decay) = -log2(1 - e^{-tau}).

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weakinfo/detection.hpp"
#include "weakinfo/errors.hpp"
#include "weakinfo/state.hpp"

namespace weakinfo {

inline constexpr double kLedgerTol = 1e-9;  // bits

// Fixed term names; these are the CSV/JSON field names and must not drift.
namespace term {
inline constexpr const char* delta_i = "delta_I";
inline constexpr const char* decay = "decay_term";
inline constexpr const char* no_decay = "no_decay_term";
inline constexpr const char* multiplicity = "multiplicity_term";
inline constexpr const char* relative_entropy = "relative_entropy";
inline constexpr const char* reversal = "reversal_term";
}  // namespace term

inline constexpr const char* kLhsName = "I_outcome";

// Information content in bits; +inf only for zero-probability arguments.
struct InfoValue {
  double bits = 0.0;
  bool finite() const noexcept { return std::isfinite(bits); }
};

// I(a) = -log2 p(a).
inline InfoValue info_content(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    raise(Errc::out_of_range, "probability outside [0, 1]");
  if (p == 0.0) return {std::numeric_limits<double>::infinity()};
  double bits = -std::log2(p);
  return {bits == 0.0 ? 0.0 : bits};
}

// Same, from a natural-log probability (the evidence path).
inline InfoValue info_from_log(double log_p) {
  if (log_p == kNegInf) return {std::numeric_limits<double>::infinity()};
  double bits = -log_p / std::numbers::ln2;
  return {bits == 0.0 ? 0.0 : bits};
}

struct LedgerTerm {
  std::string name;
  double bits;
};

// One conservation identity instance. Term names and order are fixed per
// identity; `level`/`clicks` record which (n, k) the instance refers to.
struct InfoLedger {
  std::string identity;
  InfoValue lhs;
  std::vector<LedgerTerm> terms;
  std::optional<int> level;
  std::optional<int> clicks;

  // lhs - sum(terms); not applicable when any entry is non-finite.
  std::optional<double> residual() const {
    if (!lhs.finite()) return std::nullopt;
    double sum = 0.0;
    for (const auto& t : terms) {
      if (!std::isfinite(t.bits)) return std::nullopt;
      sum += t.bits;
    }
    return lhs.bits - sum;
  }
};

// One figure sample point.
struct LedgerRow {
  double tau;
  InfoLedger ledger;
};

// Signed pointwise gain dI(x_n|y) = log2(post_n / prior_n); negative values
// are evidence against level n. -inf if the posterior kills a supported level.
inline double pointwise_gain(const PriorState& prior, const Distribution& post,
                             int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= prior.dim())
    raise(Errc::unsupported_level, "level " + std::to_string(n) + " out of range");
  if (prior[n] <= 0.0)
    raise(Errc::unsupported_level,
          "level " + std::to_string(n) + " has zero prior mass");
  if (post[n] == 0.0) return kNegInf;
  double g = std::log2(post[n] / prior[n]);
  return g == 0.0 ? 0.0 : g;
}

// D(post || prior) in bits, with the 0 log 0 = 0 convention.
inline double relative_entropy(const Distribution& post,
                               const PriorState& prior) {
  if (post.dim() != prior.dim())
    raise(Errc::out_of_range, "dimension mismatch");
  double d = 0.0;
  for (std::size_t n = 0; n < post.dim(); ++n) {
    if (post[n] == 0.0) continue;
    if (prior[n] <= 0.0)
      raise(Errc::support_violation,
            "posterior mass on level " + std::to_string(n) +
                " outside prior support");
    d += post[n] * std::log2(post[n] / prior[n]);
  }
  // D >= 0 exactly; rounding can leave a ~1e-16 negative when post ~ prior.
  if (d < 0.0 && d > -1e-12) d = 0.0;
  return d;
}

// <n> = sum_n n p(x_n|y).
inline double mean_excitation(const Distribution& post) {
  double m = 0.0;
  for (std::size_t n = 0; n < post.dim(); ++n) m += double(n) * post[n];
  return m;
}

// <I(W)> = sum_n log2 C(n,k) p(x_n|y_k), the indistinguishability cost.
inline double mean_multiplicity_info(const Distribution& post, int k) {
  if (k < 0) raise(Errc::out_of_range, "click count < 0");
  double m = 0.0;
  for (std::size_t n = 0; n < post.dim(); ++n) {
    if (post[n] == 0.0) continue;
    if (static_cast<int>(n) < k)
      raise(Errc::support_violation,
            "posterior mass on level " + std::to_string(n) + " below k = " +
                std::to_string(k));
    m += post[n] * (log_binom(static_cast<int>(n), k) / std::numbers::ln2);
  }
  return m;
}

namespace detail {

inline void require_supported(const PriorState& prior, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= prior.dim())
    raise(Errc::unsupported_level, "level " + std::to_string(n) + " out of range");
  if (prior[n] <= 0.0)
    raise(Errc::unsupported_level,
          "level " + std::to_string(n) + " has zero prior mass");
}

}  // namespace detail

// Per-level null-result ledger: I(y_0) = dI(x_n|y_0) + n I(decay).
// The lhs comes from one evidence computation, so it is bitwise identical
// across n for fixed prior and tau.
inline InfoLedger null_ledger(const PriorState& prior,
                              const DetectionContext& ctx, int n) {
  detail::require_supported(prior, n);
  double lz = log_outcome_prob(prior, 0, ctx);
  Distribution post = posterior(prior, 0, ctx);
  InfoLedger ledger;
  ledger.identity = "null";
  ledger.level = n;
  ledger.clicks = 0;
  ledger.lhs = info_from_log(lz);
  ledger.terms = {{term::delta_i, pointwise_gain(prior, post, n)},
                  {term::decay, n * ctx.tau() / std::numbers::ln2}};
  return ledger;
}

// Averaged null-result ledger: I(y_0) = D(post||prior) + <n> I(decay).
inline InfoLedger null_ledger_avg(const PriorState& prior,
                                  const DetectionContext& ctx) {
  double lz = log_outcome_prob(prior, 0, ctx);
  Distribution post = posterior(prior, 0, ctx);
  InfoLedger ledger;
  ledger.identity = "null_avg";
  ledger.clicks = 0;
  ledger.lhs = info_from_log(lz);
  ledger.terms = {
      {term::relative_entropy, relative_entropy(post, prior)},
      {term::decay, mean_excitation(post) * ctx.tau() / std::numbers::ln2}};
  return ledger;
}

// Per-level k-click ledger:
// I(y_k) = dI(x_n|y_k) + (n-k) I(decay) + k I(no decay) - log2 C(n,k).
inline InfoLedger kclick_ledger(const PriorState& prior,
                                const DetectionContext& ctx, int k, int n) {
  if (k < 0) raise(Errc::out_of_range, "click count < 0");
  detail::require_supported(prior, n);
  if (n < k)
    raise(Errc::level_below_clicks,
          "level " + std::to_string(n) + " cannot emit " + std::to_string(k) +
              " photons");
  double lz = log_outcome_prob(prior, k, ctx);
  if (lz == kNegInf)
    raise(Errc::impossible_outcome,
          "p(y_" + std::to_string(k) + ") = 0 for this prior and tau");
  Distribution post = posterior(prior, k, ctx);
  double log2_binom = log_binom(n, k) / std::numbers::ln2;
  InfoLedger ledger;
  ledger.identity = "kclick";
  ledger.level = n;
  ledger.clicks = k;
  ledger.lhs = info_from_log(lz);
  ledger.terms = {
      {term::delta_i, pointwise_gain(prior, post, n)},
      {term::decay, (n - k) * ctx.tau() / std::numbers::ln2},
      {term::no_decay, k == 0 ? 0.0 : k * (-ctx.log_escape() / std::numbers::ln2)},
      {term::multiplicity, log2_binom == 0.0 ? 0.0 : -log2_binom}};
  return ledger;
}

// Averaged k-click ledger:
// I(y_k) = D + (<n>-k) I(decay) + k I(no decay) - <I(W)>.
inline InfoLedger kclick_ledger_avg(const PriorState& prior,
                                    const DetectionContext& ctx, int k) {
  if (k < 0) raise(Errc::out_of_range, "click count < 0");
  double lz = log_outcome_prob(prior, k, ctx);
  if (lz == kNegInf)
    raise(Errc::impossible_outcome,
          "p(y_" + std::to_string(k) + ") = 0 for this prior and tau");
  Distribution post = posterior(prior, k, ctx);
  double miw = mean_multiplicity_info(post, k);
  InfoLedger ledger;
  ledger.identity = "kclick_avg";
  ledger.clicks = k;
  ledger.lhs = info_from_log(lz);
  ledger.terms = {
      {term::relative_entropy, relative_entropy(post, prior)},
      {term::decay,
       (mean_excitation(post) - k) * ctx.tau() / std::numbers::ln2},
      {term::no_decay, k == 0 ? 0.0 : k * (-ctx.log_escape() / std::numbers::ln2)},
      {term::multiplicity, miw == 0.0 ? 0.0 : -miw}};
  return ledger;
}

// Instantaneous null-result information rate at t = 0 for a qubit:
// d/dt dI(x_0|y_0)|_{t=0} = 2 gamma |c_1|^2 / ln 2  bits/s.
inline double small_time_rate(const PriorState& prior_qubit, double gamma) {
  if (prior_qubit.dim() != 2)
    raise(Errc::not_a_qubit,
          "small-time rate is defined for 2-level priors, got dim " +
              std::to_string(prior_qubit.dim()));
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    raise(Errc::out_of_range, "gamma must be finite and > 0");
  return 2.0 * gamma * prior_qubit[1] / std::numbers::ln2;
}

}  // namespace weakinfo
