#pragma once

// Probabilistic reversal after a null result. The success probability is
//
//   p(rev) = [p(decay)]^N / p(y_0) = e^{-N tau} / p(y_0),
//
// and I(rev) = -log2 p(rev) enters a family of exact identities that link it
// to the null-result gain ledger:
//
//   balance            I(y_0)    = N I(decay) - I(rev)
//   per level (n < N)  I(y_0)    = [N dI(x_n|y_0) + n I(rev)] / (N - n)
//   decay split        N I(decay) = I(rev) + dI(x_0|y_0)
//   gain split         dI(x_n|y_0) = (N-n)/N dI(x_0|y_0) - n/N I(rev)
//   level ratio (t>0)  n/N       = [dI(x_0|y_0) - dI(x_n|y_0)]
//                                   / [I(rev) + dI(x_0|y_0)]
//   from low levels    I(rev)    = (N-1) dI(x_0|y_0) - N dI(x_1|y_0)
//                      dI(x_n|y_0) = n dI(x_1|y_0) - (n-1) dI(x_0|y_0)
//   averaged           D         = (N-<n>)/N dI(x_0|y_0) - <n>/N I(rev)
//                      I(y_0)    = N/(N-<n>) D + <n>/(N-<n>) I(rev)
//
// Identities that reference levels outside the prior support are reported as
// not applicable instead of being evaluated with infinities. Only the
// reversal *probability* is modeled; the reversal operation itself never
// enters any quantity here.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "weakinfo/detection.hpp"
#include "weakinfo/errors.hpp"
#include "weakinfo/infotheory.hpp"
#include "weakinfo/state.hpp"

namespace weakinfo {

struct ReversalReport {
  double p_rev = 1.0;
  double i_rev_bits = 0.0;
  std::vector<InfoLedger> ledgers;
  std::vector<std::string> skipped;  // identity + reason, not applicable here
  double max_abs_residual = 0.0;     // over ledgers with applicable residuals
  bool top_level_unoccupied = false; // diagnostic: prior[N] = 0, p(rev) is
                                     // sensitive to trailing zero levels
};

namespace detail {

// log p(rev); clamps the ~1e-16 positive excess exp(-N tau) / p(y_0) can
// round to when the prior sits entirely on level N.
inline double log_reversal_prob(const PriorState& prior,
                                const DetectionContext& ctx) {
  double lz = log_outcome_prob(prior, 0, ctx);
  double lp = -double(prior.top_level()) * ctx.tau() - lz;
  if (lp > 0.0 && lp < 1e-12) lp = 0.0;
  return lp;
}

}  // namespace detail

// p(rev) = e^{-N tau} / p(y_0), in (0, 1].
inline double reversal_prob(const PriorState& prior,
                            const DetectionContext& ctx) {
  return std::exp(detail::log_reversal_prob(prior, ctx));
}

// Balance ledger: I(y_0) = N I(decay) - I(rev).
inline InfoLedger reversal_ledger(const PriorState& prior,
                                  const DetectionContext& ctx) {
  int top = prior.top_level();
  double i_rev = info_from_log(detail::log_reversal_prob(prior, ctx)).bits;
  InfoLedger ledger;
  ledger.identity = "reversal_balance";
  ledger.lhs = info_from_log(log_outcome_prob(prior, 0, ctx));
  ledger.terms = {{term::decay, top * ctx.tau() / std::numbers::ln2},
                  {term::reversal, i_rev == 0.0 ? 0.0 : -i_rev}};
  return ledger;
}

// Averaged ledger: I(y_0) = N/(N-<n>) D + <n>/(N-<n>) I(rev).
inline InfoLedger reversal_ledger_avg(const PriorState& prior,
                                      const DetectionContext& ctx) {
  double n_top = prior.top_level();
  Distribution post = posterior(prior, 0, ctx);
  double nbar = mean_excitation(post);
  // The denominator N - <n> also kills the identity when it merely rounds
  // to ~eps, so treat that the same as the exact degeneracy.
  if (n_top - nbar <= 1e-12)
    raise(Errc::degenerate_mean,
          "<n> = N: prior concentrated on the top level");
  double i_rev = info_from_log(detail::log_reversal_prob(prior, ctx)).bits;
  double d = relative_entropy(post, prior);
  InfoLedger ledger;
  ledger.identity = "reversal_avg";
  ledger.lhs = info_from_log(log_outcome_prob(prior, 0, ctx));
  ledger.terms = {
      {term::relative_entropy, n_top / (n_top - nbar) * d},
      {term::reversal, nbar / (n_top - nbar) * i_rev}};
  return ledger;
}

// The ratio identity degenerates to 0/0 at tau = 0 and is cancellation
// dominated just above it: numerator and denominator both scale like tau
// while their absolute rounding stays near machine epsilon, so the residual
// grows as 1/tau. Below this floor the check would measure noise, not the
// identity (observed residual at 1e-5 is ~1e-11, two decades inside budget).
inline constexpr double kRatioTauFloor = 1e-5;

// Ratio identity n/N = [dI(x_0|y_0) - dI(x_n|y_0)] / [I(rev) + dI(x_0|y_0)],
// restricted to tau > 0 where the denominator N I(decay) is positive.
inline InfoLedger level_ratio_ledger(const PriorState& prior,
                                     const DetectionContext& ctx, int n) {
  detail::require_supported(prior, n);
  if (prior[0] <= 0.0)
    raise(Errc::unsupported_level, "level 0 has zero prior mass");
  if (ctx.tau() < kRatioTauFloor)
    raise(Errc::degenerate_ratio,
          ctx.tau() == 0.0 ? "ratio identity undefined at tau = 0"
                           : "tau below the ratio identity's noise floor");
  Distribution post = posterior(prior, 0, ctx);
  double gain0 = pointwise_gain(prior, post, 0);
  double gain_n = pointwise_gain(prior, post, n);
  double i_rev = info_from_log(detail::log_reversal_prob(prior, ctx)).bits;
  InfoLedger ledger;
  ledger.identity = "level_ratio";
  ledger.level = n;
  ledger.lhs = {double(n) / double(prior.top_level())};
  ledger.terms = {{"level_ratio", (gain0 - gain_n) / (i_rev + gain0)}};
  return ledger;
}

// Evaluates every applicable identity instance and collects the ledgers.
inline ReversalReport reversal_identity_suite(const PriorState& prior,
                                              const DetectionContext& ctx) {
  const int top = prior.top_level();
  const double n_top = top;
  const std::vector<int> supported = support(prior);
  const bool has0 = prior[0] > 0.0;
  const bool has1 = prior.dim() > 1 && prior[1] > 0.0;

  ReversalReport report;
  report.top_level_unoccupied = prior[static_cast<std::size_t>(top)] <= 0.0;
  double log_prev = detail::log_reversal_prob(prior, ctx);
  report.p_rev = std::exp(log_prev);
  report.i_rev_bits = info_from_log(log_prev).bits;

  const InfoValue i_y0 = info_from_log(log_outcome_prob(prior, 0, ctx));
  const Distribution post = posterior(prior, 0, ctx);
  const double i_rev = report.i_rev_bits;
  const double i_decay = ctx.tau() / std::numbers::ln2;

  auto add = [&report](InfoLedger ledger) {
    report.ledgers.push_back(std::move(ledger));
  };

  add(reversal_ledger(prior, ctx));

  // I(y_0) = [N dI(x_n|y_0) + n I(rev)] / (N - n), n < N.
  bool any_below_top = false;
  for (int n : supported) {
    if (n >= top) continue;
    any_below_top = true;
    double gain_n = pointwise_gain(prior, post, n);
    InfoLedger ledger;
    ledger.identity = "reversal_per_level";
    ledger.level = n;
    ledger.lhs = i_y0;
    ledger.terms = {{term::delta_i, n_top * gain_n / (n_top - n)},
                    {term::reversal, n == 0 ? 0.0 : n * i_rev / (n_top - n)}};
    add(std::move(ledger));
  }
  if (!any_below_top)
    report.skipped.push_back("reversal_per_level: no supported level below N");

  if (has0) {
    double gain0 = pointwise_gain(prior, post, 0);

    {  // N I(decay) = I(rev) + dI(x_0|y_0)
      InfoLedger ledger;
      ledger.identity = "decay_reversal_split";
      ledger.lhs = {n_top * i_decay};
      ledger.terms = {{term::reversal, i_rev}, {term::delta_i, gain0}};
      add(std::move(ledger));
    }

    // dI(x_n|y_0) = (N-n)/N dI(x_0|y_0) - n/N I(rev)
    for (int n : supported) {
      double gain_n = pointwise_gain(prior, post, n);
      InfoLedger ledger;
      ledger.identity = "gain_split";
      ledger.level = n;
      ledger.lhs = {gain_n};
      ledger.terms = {
          {term::delta_i, (n_top - n) / n_top * gain0},
          {term::reversal, n == 0 ? 0.0 : -(n / n_top) * i_rev}};
      add(std::move(ledger));
    }

    if (ctx.tau() >= kRatioTauFloor) {
      for (int n : supported) add(level_ratio_ledger(prior, ctx, n));
    } else {
      report.skipped.push_back("level_ratio: tau below 1e-5");
    }

    // <dI(x_n|y_0)> = (N-<n>)/N dI(x_0|y_0) - <n>/N I(rev); the average of
    // the pointwise gains over the posterior is the relative entropy.
    {
      double nbar = mean_excitation(post);
      InfoLedger ledger;
      ledger.identity = "avg_gain_split";
      ledger.lhs = {relative_entropy(post, prior)};
      ledger.terms = {
          {term::delta_i, (n_top - nbar) / n_top * gain0},
          {term::reversal, nbar == 0.0 ? 0.0 : -(nbar / n_top) * i_rev}};
      add(std::move(ledger));
    }
  } else {
    report.skipped.push_back("decay_reversal_split: level 0 unsupported");
    report.skipped.push_back("gain_split: level 0 unsupported");
    report.skipped.push_back("level_ratio: level 0 unsupported");
    report.skipped.push_back("avg_gain_split: level 0 unsupported");
  }

  if (has0 && has1) {
    double gain0 = pointwise_gain(prior, post, 0);
    double gain1 = pointwise_gain(prior, post, 1);

    {  // I(rev) = (N-1) dI(x_0|y_0) - N dI(x_1|y_0)
      InfoLedger ledger;
      ledger.identity = "reversal_from_gains";
      ledger.lhs = {i_rev};
      ledger.terms = {{term::delta_i, (n_top - 1.0) * gain0},
                      {term::delta_i, -n_top * gain1}};
      add(std::move(ledger));
    }

    // dI(x_n|y_0) = n dI(x_1|y_0) - (n-1) dI(x_0|y_0)
    for (int n : supported) {
      double gain_n = pointwise_gain(prior, post, n);
      InfoLedger ledger;
      ledger.identity = "gain_from_low_levels";
      ledger.level = n;
      ledger.lhs = {gain_n};
      ledger.terms = {{term::delta_i, double(n) * gain1},
                      {term::delta_i, -(double(n) - 1.0) * gain0}};
      add(std::move(ledger));
    }
  } else {
    report.skipped.push_back("reversal_from_gains: level 0 or 1 unsupported");
    report.skipped.push_back("gain_from_low_levels: level 0 or 1 unsupported");
  }

  double worst = 0.0;
  for (const auto& ledger : report.ledgers)
    if (auto r = ledger.residual()) worst = std::max(worst, std::abs(*r));
  report.max_abs_residual = worst;
  return report;
}

}  // namespace weakinfo
