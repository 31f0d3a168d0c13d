#pragma once

// Self-verification families behind the `verify` CLI command: conservation
// residuals over a fixed prior/tau matrix, the known limiting values, and
// Monte Carlo agreement between the sampler and the closed forms. Results
// are deterministic for a fixed (trials, seed), so repeated runs emit
// byte-identical reports.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "weakinfo/detection.hpp"
#include "weakinfo/infotheory.hpp"
#include "weakinfo/oracle.hpp"
#include "weakinfo/reversal.hpp"
#include "weakinfo/serialize.hpp"
#include "weakinfo/state.hpp"
#include "weakinfo/sweep.hpp"

namespace weakinfo {

struct VerifyOptions {
  long long trials = 1000000;
  std::uint64_t seed = 42;
  // Self-test hook: negates the decay term inside the null-conservation
  // family, which must make that family fail.
  bool inject_sign_flip = false;
};

struct FamilyResult {
  std::string name;
  bool pass = false;
  long long checks = 0;
  std::string detail;
};

// Fixed verification matrix: the preset priors plus assorted
// dimensions 2..8, degenerate and sparse cases included.
inline std::vector<PriorState> verification_priors() {
  const std::vector<std::vector<double>> weights = {
      {1, 1, 1},                  // fig1a
      {0.2, 0.4, 0.4},            // fig1b
      {0.5, 0.3, 0.2},            // fig1c
      {0.2, 0.2, 0.6},            // fig1d
      {1, 1, 1, 1},               // fig2
      {0.5, 0.5},
      {0.2, 0.8},
      {0.9, 0.1},
      {1, 0},
      {0.5, 0, 0.5},
      {0, 0.5, 0.5},
      {0.1, 0.2, 0.3, 0.4},
      {0.4, 0.3, 0.2, 0.1},
      {0.7, 0, 0, 0.3},
      {1, 1, 1, 1, 1},
      {0.05, 0.05, 0.1, 0.2, 0.6},
      {1, 2, 3, 4, 5, 6},
      {6, 5, 4, 3, 2, 1},
      {1, 1, 1, 1, 1, 1, 1},
      {0.3, 0.05, 0.05, 0.1, 0.1, 0.2, 0.2},
      {1, 1, 1, 1, 1, 1, 1, 1},
      {8, 4, 2, 1, 0.5, 0.25, 0.125, 0.0625},
  };
  std::vector<PriorState> priors;
  priors.reserve(weights.size());
  for (const auto& w : weights) priors.push_back(make_prior(w));
  return priors;
}

inline const std::vector<double>& verification_taus() {
  static const std::vector<double> taus = {0.01, 0.1,  std::log(2.0), 1.0,
                                           2.0,  5.0,  10.0,          30.0};
  return taus;
}

namespace verify_detail {

inline std::string residual_detail(double worst, long long checks) {
  return "max |residual| = " + format_double(worst) + " bits over " +
         std::to_string(checks) + " ledgers";
}

inline FamilyResult conservation_null(bool inject_sign_flip) {
  FamilyResult fam;
  fam.name = "conservation_null";
  double worst = 0.0;
  bool lhs_consistent = true;
  for (const auto& prior : verification_priors()) {
    for (double tau : verification_taus()) {
      auto ctx = DetectionContext::from_tau(tau);
      double common_lhs = 0.0;
      bool first = true;
      for (int n : support(prior)) {
        auto ledger = null_ledger(prior, ctx, n);
        double delta = ledger.terms[0].bits;
        double decay = ledger.terms[1].bits;
        if (inject_sign_flip) decay = -decay;
        double residual = ledger.lhs.bits - delta - decay;
        worst = std::max(worst, std::abs(residual));
        if (first) {
          common_lhs = ledger.lhs.bits;
          first = false;
        } else if (ledger.lhs.bits != common_lhs) {
          lhs_consistent = false;
        }
        ++fam.checks;
      }
    }
  }
  fam.pass = worst <= kLedgerTol && lhs_consistent;
  fam.detail = residual_detail(worst, fam.checks);
  if (!lhs_consistent) fam.detail += "; lhs not n-independent";
  return fam;
}

inline FamilyResult conservation_null_avg() {
  FamilyResult fam;
  fam.name = "conservation_null_avg";
  double worst = 0.0;
  for (const auto& prior : verification_priors()) {
    for (double tau : verification_taus()) {
      auto ledger = null_ledger_avg(prior, DetectionContext::from_tau(tau));
      auto residual = ledger.residual();
      if (!residual) continue;
      worst = std::max(worst, std::abs(*residual));
      ++fam.checks;
    }
  }
  fam.pass = worst <= kLedgerTol;
  fam.detail = residual_detail(worst, fam.checks);
  return fam;
}

inline FamilyResult entropy_bound() {
  FamilyResult fam;
  fam.name = "entropy_bound";
  double worst_low = 0.0, worst_high = 0.0;
  for (const auto& prior : verification_priors()) {
    for (double tau : verification_taus()) {
      auto ledger = null_ledger_avg(prior, DetectionContext::from_tau(tau));
      double d = ledger.terms[0].bits;
      worst_low = std::min(worst_low, d);
      worst_high = std::max(worst_high, d - ledger.lhs.bits);
      ++fam.checks;
    }
  }
  fam.pass = worst_low >= 0.0 && worst_high <= kLedgerTol;
  fam.detail = "min D = " + format_double(worst_low) +
               ", max D - I(y0) = " + format_double(worst_high);
  return fam;
}

inline FamilyResult conservation_kclick() {
  FamilyResult fam;
  fam.name = "conservation_kclick";
  const std::vector<double> taus = {0.1, std::log(2.0), 2.0, 10.0};
  double worst = 0.0;
  double worst_match = 0.0;
  for (const auto& prior : verification_priors()) {
    if (prior.dim() > 6) continue;
    for (double tau : taus) {
      auto ctx = DetectionContext::from_tau(tau);
      for (int k = 0; k <= prior.top_level(); ++k) {
        if (outcome_prob(prior, k, ctx) == 0.0) continue;
        auto avg = kclick_ledger_avg(prior, ctx, k);
        if (auto r = avg.residual()) {
          worst = std::max(worst, std::abs(*r));
          ++fam.checks;
        }
        for (int n : support(prior)) {
          if (n < k) continue;
          auto ledger = kclick_ledger(prior, ctx, k, n);
          if (auto r = ledger.residual()) {
            worst = std::max(worst, std::abs(*r));
            ++fam.checks;
          }
          if (k == 0) {
            auto null_version = null_ledger(prior, ctx, n);
            worst_match = std::max(
                {worst_match,
                 std::abs(ledger.lhs.bits - null_version.lhs.bits),
                 std::abs(ledger.terms[0].bits - null_version.terms[0].bits),
                 std::abs(ledger.terms[1].bits - null_version.terms[1].bits),
                 std::abs(ledger.terms[2].bits),
                 std::abs(ledger.terms[3].bits)});
          }
        }
      }
    }
  }
  fam.pass = worst <= kLedgerTol && worst_match <= 1e-12;
  fam.detail = residual_detail(worst, fam.checks) +
               "; max k=0 termwise gap = " + format_double(worst_match);
  return fam;
}

inline FamilyResult reversal_identities() {
  FamilyResult fam;
  fam.name = "reversal_identities";
  double worst = 0.0;
  for (const auto& prior : verification_priors()) {
    for (double tau : verification_taus()) {
      auto ctx = DetectionContext::from_tau(tau);
      auto report = reversal_identity_suite(prior, ctx);
      worst = std::max(worst, report.max_abs_residual);
      fam.checks += static_cast<long long>(report.ledgers.size());
      try {
        auto avg = reversal_ledger_avg(prior, ctx);
        if (auto r = avg.residual()) worst = std::max(worst, std::abs(*r));
        ++fam.checks;
      } catch (const Error& e) {
        if (e.code() != Errc::degenerate_mean) throw;
      }
    }
  }
  fam.pass = worst <= kLedgerTol;
  fam.detail = residual_detail(worst, fam.checks);
  return fam;
}

inline FamilyResult log_derivative() {
  FamilyResult fam;
  fam.name = "log_derivative";
  const double h = 1e-5;
  double worst = 0.0;  // gap normalized by the allowed band
  for (const auto& prior : verification_priors()) {
    for (double tau : verification_taus()) {
      if (tau <= h) continue;
      auto ctx = DetectionContext::from_tau(tau);
      double nbar = mean_excitation(posterior(prior, 0, ctx));
      double up = log_outcome_prob(prior, 0, DetectionContext::from_tau(tau + h));
      double down =
          log_outcome_prob(prior, 0, DetectionContext::from_tau(tau - h));
      double fd = -(up - down) / (2.0 * h);
      // The 1e-10 floor covers finite-difference cancellation where <n>
      // itself is below the FD noise, e.g. tau = 30.
      double band = std::max(1e-6 * nbar, 1e-10);
      worst = std::max(worst, std::abs(fd - nbar) / band);
      ++fam.checks;
    }
  }
  fam.pass = worst <= 1.0;
  fam.detail = "max normalized gap = " + format_double(worst) + " over " +
               std::to_string(fam.checks) + " points";
  return fam;
}

inline FamilyResult small_time() {
  FamilyResult fam;
  fam.name = "small_time_rate";
  double worst_rel = 0.0;
  for (double c1sq : {0.5, 0.8, 0.1}) {
    auto prior = make_prior({1.0 - c1sq, c1sq});
    auto gain0 = [&](double tau) {
      auto ctx = DetectionContext::from_tau(tau);
      return pointwise_gain(prior, posterior(prior, 0, ctx), 0);
    };
    const double h = 1e-4;
    double slope_tau = 2.0 * (gain0(h / 2) / (h / 2)) - gain0(h) / h;
    double rate_fd = 2.0 * slope_tau;  // d tau / dt = 2 gamma, gamma = 1
    double rate_closed = small_time_rate(prior, 1.0);
    worst_rel = std::max(worst_rel,
                         std::abs(rate_fd - rate_closed) / rate_closed);
    ++fam.checks;
  }
  bool extremes = small_time_rate(make_prior({1.0, 0.0}), 1.0) == 0.0 &&
                  std::abs(small_time_rate(make_prior({0.0, 1.0}), 1.0) -
                           2.0 / std::numbers::ln2) < 1e-12;
  fam.checks += 2;
  fam.pass = worst_rel <= 1e-6 && extremes;
  fam.detail = "max relative slope error = " + format_double(worst_rel);
  return fam;
}

inline FamilyResult saturation() {
  FamilyResult fam;
  fam.name = "saturation";
  auto late = DetectionContext::from_tau(20.0);
  double qutrit =
      info_from_log(log_outcome_prob(make_prior({1, 1, 1}), 0, late)).bits;
  double gap3 = std::abs(qutrit - std::log2(3.0));

  auto uniform4 = make_prior({1, 1, 1, 1});
  double four =
      info_from_log(log_outcome_prob(uniform4, 0, late)).bits;
  double gap4 = std::abs(four - 2.0);

  double worst_d = 0.0, worst_miw = 0.0;
  for (double tau : {0.05, 0.5, 1.0, 3.0, 8.0}) {
    auto ledger = kclick_ledger_avg(uniform4, DetectionContext::from_tau(tau), 3);
    worst_d = std::max(worst_d, std::abs(ledger.terms[0].bits - 2.0));
    worst_miw = std::max(worst_miw, std::abs(ledger.terms[3].bits));
  }
  fam.checks = 7;
  fam.pass = gap3 <= 1e-3 && gap4 <= 1e-3 && worst_d <= 1e-9 &&
             worst_miw == 0.0;
  fam.detail = "qutrit gap = " + format_double(gap3) + ", 4-level gap = " +
               format_double(gap4) + ", k=3 D gap = " + format_double(worst_d);
  return fam;
}

inline FamilyResult decay_peak() {
  FamilyResult fam;
  fam.name = "decay_peak";
  GridSpec grid{0.0, 8.0, 400, GridSpacing::linear};
  auto qubit = find_decay_term_peak(make_prior({0.5, 0.5}), grid);
  double implicit_gap =
      std::abs(qubit.tau_star - (1.0 + std::exp(-qubit.tau_star)));
  double worst_gap = qubit.consistency_gap;
  for (auto weights :
       std::vector<std::vector<double>>{{1, 1, 1}, {1, 1, 1, 1}}) {
    auto report = find_decay_term_peak(make_prior(weights), grid);
    worst_gap = std::max(worst_gap, report.consistency_gap);
  }
  fam.checks = 3;
  fam.pass = implicit_gap <= 1e-4 && worst_gap <= 1e-4;
  fam.detail = "qubit |tau* - 1 - e^{-tau*}| = " + format_double(implicit_gap) +
               ", max consistency gap = " + format_double(worst_gap);
  return fam;
}

inline FamilyResult povm_completeness() {
  FamilyResult fam;
  fam.name = "povm_completeness";
  double worst = 0.0;
  for (const auto& prior : verification_priors()) {
    for (double tau : {0.0, 0.5, 2.0, 10.0, 50.0}) {
      auto ctx = DetectionContext::from_tau(tau);
      double total = 0.0;
      for (int k = 0; k <= prior.top_level(); ++k)
        total += outcome_prob(prior, k, ctx);
      worst = std::max(worst, std::abs(total - 1.0));
      ++fam.checks;
    }
  }
  fam.pass = worst <= 1e-10;
  fam.detail = "max |sum_k p(y_k) - 1| = " + format_double(worst);
  return fam;
}

inline double agreement_band(double estimate, double closed, double std_error,
                             long long trials) {
  double se_closed = std::sqrt(closed * (1.0 - closed) / double(trials));
  (void)estimate;
  return 4.0 * std::max(std_error, se_closed);
}

inline FamilyResult oracle_likelihood(const VerifyOptions& opt) {
  FamilyResult fam;
  fam.name = "oracle_likelihood";
  auto ctx = DetectionContext::from_tau(std::log(2.0));
  oracle::SplitMix64 seeder(opt.seed);
  double worst = 0.0;  // |diff| / band
  for (int n = 0; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      auto est = oracle::estimate_likelihood(
          n, k, ctx, opt.trials, seeder.split(fam.checks).seed());
      double closed = outcome_likelihood(n, k, ctx);
      double band = agreement_band(est.value, closed, est.std_error, opt.trials);
      double diff = std::abs(est.value - closed);
      if (band == 0.0) {
        if (diff != 0.0) worst = 1e9;
      } else {
        worst = std::max(worst, diff / band);
      }
      ++fam.checks;
    }
  }
  fam.pass = worst <= 1.0;
  fam.detail = "max |estimate - closed| / (4 se) = " + format_double(worst);
  return fam;
}

inline FamilyResult oracle_outcome_prob(const VerifyOptions& opt) {
  FamilyResult fam;
  fam.name = "oracle_outcome_prob";
  auto ctx = DetectionContext::from_tau(std::log(2.0));
  oracle::SplitMix64 seeder(opt.seed + 1);
  double worst = 0.0;
  for (auto weights : std::vector<std::vector<double>>{
           {1, 1, 1}, {0.5, 0.3, 0.2}, {1, 1, 1, 1}}) {
    auto prior = make_prior(weights);
    for (int k : {0, 1}) {
      auto est = oracle::estimate_outcome_prob(
          prior, k, ctx, opt.trials, seeder.split(fam.checks).seed());
      double closed = outcome_prob(prior, k, ctx);
      double band = agreement_band(est.value, closed, est.std_error, opt.trials);
      double diff = std::abs(est.value - closed);
      if (band == 0.0) {
        if (diff != 0.0) worst = 1e9;
      } else {
        worst = std::max(worst, diff / band);
      }
      ++fam.checks;
    }
  }
  fam.pass = worst <= 1.0;
  fam.detail = "max |estimate - closed| / (4 se) = " + format_double(worst);
  return fam;
}

inline FamilyResult oracle_posterior(const VerifyOptions& opt) {
  FamilyResult fam;
  fam.name = "oracle_posterior";
  oracle::SplitMix64 seeder(opt.seed + 2);
  double worst = 0.0;
  int run = 0;
  auto compare = [&](const PriorState& prior, int k, double tau) {
    auto ctx = DetectionContext::from_tau(tau);
    auto est = oracle::estimate_posterior(prior, k, ctx, opt.trials,
                                          seeder.split(run++).seed());
    auto closed = posterior(prior, k, ctx);
    for (std::size_t n = 0; n < prior.dim(); ++n) {
      double se_closed =
          std::sqrt(closed[n] * (1.0 - closed[n]) / double(est.matched));
      double band = 4.0 * std::max(est.std_errors[n], se_closed);
      double diff = std::abs(est.probs[n] - closed[n]);
      if (band == 0.0) {
        if (diff != 0.0) worst = 1e9;
      } else {
        worst = std::max(worst, diff / band);
      }
      ++fam.checks;
    }
  };
  compare(make_prior({1, 1, 1}), 0, std::log(2.0));
  compare(make_prior({1, 1, 1}), 1, std::log(2.0));
  compare(make_prior({1, 1, 1, 1}), 3, 1.0);
  fam.pass = worst <= 1.0;
  fam.detail = "max per-entry |estimate - closed| / (4 se) = " +
               format_double(worst);
  return fam;
}

}  // namespace verify_detail

inline std::vector<FamilyResult> run_verification(const VerifyOptions& opt) {
  using namespace verify_detail;
  std::vector<FamilyResult> results;
  results.push_back(conservation_null(opt.inject_sign_flip));
  results.push_back(conservation_null_avg());
  results.push_back(entropy_bound());
  results.push_back(conservation_kclick());
  results.push_back(reversal_identities());
  results.push_back(log_derivative());
  results.push_back(small_time());
  results.push_back(saturation());
  results.push_back(decay_peak());
  results.push_back(povm_completeness());
  results.push_back(oracle_likelihood(opt));
  results.push_back(oracle_outcome_prob(opt));
  results.push_back(oracle_posterior(opt));
  return results;
}

}  // namespace weakinfo
