#pragma once

// Time-grid evaluation of the averaged ledgers, figure-data regeneration,
// and the decay-term peak condition tau* = <n>/Var(n) at tau*.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "weakinfo/detection.hpp"
#include "weakinfo/errors.hpp"
#include "weakinfo/infotheory.hpp"
#include "weakinfo/state.hpp"

namespace weakinfo {

enum class GridSpacing { linear, logarithmic };

struct GridSpec {
  double tau_start = 0.0;
  double tau_stop = 8.0;
  int points = 400;
  GridSpacing spacing = GridSpacing::linear;

  // Grid points, endpoints pinned exactly for deterministic output.
  std::vector<double> sample_points() const {
    if (!(tau_start >= 0.0) || !(tau_stop > tau_start) ||
        !std::isfinite(tau_stop))
      raise(Errc::out_of_range, "need 0 <= tau_start < tau_stop");
    if (points < 2) raise(Errc::out_of_range, "grid needs at least 2 points");
    if (spacing == GridSpacing::logarithmic && tau_start <= 0.0)
      raise(Errc::out_of_range, "log spacing needs tau_start > 0");
    std::vector<double> taus(static_cast<std::size_t>(points));
    if (spacing == GridSpacing::linear) {
      double step = (tau_stop - tau_start) / double(points - 1);
      for (int i = 0; i < points; ++i) taus[i] = tau_start + step * i;
    } else {
      double la = std::log(tau_start), lb = std::log(tau_stop);
      double step = (lb - la) / double(points - 1);
      for (int i = 0; i < points; ++i) taus[i] = std::exp(la + step * i);
    }
    taus.front() = tau_start;
    taus.back() = tau_stop;
    return taus;
  }
};

struct TimeSeries {
  PriorState prior;
  std::optional<int> clicks;
  std::string identity;
  std::vector<LedgerRow> rows;
};

struct PeakReport {
  double tau_star = 0.0;
  double value_at_peak = 0.0;   // bits
  double consistency_gap = 0.0; // |tau* - <n>/Var(n) at tau*|
  bool grid_fallback = false;   // non-unimodal scan, dense argmax used
};

// Averaged null-result ledger on a tau grid (the fig1 preset curves: I(y_0),
// relative entropy, <n> I(decay)).
inline TimeSeries sweep_null_avg(const PriorState& prior,
                                 const GridSpec& grid) {
  TimeSeries series{prior, 0, "null_avg", {}};
  for (double tau : grid.sample_points()) {
    auto ctx = DetectionContext::from_tau(tau);
    series.rows.push_back({tau, null_ledger_avg(prior, ctx)});
  }
  return series;
}

// Averaged k-click ledger on a tau grid (the fig2 preset curves). The outcome is
// impossible at tau = 0 for k >= 1, so such grids must start above 0.
inline TimeSeries sweep_kclick_avg(const PriorState& prior,
                                   const GridSpec& grid, int k) {
  TimeSeries series{prior, k, "kclick_avg", {}};
  for (double tau : grid.sample_points()) {
    auto ctx = DetectionContext::from_tau(tau);
    series.rows.push_back({tau, kclick_ledger_avg(prior, ctx, k)});
  }
  return series;
}

namespace detail {

inline double decay_term_bits(const PriorState& prior, double tau) {
  auto ctx = DetectionContext::from_tau(tau);
  return mean_excitation(posterior(prior, 0, ctx)) * tau / std::numbers::ln2;
}

}  // namespace detail

// Locates the maximum of <n> I(decay) over the grid range, refines it by
// golden-section search to tau resolution 1e-6, and reports the gap against
// the stationarity condition tau* = <n>/Var(n) evaluated at tau*.
inline PeakReport find_decay_term_peak(const PriorState& prior,
                                       const GridSpec& grid) {
  auto levels = support(prior);
  if (levels.size() == 1 && levels[0] == 0)
    raise(Errc::no_interior_peak, "decay term is identically zero");

  std::vector<double> taus = grid.sample_points();
  std::vector<double> vals(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i)
    vals[i] = detail::decay_term_bits(prior, taus[i]);

  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i] > vals[best]) best = i;
  if (best == 0 || best + 1 == vals.size())
    raise(Errc::no_interior_peak, "maximum not bracketed by the grid");

  // Unimodal means the finite differences change sign at most once.
  double scale = vals[best];
  bool fell = false;
  bool unimodal = true;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    double d = vals[i + 1] - vals[i];
    if (d < -1e-12 * scale) fell = true;
    else if (d > 1e-12 * scale && fell) { unimodal = false; break; }
  }

  PeakReport report;
  if (!unimodal) {
    GridSpec dense = grid;
    dense.points = grid.points * 16;
    std::vector<double> dtaus = dense.sample_points();
    double best_tau = dtaus[0], best_val = detail::decay_term_bits(prior, dtaus[0]);
    for (double tau : dtaus) {
      double v = detail::decay_term_bits(prior, tau);
      if (v > best_val) { best_val = v; best_tau = tau; }
    }
    report.tau_star = best_tau;
    report.value_at_peak = best_val;
    report.grid_fallback = true;
  } else {
    double a = taus[best - 1], b = taus[best + 1];
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = detail::decay_term_bits(prior, c);
    double fd = detail::decay_term_bits(prior, d);
    while (b - a > 1e-6) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - inv_phi * (b - a);
        fc = detail::decay_term_bits(prior, c);
      } else {
        a = c; c = d; fc = fd;
        d = a + inv_phi * (b - a);
        fd = detail::decay_term_bits(prior, d);
      }
    }
    report.tau_star = 0.5 * (a + b);
    report.value_at_peak = detail::decay_term_bits(prior, report.tau_star);
  }

  auto ctx = DetectionContext::from_tau(report.tau_star);
  Distribution post = posterior(prior, 0, ctx);
  double mean = mean_excitation(post);
  double second = 0.0;
  for (std::size_t n = 0; n < post.dim(); ++n)
    second += double(n) * double(n) * post[n];
  double var = second - mean * mean;
  report.consistency_gap =
      var > 0.0 ? std::abs(report.tau_star - mean / var)
                : std::numeric_limits<double>::infinity();
  return report;
}

// Long-time limit of I(y_0): the information content of the ground-state
// prior, -log2 p(x_0).
inline InfoValue asymptote(const PriorState& prior) {
  if (prior[0] <= 0.0)
    raise(Errc::ground_state_unsupported,
          "p(x_0) = 0: I(y_0) grows without bound");
  return info_content(prior[0]);
}

}  // namespace weakinfo
