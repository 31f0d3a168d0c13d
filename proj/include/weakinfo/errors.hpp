#pragma once

#include <stdexcept>
#include <string>

namespace weakinfo {

// Error kinds raised across the library. The CLI maps impossible_outcome to
// its own exit code, so the enumeration is part of the public contract.
enum class Errc {
  empty_or_single_level,
  negative_weight,
  all_zero,
  not_normalized,
  out_of_range,
  impossible_outcome,
  unsupported_level,
  level_below_clicks,
  support_violation,
  not_a_qubit,
  degenerate_mean,
  degenerate_ratio,
  too_few_trials,
  outcome_too_rare,
  no_interior_peak,
  ground_state_unsupported,
};

constexpr const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::empty_or_single_level: return "EmptyOrSingleLevel";
    case Errc::negative_weight: return "NegativeWeight";
    case Errc::all_zero: return "AllZero";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::impossible_outcome: return "ImpossibleOutcome";
    case Errc::unsupported_level: return "UnsupportedLevel";
    case Errc::level_below_clicks: return "LevelBelowClicks";
    case Errc::support_violation: return "SupportViolation";
    case Errc::not_a_qubit: return "NotAQubit";
    case Errc::degenerate_mean: return "DegenerateMean";
    case Errc::degenerate_ratio: return "DegenerateRatio";
    case Errc::too_few_trials: return "TooFewTrials";
    case Errc::outcome_too_rare: return "OutcomeTooRare";
    case Errc::no_interior_peak: return "NoInteriorPeak";
    case Errc::ground_state_unsupported: return "GroundStateUnsupported";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace weakinfo
