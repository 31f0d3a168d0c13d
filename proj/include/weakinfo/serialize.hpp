#pragma once

// Deterministic CSV and JSON emission. Floats use the shortest decimal
// representation that round-trips (std::to_chars), so identical inputs give
// byte-identical output. Non-finite values serialize as the strings "inf"
// and "-inf"; a not-applicable residual is an empty CSV field / JSON null.
//
// Sweep CSV column order is fixed:
//   tau, I_outcome, <gain column>, decay_term, no_decay_term,
//   multiplicity_term, residual
// where the gain column is relative_entropy for averaged ledgers and
// delta_I for per-level ones. Absent terms are emitted as empty fields,
// never as omitted columns.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakinfo/infotheory.hpp"
#include "weakinfo/reversal.hpp"
#include "weakinfo/sweep.hpp"

namespace weakinfo {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // canonicalize -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline ordered_json json_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  if (v == 0.0) return 0.0;
  return v;
}

inline ordered_json json_value(const std::optional<double>& v) {
  if (!v) return nullptr;
  return json_value(*v);
}

namespace detail {

inline std::optional<double> term_value(const InfoLedger& ledger,
                                        const char* name) {
  bool found = false;
  double sum = 0.0;
  for (const auto& t : ledger.terms) {
    if (t.name == name) {
      found = true;
      sum += t.bits;
    }
  }
  if (!found) return std::nullopt;
  return sum;
}

inline std::string csv_field(const std::optional<double>& v) {
  if (!v) return "";
  return format_double(*v);
}

}  // namespace detail

inline ordered_json to_json(const InfoLedger& ledger) {
  ordered_json j;
  j["identity"] = ledger.identity;
  if (ledger.clicks) j["k"] = *ledger.clicks;
  if (ledger.level) j["n"] = *ledger.level;
  j[kLhsName] = json_value(ledger.lhs.bits);
  ordered_json terms = ordered_json::array();
  for (const auto& t : ledger.terms) {
    ordered_json entry;
    entry["name"] = t.name;
    entry["bits"] = json_value(t.bits);
    terms.push_back(entry);
  }
  j["terms"] = terms;
  j["residual"] = json_value(ledger.residual());
  return j;
}

inline ordered_json to_json(const ReversalReport& report) {
  ordered_json j;
  j["p_rev"] = json_value(report.p_rev);
  j["I_rev"] = json_value(report.i_rev_bits);
  j["max_abs_residual"] = json_value(report.max_abs_residual);
  j["top_level_unoccupied"] = report.top_level_unoccupied;
  ordered_json ledgers = ordered_json::array();
  for (const auto& ledger : report.ledgers) ledgers.push_back(to_json(ledger));
  j["ledgers"] = ledgers;
  j["skipped"] = report.skipped;
  return j;
}

// Flattened sweep row with the fixed column set.
inline ordered_json sweep_row_json(const LedgerRow& row) {
  const InfoLedger& ledger = row.ledger;
  ordered_json j;
  j["tau"] = json_value(row.tau);
  j[kLhsName] = json_value(ledger.lhs.bits);
  const char* gain = detail::term_value(ledger, term::relative_entropy)
                         ? term::relative_entropy
                         : term::delta_i;
  j[gain] = json_value(detail::term_value(ledger, gain));
  j[term::decay] = json_value(detail::term_value(ledger, term::decay));
  j[term::no_decay] = json_value(detail::term_value(ledger, term::no_decay));
  j[term::multiplicity] =
      json_value(detail::term_value(ledger, term::multiplicity));
  j["residual"] = json_value(ledger.residual());
  return j;
}

inline std::string sweep_csv_header(const TimeSeries& series) {
  const char* gain = term::relative_entropy;
  if (!series.rows.empty() &&
      !detail::term_value(series.rows.front().ledger, term::relative_entropy))
    gain = term::delta_i;
  std::string h = "tau,";
  h += kLhsName;
  h += ',';
  h += gain;
  h += ",decay_term,no_decay_term,multiplicity_term,residual";
  return h;
}

inline std::string to_csv(const TimeSeries& series) {
  std::string out = sweep_csv_header(series);
  out += '\n';
  for (const auto& row : series.rows) {
    const InfoLedger& ledger = row.ledger;
    const char* gain = detail::term_value(ledger, term::relative_entropy)
                           ? term::relative_entropy
                           : term::delta_i;
    out += format_double(row.tau);
    out += ',';
    out += format_double(ledger.lhs.bits);
    out += ',';
    out += detail::csv_field(detail::term_value(ledger, gain));
    out += ',';
    out += detail::csv_field(detail::term_value(ledger, term::decay));
    out += ',';
    out += detail::csv_field(detail::term_value(ledger, term::no_decay));
    out += ',';
    out += detail::csv_field(detail::term_value(ledger, term::multiplicity));
    out += ',';
    out += detail::csv_field(ledger.residual());
    out += '\n';
  }
  return out;
}

// Generic ledger rows (used by the ledger and reversal commands): every
// term column the library emits, one row per ledger. Same-named terms
// within one identity are summed into their column.
inline std::string ledger_csv_header() {
  return "identity,k,n,I_outcome,delta_I,relative_entropy,decay_term,"
         "no_decay_term,multiplicity_term,reversal_term,level_ratio,residual";
}

inline std::string ledger_csv_row(const InfoLedger& ledger) {
  std::string out = ledger.identity;
  out += ',';
  out += ledger.clicks ? std::to_string(*ledger.clicks) : "";
  out += ',';
  out += ledger.level ? std::to_string(*ledger.level) : "";
  out += ',';
  out += format_double(ledger.lhs.bits);
  for (const char* name :
       {term::delta_i, term::relative_entropy, term::decay, term::no_decay,
        term::multiplicity, term::reversal, "level_ratio"}) {
    out += ',';
    out += detail::csv_field(detail::term_value(ledger, name));
  }
  out += ',';
  out += detail::csv_field(ledger.residual());
  return out;
}

}  // namespace weakinfo
