// Command-line front end: conservation ledgers, figure sweeps, reversal
// reports, Monte Carlo estimates, and the self-verification suite.
//
// Exit codes: 0 success, 2 config or domain error, 3 impossible outcome,
// 4 conservation/verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weakinfo/serialize.hpp"
#include "weakinfo/verify.hpp"
#include "weakinfo/weakinfo.hpp"

namespace {

using weakinfo::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitImpossible = 3;
constexpr int kExitInvariant = 4;

struct Options {
  std::string prior_text;
  std::string preset;
  std::string tau_range;
  std::string spacing = "linear";
  std::string format;
  std::string out_path;
  std::string config_path;
  double tau = 0.0;
  double gamma = 0.0;
  double time = 0.0;
  long long trials = 1000000;
  std::uint64_t seed = 42;
  int clicks = 0;
  int level = 0;
  bool avg = false;
  bool posterior_mode = false;
  bool inject_sign_flip = false;
};

// Weight tokens are plain decimals or fractions like "1/3".
std::vector<double> parse_prior_text(const std::string& text) {
  std::vector<double> weights;
  std::stringstream ss(text);
  std::string token;
  auto parse_one = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size())
      weakinfo::raise(weakinfo::Errc::out_of_range,
                      "cannot parse weight '" + s + "'");
    return v;
  };
  while (std::getline(ss, token, ',')) {
    auto slash = token.find('/');
    if (slash == std::string::npos) {
      weights.push_back(parse_one(token));
    } else {
      double num = parse_one(token.substr(0, slash));
      double den = parse_one(token.substr(slash + 1));
      if (den == 0.0)
        weakinfo::raise(weakinfo::Errc::out_of_range,
                        "zero denominator in '" + token + "'");
      weights.push_back(num / den);
    }
  }
  if (weights.empty())
    weakinfo::raise(weakinfo::Errc::empty_or_single_level, "empty prior");
  return weights;
}

weakinfo::GridSpec parse_tau_range(const std::string& text,
                                   const std::string& spacing) {
  double start = 0.0, stop = 0.0;
  int points = 0;
  char colon1 = 0, colon2 = 0;
  std::istringstream ss(text);
  ss >> start >> colon1 >> stop >> colon2 >> points;
  if (ss.fail() || colon1 != ':' || colon2 != ':' || !(ss >> std::ws).eof())
    weakinfo::raise(weakinfo::Errc::out_of_range,
                    "--tau-range expects start:stop:points, got '" + text + "'");
  weakinfo::GridSpacing mode;
  if (spacing == "linear") mode = weakinfo::GridSpacing::linear;
  else if (spacing == "log") mode = weakinfo::GridSpacing::logarithmic;
  else
    weakinfo::raise(weakinfo::Errc::out_of_range,
                    "--spacing must be linear or log");
  return weakinfo::GridSpec{start, stop, points, mode};
}

struct Preset {
  std::vector<double> weights;
  std::optional<int> clicks;
  weakinfo::GridSpec grid;
};

std::optional<Preset> lookup_preset(const std::string& name) {
  using weakinfo::GridSpacing;
  using weakinfo::GridSpec;
  const GridSpec fig1{0.0, 8.0, 400, GridSpacing::linear};
  const GridSpec fig2{0.01, 8.0, 400, GridSpacing::linear};
  if (name == "fig1a") return Preset{{1, 1, 1}, std::nullopt, fig1};
  if (name == "fig1b") return Preset{{0.2, 0.4, 0.4}, std::nullopt, fig1};
  if (name == "fig1c") return Preset{{0.5, 0.3, 0.2}, std::nullopt, fig1};
  if (name == "fig1d") return Preset{{0.2, 0.2, 0.6}, std::nullopt, fig1};
  if (name == "fig2k0") return Preset{{1, 1, 1, 1}, 0, fig2};
  if (name == "fig2k1") return Preset{{1, 1, 1, 1}, 1, fig2};
  if (name == "fig2k2") return Preset{{1, 1, 1, 1}, 2, fig2};
  if (name == "fig2k3") return Preset{{1, 1, 1, 1}, 3, fig2};
  return std::nullopt;
}

// Effective per-command configuration after merging an optional JSON config
// file under the explicit flags (flags win).
struct RunConfig {
  std::string command;
  std::optional<std::vector<double>> prior_weights;
  std::optional<double> tau;
  std::optional<double> gamma;
  std::optional<double> time;
  std::optional<int> clicks;
  std::optional<int> level;
  bool avg = false;
  std::optional<std::string> preset;
  std::optional<weakinfo::GridSpec> grid;
  std::string spacing = "linear";
  long long trials = 1000000;
  std::uint64_t seed = 42;
  std::string format;
  std::string out_path;
  bool posterior_mode = false;
  bool inject_sign_flip = false;
};

RunConfig merge_config(const CLI::App* sub, const Options& opt,
                       const std::string& command) {
  nlohmann::json file;
  if (sub->count("--config")) {
    std::ifstream in(opt.config_path);
    if (!in)
      weakinfo::raise(weakinfo::Errc::out_of_range,
                      "cannot open config file " + opt.config_path);
    try {
      in >> file;
    } catch (const nlohmann::json::exception& e) {
      weakinfo::raise(weakinfo::Errc::out_of_range,
                      std::string("config parse error: ") + e.what());
    }
  }

  RunConfig cfg;
  cfg.command = command;

  auto has_flag = [&](const char* flag) { return sub->count(flag) > 0; };
  auto file_has = [&](const char* key) { return file.contains(key); };

  if (has_flag("--prior")) {
    cfg.prior_weights = parse_prior_text(opt.prior_text);
  } else if (file_has("prior")) {
    if (file["prior"].is_string())
      cfg.prior_weights = parse_prior_text(file["prior"].get<std::string>());
    else
      cfg.prior_weights = file["prior"].get<std::vector<double>>();
  }

  // The time specification is one logical field: any explicit time flag
  // shadows every file-provided time key.
  const bool time_flags = has_flag("--tau") || has_flag("--gamma") ||
                          has_flag("--time");
  auto pick_double = [&](const char* flag, const char* key, double flag_value,
                         std::optional<double>& dst, bool allow_file) {
    if (has_flag(flag)) dst = flag_value;
    else if (allow_file && file_has(key)) dst = file[key].get<double>();
  };
  pick_double("--tau", "tau", opt.tau, cfg.tau, !time_flags);
  pick_double("--gamma", "gamma", opt.gamma, cfg.gamma, !time_flags);
  pick_double("--time", "time", opt.time, cfg.time, !time_flags);

  if (has_flag("--k")) cfg.clicks = opt.clicks;
  else if (file_has("k")) cfg.clicks = file["k"].get<int>();
  if (has_flag("--n")) cfg.level = opt.level;
  else if (file_has("n")) cfg.level = file["n"].get<int>();

  if (has_flag("--avg")) cfg.avg = true;
  else if (file_has("avg")) cfg.avg = file["avg"].get<bool>();

  if (has_flag("--preset")) cfg.preset = opt.preset;
  else if (file_has("preset")) cfg.preset = file["preset"].get<std::string>();

  if (has_flag("--spacing")) cfg.spacing = opt.spacing;
  else if (file_has("spacing")) cfg.spacing = file["spacing"].get<std::string>();

  if (has_flag("--tau-range"))
    cfg.grid = parse_tau_range(opt.tau_range, cfg.spacing);
  else if (file_has("tau_range"))
    cfg.grid = parse_tau_range(file["tau_range"].get<std::string>(), cfg.spacing);

  if (has_flag("--trials")) cfg.trials = opt.trials;
  else if (file_has("trials")) cfg.trials = file["trials"].get<long long>();
  if (has_flag("--seed")) cfg.seed = opt.seed;
  else if (file_has("seed")) cfg.seed = file["seed"].get<std::uint64_t>();

  if (has_flag("--format")) cfg.format = opt.format;
  else if (file_has("format")) cfg.format = file["format"].get<std::string>();
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json")
    weakinfo::raise(weakinfo::Errc::out_of_range,
                    "--format must be csv or json");

  if (has_flag("--out")) cfg.out_path = opt.out_path;
  else if (file_has("out")) cfg.out_path = file["out"].get<std::string>();

  cfg.posterior_mode = opt.posterior_mode;
  cfg.inject_sign_flip = opt.inject_sign_flip;
  return cfg;
}

weakinfo::DetectionContext resolve_context(const RunConfig& cfg) {
  const bool has_tau = cfg.tau.has_value();
  const bool has_rate = cfg.gamma.has_value() || cfg.time.has_value();
  if (has_tau && has_rate)
    weakinfo::raise(weakinfo::Errc::out_of_range,
                    "give either --tau or --gamma with --time, not both");
  if (has_tau) return weakinfo::DetectionContext::from_tau(*cfg.tau);
  if (cfg.gamma.has_value() && cfg.time.has_value())
    return weakinfo::DetectionContext::from_rate_time(*cfg.gamma, *cfg.time);
  weakinfo::raise(weakinfo::Errc::out_of_range,
                  "time specification missing: --tau, or --gamma with --time");
}

weakinfo::PriorState resolve_prior(const RunConfig& cfg) {
  if (!cfg.prior_weights)
    weakinfo::raise(weakinfo::Errc::out_of_range, "--prior is required");
  return weakinfo::make_prior(*cfg.prior_weights);
}

ordered_json config_json(const RunConfig& cfg,
                         const weakinfo::PriorState* prior) {
  ordered_json j;
  j["command"] = cfg.command;
  if (prior) {
    ordered_json probs = ordered_json::array();
    for (double p : prior->probs()) probs.push_back(weakinfo::json_value(p));
    j["prior"] = probs;  // normalized weights actually used
  }
  if (cfg.tau) j["tau"] = weakinfo::json_value(*cfg.tau);
  if (cfg.gamma) j["gamma"] = weakinfo::json_value(*cfg.gamma);
  if (cfg.time) j["time"] = weakinfo::json_value(*cfg.time);
  if (cfg.clicks) j["k"] = *cfg.clicks;
  if (cfg.level) j["n"] = *cfg.level;
  if (cfg.avg) j["avg"] = true;
  if (cfg.preset) j["preset"] = *cfg.preset;
  if (cfg.grid) {
    ordered_json grid;
    grid["tau_start"] = weakinfo::json_value(cfg.grid->tau_start);
    grid["tau_stop"] = weakinfo::json_value(cfg.grid->tau_stop);
    grid["points"] = cfg.grid->points;
    grid["spacing"] =
        cfg.grid->spacing == weakinfo::GridSpacing::linear ? "linear" : "log";
    j["grid"] = grid;
  }
  if (cfg.command == "verify" || cfg.command == "oracle") {
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
  }
  return j;
}

ordered_json envelope(ordered_json config, ordered_json rows) {
  ordered_json j;
  j["config"] = std::move(config);
  j["rows"] = std::move(rows);
  j["meta"] = {{"version", weakinfo::kVersion},
               {"tolerance", weakinfo::kLedgerTol}};
  return j;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitConfig;
  }
  out << text;
  return kExitOk;
}

int emit_json(const ordered_json& j, const std::string& out_path) {
  return emit(j.dump(2) + "\n", out_path);
}

// ---- subcommands -----------------------------------------------------------

int cmd_ledger(const RunConfig& cfg) {
  if (cfg.avg && cfg.level)
    weakinfo::raise(weakinfo::Errc::out_of_range,
                    "--avg and --n are mutually exclusive");
  auto prior = resolve_prior(cfg);
  auto ctx = resolve_context(cfg);
  int k = cfg.clicks.value_or(0);

  weakinfo::InfoLedger ledger;
  if (cfg.level) {
    ledger = k == 0 ? weakinfo::null_ledger(prior, ctx, *cfg.level)
                    : weakinfo::kclick_ledger(prior, ctx, k, *cfg.level);
  } else {
    ledger = k == 0 ? weakinfo::null_ledger_avg(prior, ctx)
                    : weakinfo::kclick_ledger_avg(prior, ctx, k);
  }

  std::string format = cfg.format.empty() ? "json" : cfg.format;
  int rc;
  if (format == "csv") {
    rc = emit(weakinfo::ledger_csv_header() + "\n" +
                  weakinfo::ledger_csv_row(ledger) + "\n",
              cfg.out_path);
  } else {
    rc = emit_json(envelope(config_json(cfg, &prior),
                            ordered_json::array({weakinfo::to_json(ledger)})),
                   cfg.out_path);
  }
  if (rc != kExitOk) return rc;
  auto residual = ledger.residual();
  if (residual && std::abs(*residual) > weakinfo::kLedgerTol)
    return kExitInvariant;
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  RunConfig effective = cfg;
  if (cfg.preset) {
    auto preset = lookup_preset(*cfg.preset);
    if (!preset)
      weakinfo::raise(weakinfo::Errc::out_of_range,
                      "unknown preset '" + *cfg.preset + "'");
    if (!effective.prior_weights) effective.prior_weights = preset->weights;
    if (!effective.clicks) effective.clicks = preset->clicks;
    if (!effective.grid) effective.grid = preset->grid;
  }
  if (!effective.grid)
    weakinfo::raise(weakinfo::Errc::out_of_range,
                    "--tau-range or --preset is required");
  auto prior = resolve_prior(effective);

  weakinfo::TimeSeries series =
      effective.clicks
          ? weakinfo::sweep_kclick_avg(prior, *effective.grid, *effective.clicks)
          : weakinfo::sweep_null_avg(prior, *effective.grid);

  std::string format = effective.format.empty() ? "csv" : effective.format;
  if (format == "csv") return emit(weakinfo::to_csv(series), effective.out_path);

  ordered_json rows = ordered_json::array();
  for (const auto& row : series.rows)
    rows.push_back(weakinfo::sweep_row_json(row));
  return emit_json(envelope(config_json(effective, &prior), std::move(rows)),
                   effective.out_path);
}

int cmd_reversal(const RunConfig& cfg) {
  auto prior = resolve_prior(cfg);
  auto ctx = resolve_context(cfg);

  auto report = weakinfo::reversal_identity_suite(prior, ctx);
  // DegenerateMean from the averaged form propagates to the caller.
  auto avg = weakinfo::reversal_ledger_avg(prior, ctx);
  if (auto r = avg.residual())
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(*r));
  report.ledgers.push_back(std::move(avg));

  if (report.top_level_unoccupied)
    std::cerr << "warning: prior has zero mass on the top level N = "
              << prior.top_level()
              << "; p(rev) depends on the configured dimension\n";

  std::string format = cfg.format.empty() ? "json" : cfg.format;
  int rc;
  if (format == "csv") {
    std::string text = weakinfo::ledger_csv_header() + "\n";
    for (const auto& ledger : report.ledgers)
      text += weakinfo::ledger_csv_row(ledger) + "\n";
    rc = emit(text, cfg.out_path);
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& ledger : report.ledgers)
      rows.push_back(weakinfo::to_json(ledger));
    ordered_json j = envelope(config_json(cfg, &prior), std::move(rows));
    ordered_json summary;
    summary["p_rev"] = weakinfo::json_value(report.p_rev);
    summary["I_rev"] = weakinfo::json_value(report.i_rev_bits);
    summary["max_abs_residual"] = weakinfo::json_value(report.max_abs_residual);
    summary["skipped"] = report.skipped;
    summary["top_level_unoccupied"] = report.top_level_unoccupied;
    j["summary"] = summary;
    rc = emit_json(j, cfg.out_path);
  }
  if (rc != kExitOk) return rc;
  return report.max_abs_residual <= weakinfo::kLedgerTol ? kExitOk
                                                         : kExitInvariant;
}

int cmd_verify(const RunConfig& cfg) {
  weakinfo::VerifyOptions options;
  options.trials = cfg.trials;
  options.seed = cfg.seed;
  options.inject_sign_flip = cfg.inject_sign_flip;
  auto results = weakinfo::run_verification(options);

  bool all_pass = true;
  for (const auto& fam : results) all_pass = all_pass && fam.pass;

  std::string format = cfg.format.empty() ? "json" : cfg.format;
  int rc;
  if (format == "csv") {
    std::string text = "family,pass,checks,detail\n";
    for (const auto& fam : results) {
      std::string detail = fam.detail;
      for (auto& c : detail)
        if (c == ',') c = ';';
      text += fam.name + "," + (fam.pass ? "true" : "false") + "," +
              std::to_string(fam.checks) + "," + detail + "\n";
    }
    rc = emit(text, cfg.out_path);
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& fam : results) {
      ordered_json row;
      row["family"] = fam.name;
      row["pass"] = fam.pass;
      row["checks"] = fam.checks;
      row["detail"] = fam.detail;
      rows.push_back(row);
    }
    ordered_json j = envelope(config_json(cfg, nullptr), std::move(rows));
    j["summary"] = {{"all_pass", all_pass}};
    rc = emit_json(j, cfg.out_path);
  }
  if (rc != kExitOk) return rc;
  return all_pass ? kExitOk : kExitInvariant;
}

int cmd_oracle(const RunConfig& cfg) {
  auto ctx = resolve_context(cfg);
  ordered_json rows = ordered_json::array();
  std::string csv_text;
  std::optional<weakinfo::PriorState> prior;
  if (cfg.prior_weights) prior = resolve_prior(cfg);

  if (!prior) {
    if (!cfg.level || !cfg.clicks)
      weakinfo::raise(weakinfo::Errc::out_of_range,
                      "likelihood estimate needs --n and --k (or give --prior)");
    auto est = weakinfo::oracle::estimate_likelihood(*cfg.level, *cfg.clicks,
                                                     ctx, cfg.trials, cfg.seed);
    double closed = weakinfo::outcome_likelihood(*cfg.level, *cfg.clicks, ctx);
    ordered_json row;
    row["kind"] = "likelihood";
    row["n"] = *cfg.level;
    row["k"] = *cfg.clicks;
    row["value"] = weakinfo::json_value(est.value);
    row["std_error"] = weakinfo::json_value(est.std_error);
    row["closed_form"] = weakinfo::json_value(closed);
    rows.push_back(row);
    csv_text = "kind,n,k,value,std_error,closed_form\nlikelihood," +
               std::to_string(*cfg.level) + "," + std::to_string(*cfg.clicks) +
               "," + weakinfo::format_double(est.value) + "," +
               weakinfo::format_double(est.std_error) + "," +
               weakinfo::format_double(closed) + "\n";
  } else if (cfg.posterior_mode) {
    int k = cfg.clicks.value_or(0);
    auto est =
        weakinfo::oracle::estimate_posterior(*prior, k, ctx, cfg.trials, cfg.seed);
    auto closed = weakinfo::posterior(*prior, k, ctx);
    csv_text = "level,estimate,std_error,closed_form\n";
    for (std::size_t n = 0; n < prior->dim(); ++n) {
      ordered_json row;
      row["kind"] = "posterior";
      row["k"] = k;
      row["n"] = n;
      row["value"] = weakinfo::json_value(est.probs[n]);
      row["std_error"] = weakinfo::json_value(est.std_errors[n]);
      row["closed_form"] = weakinfo::json_value(closed[n]);
      row["matched"] = est.matched;
      rows.push_back(row);
      csv_text += std::to_string(n) + "," +
                  weakinfo::format_double(est.probs[n]) + "," +
                  weakinfo::format_double(est.std_errors[n]) + "," +
                  weakinfo::format_double(closed[n]) + "\n";
    }
  } else {
    int k = cfg.clicks.value_or(0);
    auto est = weakinfo::oracle::estimate_outcome_prob(*prior, k, ctx,
                                                       cfg.trials, cfg.seed);
    double closed = weakinfo::outcome_prob(*prior, k, ctx);
    ordered_json row;
    row["kind"] = "outcome_prob";
    row["k"] = k;
    row["value"] = weakinfo::json_value(est.value);
    row["std_error"] = weakinfo::json_value(est.std_error);
    row["closed_form"] = weakinfo::json_value(closed);
    rows.push_back(row);
    csv_text = "kind,k,value,std_error,closed_form\noutcome_prob," +
               std::to_string(k) + "," + weakinfo::format_double(est.value) +
               "," + weakinfo::format_double(est.std_error) + "," +
               weakinfo::format_double(closed) + "\n";
  }

  std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "csv") return emit(csv_text, cfg.out_path);
  return emit_json(
      envelope(config_json(cfg, prior ? &*prior : nullptr), std::move(rows)),
      cfg.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "weakinfo: conservation-type information ledgers for photon-detection "
      "weak measurements on decaying multilevel systems"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--prior", opt.prior_text,
                    "comma-separated weights, fractions allowed (1/3,1/3,1/3);"
                    " auto-normalized");
    sub->add_option("--tau", opt.tau, "rescaled time 2*gamma*t");
    sub->add_option("--gamma", opt.gamma, "decay rate (1/s)");
    sub->add_option("--time", opt.time, "elapsed time (s)");
    sub->add_option("--k", opt.clicks, "click count");
    sub->add_option("--n", opt.level, "level index");
    sub->add_flag("--avg", opt.avg, "averaged ledger (default when --n absent)");
    sub->add_option("--preset", opt.preset,
                    "figure preset: fig1a..fig1d, fig2k0..fig2k3");
    sub->add_option("--tau-range", opt.tau_range, "grid start:stop:points");
    sub->add_option("--spacing", opt.spacing, "grid spacing: linear|log");
    sub->add_option("--trials", opt.trials, "Monte Carlo trials");
    sub->add_option("--seed", opt.seed, "64-bit sampler seed");
    sub->add_option("--format", opt.format, "output format: csv|json");
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--config", opt.config_path,
                    "JSON config file, merged under explicit flags");
  };

  CLI::App* ledger = app.add_subcommand(
      "ledger", "one conservation ledger (per-level with --n, else averaged)");
  add_common(ledger);
  CLI::App* sweep =
      app.add_subcommand("sweep", "ledger time series over a tau grid");
  add_common(sweep);
  CLI::App* reversal = app.add_subcommand(
      "reversal", "reversal probability and the identity suite");
  add_common(reversal);
  CLI::App* verify =
      app.add_subcommand("verify", "run the invariant + oracle families");
  add_common(verify);
  verify->add_flag("--inject-sign-flip", opt.inject_sign_flip,
                   "self-test: corrupt the decay term and expect a failure");
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Monte Carlo estimate vs closed form");
  add_common(oracle_cmd);
  oracle_cmd->add_flag("--posterior", opt.posterior_mode,
                       "estimate the conditional level distribution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (ledger->parsed()) return cmd_ledger(merge_config(ledger, opt, "ledger"));
    if (sweep->parsed()) return cmd_sweep(merge_config(sweep, opt, "sweep"));
    if (reversal->parsed())
      return cmd_reversal(merge_config(reversal, opt, "reversal"));
    if (verify->parsed()) return cmd_verify(merge_config(verify, opt, "verify"));
    if (oracle_cmd->parsed())
      return cmd_oracle(merge_config(oracle_cmd, opt, "oracle"));
  } catch (const weakinfo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == weakinfo::Errc::impossible_outcome ? kExitImpossible
                                                          : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
