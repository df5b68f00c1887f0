#include "hetnet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "hetnet/csv.hpp"
#include "hetnet/error.hpp"
#include "hetnet/format.hpp"
#include "hetnet/mc.hpp"

namespace hetnet {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, key, "expected a number, got '" + text + "'");
  }
  return v;
}

void check_known(const RawConfig::Section& s, std::initializer_list<std::string_view> keys) {
  for (const auto& e : s.entries) {
    if (std::find(keys.begin(), keys.end(), e.key) == keys.end()) {
      throw Error(ErrorKind::UnknownKey, s.name + "." + e.key);
    }
  }
}

}  // namespace

ExperimentConfig load_experiment(const RawConfig& raw) {
  ExperimentConfig cfg;
  cfg.scenario = validate(raw);
  if (const auto* s = raw.find("solver")) {
    check_known(*s, {"step0", "max_iters", "gap_tol", "max_candidates"});
    if (auto* e = s->find("step0")) cfg.solver.step0 = parse_number<double>("solver.step0", e->value);
    if (auto* e = s->find("max_iters")) cfg.solver.max_iters = parse_number<int>("solver.max_iters", e->value);
    if (auto* e = s->find("gap_tol")) cfg.solver.gap_tol = parse_number<double>("solver.gap_tol", e->value);
    if (auto* e = s->find("max_candidates")) {
      cfg.max_candidates = parse_number<std::size_t>("solver.max_candidates", e->value);
    }
    check_solver_params(cfg.solver);
  }
  if (const auto* s = raw.find("mc")) {
    check_known(*s, {"realizations", "seed"});
    if (auto* e = s->find("realizations")) cfg.realizations = parse_number<int>("mc.realizations", e->value);
    if (auto* e = s->find("seed")) cfg.seed = parse_number<std::uint64_t>("mc.seed", e->value);
    if (cfg.realizations < 1) throw Error(ErrorKind::OutOfRange, "mc.realizations", "must be >= 1");
  }
  return cfg;
}

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  bool seed_set = false;
  int realizations = 0;
  unsigned workers = 0;
  std::string objective = "pct50";
  std::string policy = "biased";
  std::string bias_grid = "0:30:1";
  std::string eta_grid = "0:0.9:0.1";
  std::string variant;
  std::string mode = "in-band";
  std::string ratios = "3,10";
  std::string preset;
};

struct Context {
  ExperimentConfig cfg;
  McOptions options;
  std::filesystem::path out_dir;
  std::ostream& out;
};

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    v.push_back(parse_number<double>(key, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return v;
}

// first:last:step
std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  auto parts = std::vector<std::string>{};
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {parse_number<double>(key, parts[0])};
  if (parts.size() != 3) throw Error(ErrorKind::ParseError, key, "expected first:last:step");
  const double first = parse_number<double>(key, parts[0]);
  const double last = parse_number<double>(key, parts[1]);
  const double step = parse_number<double>(key, parts[2]);
  // Rebuild from integer multiples so 0:0.9:0.1 yields exactly 0.1, 0.2, ...
  auto g = make_grid(0.0, (last - first) / step, 1.0);
  for (auto& x : g) x = first + x * step;
  return g;
}

ObjectiveKind objective_flag(const std::string& text) {
  auto k = parse_objective(text);
  if (!k) throw Error(ErrorKind::OutOfRange, "--objective", "unknown objective '" + text + "'");
  return *k;
}

double small_cell_bias_db(const ScenarioConfig& s) {
  for (const auto& t : s.tiers) {
    if (!t.is_macro) return linear_to_db(t.bias);
  }
  return 0.0;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, path.string(), "cannot write output file");
  return f;
}

void emit_summary(Context& ctx, const std::vector<SummaryRow>& rows) {
  auto f = open_output(ctx.out_dir / "summary.csv");
  write_summary_csv(f, rows);
  for (const auto& r : rows) ctx.out << summary_line(r) << '\n';
}

void add_sweep_rows(std::vector<SummaryRow>& rows, const std::string& experiment, const SweepResult& sweep,
                    ObjectiveKind objective) {
  const auto& best = sweep.best();
  rows.push_back({experiment, "biased", best.bias_db, best.eta, objective, best.value, true});
}

void cmd_run(Context& ctx, const CommonFlags& flags) {
  auto policy = parse_policy(flags.policy);
  if (!policy) throw Error(ErrorKind::OutOfRange, "--policy", "unknown policy '" + flags.policy + "'");
  const auto objective = objective_flag(flags.objective);
  const auto& s = ctx.cfg.scenario;
  auto result = run_ensemble(s, *policy, ctx.cfg.realizations, ctx.cfg.seed, ctx.options);

  auto f = open_output(ctx.out_dir / "samples.csv");
  f << kSamplesHeader << '\n';
  const double bias_db = *policy == Policy::Biased ? small_cell_bias_db(s) : 0.0;
  append_samples_csv(f, to_string(*policy), bias_db, s.blanking.effective_eta(), s.blanking.variant, result.samples);

  emit_summary(ctx, {{"run", std::string(to_string(*policy)), bias_db, s.blanking.effective_eta(), objective,
                      objective_value(result.rates, objective), false}});
}

void cmd_sweep_bias(Context& ctx, const CommonFlags& flags) {
  const auto objective = objective_flag(flags.objective);
  const auto grid = parse_grid("--bias-grid", flags.bias_grid);
  auto sweep = sweep_bias(ctx.cfg.scenario, grid, objective, ctx.cfg.realizations, ctx.cfg.seed, ctx.options);
  auto f = open_output(ctx.out_dir / "sweep.csv");
  write_sweep_csv(f, sweep);
  std::vector<SummaryRow> rows;
  add_sweep_rows(rows, "sweep-bias", sweep, objective);
  emit_summary(ctx, rows);
}

BlankingVariant variant_flag(const CommonFlags& flags, const ScenarioConfig& s) {
  if (flags.variant.empty()) {
    return s.blanking.variant == BlankingVariant::Off ? BlankingVariant::ReOnlyInBlank : s.blanking.variant;
  }
  auto v = parse_blanking_variant(flags.variant);
  if (!v || *v == BlankingVariant::Off) {
    throw Error(ErrorKind::OutOfRange, "--variant", "expected re-only-in-blank or all-subframes");
  }
  return *v;
}

void cmd_sweep_blanking(Context& ctx, const CommonFlags& flags) {
  const auto objective = objective_flag(flags.objective);
  const auto bias = parse_grid("--bias-grid", flags.bias_grid);
  const auto eta = parse_grid("--eta-grid", flags.eta_grid);
  const auto variant = variant_flag(flags, ctx.cfg.scenario);
  auto sweep = sweep_blanking(ctx.cfg.scenario, bias, eta, variant, objective, ctx.cfg.realizations, ctx.cfg.seed,
                              ctx.options);
  auto f = open_output(ctx.out_dir / "sweep.csv");
  write_sweep_csv(f, sweep);
  std::vector<SummaryRow> rows;
  add_sweep_rows(rows, "sweep-blanking", sweep, objective);
  for (const auto& p : sweep.per_eta_best) {
    rows.push_back({"sweep-blanking-eta", "biased", p.bias_db, p.eta, objective, p.value, false});
  }
  emit_summary(ctx, rows);
}

std::vector<SummaryRow> trend_rows(const std::string& prefix, const std::vector<TrendPoint>& trend,
                                   ObjectiveKind objective) {
  std::vector<SummaryRow> rows;
  for (const auto& p : trend) {
    rows.push_back({prefix + "-ratio-" + format_sig6(p.ratio), "biased", p.bias_db, p.eta.value_or(0.0), objective,
                    p.value, true});
  }
  return rows;
}

void cmd_trend(Context& ctx, const CommonFlags& flags) {
  const auto objective = objective_flag(flags.objective);
  auto mode = parse_trend_mode(flags.mode);
  if (!mode) throw Error(ErrorKind::OutOfRange, "--mode", "unknown mode '" + flags.mode + "'");
  const auto ratios = parse_list("--ratios", flags.ratios);
  const auto bias = parse_grid("--bias-grid", flags.bias_grid);
  const auto eta = parse_grid("--eta-grid", flags.eta_grid);
  auto scenario = ctx.cfg.scenario;
  if (*mode == TrendMode::InBandBlank && !flags.variant.empty()) scenario.blanking.variant = variant_flag(flags, scenario);
  auto trend = density_trend(scenario, ratios, *mode, objective, ctx.cfg.realizations, ctx.cfg.seed, ctx.options,
                             bias, eta);
  emit_summary(ctx, trend_rows("trend-" + std::string(to_string(*mode)), trend, objective));
}

void write_sweep_file(Context& ctx, const std::string& name, const SweepResult& sweep) {
  auto f = open_output(ctx.out_dir / name);
  write_sweep_csv(f, sweep);
}

void preset_fig2(Context& ctx) {
  const auto s = reference_scenario();
  const auto grid = default_bias_grid_db();
  auto sweep = sweep_bias(s, grid, ObjectiveKind::Pct5, ctx.cfg.realizations, ctx.cfg.seed, ctx.options);
  auto biased = s;
  set_small_cell_bias_db(biased, sweep.best().bias_db);

  auto f = open_output(ctx.out_dir / "samples.csv");
  f << kSamplesHeader << '\n';
  std::vector<SummaryRow> rows;
  for (auto policy : {Policy::MaxPower, Policy::MaxSinr, Policy::Biased, Policy::LoadAware}) {
    const auto& sc = policy == Policy::Biased ? biased : s;
    auto result = run_ensemble(sc, policy, ctx.cfg.realizations, ctx.cfg.seed, ctx.options);
    const double bias_db = policy == Policy::Biased ? sweep.best().bias_db : 0.0;
    append_samples_csv(f, to_string(policy), bias_db, 0.0, BlankingVariant::Off, result.samples);
    for (auto k : {ObjectiveKind::Pct5, ObjectiveKind::Pct50}) {
      rows.push_back({"fig2", std::string(to_string(policy)), bias_db, 0.0, k, objective_value(result.rates, k),
                      false});
    }
  }
  emit_summary(ctx, rows);
}

void preset_fig3(Context& ctx) {
  const auto base = out_of_band_scenario();
  std::vector<SummaryRow> rows;
  for (double ratio : {2.0, 5.0, 10.0}) {
    const auto s = trend_scenario(base, ratio, TrendMode::OutOfBand);
    auto sweep = sweep_bias(s, default_bias_grid_db(), ObjectiveKind::Pct5, ctx.cfg.realizations, ctx.cfg.seed,
                            ctx.options);
    write_sweep_file(ctx, "sweep_ratio_" + format_sig6(ratio) + ".csv", sweep);
    add_sweep_rows(rows, "fig3-ratio-" + format_sig6(ratio), sweep, ObjectiveKind::Pct5);
  }
  emit_summary(ctx, rows);
}

void preset_fig5(Context& ctx) {
  auto sweep = sweep_blanking(reference_scenario(), default_bias_grid_db(), default_eta_grid(),
                              BlankingVariant::ReOnlyInBlank, ObjectiveKind::Pct50, ctx.cfg.realizations,
                              ctx.cfg.seed, ctx.options);
  write_sweep_file(ctx, "sweep.csv", sweep);
  std::vector<SummaryRow> rows;
  add_sweep_rows(rows, "fig5", sweep, ObjectiveKind::Pct50);
  for (const auto& p : sweep.per_eta_best) {
    rows.push_back({"fig5-eta", "biased", p.bias_db, p.eta, ObjectiveKind::Pct50, p.value, false});
  }
  emit_summary(ctx, rows);
}

void preset_fig6(Context& ctx) {
  auto s = reference_scenario();
  s.blanking.variant = BlankingVariant::AllSubframes;
  const std::vector<double> ratios{2.0, 4.0, 6.0, 8.0, 10.0};
  auto trend = density_trend(s, ratios, TrendMode::InBandBlank, ObjectiveKind::Pct50, ctx.cfg.realizations,
                             ctx.cfg.seed, ctx.options);
  emit_summary(ctx, trend_rows("fig6", trend, ObjectiveKind::Pct50));
}

void preset_table1(Context& ctx) {
  const auto grid = default_bias_grid_db();
  const int r = ctx.cfg.realizations;
  const auto seed = ctx.cfg.seed;
  std::vector<SummaryRow> rows;

  auto in_band = sweep_bias(reference_scenario(), grid, ObjectiveKind::Pct50, r, seed, ctx.options);
  write_sweep_file(ctx, "sweep_in_band.csv", in_band);
  add_sweep_rows(rows, "in-band", in_band, ObjectiveKind::Pct50);

  auto blank = sweep_blanking(reference_scenario(), grid, default_eta_grid(), BlankingVariant::ReOnlyInBlank,
                              ObjectiveKind::Pct50, r, seed, ctx.options);
  write_sweep_file(ctx, "sweep_in_band_blank.csv", blank);
  add_sweep_rows(rows, "in-band-blank", blank, ObjectiveKind::Pct50);

  auto oob = sweep_bias(out_of_band_scenario(), grid, ObjectiveKind::Pct5, r, seed, ctx.options);
  write_sweep_file(ctx, "sweep_out_of_band.csv", oob);
  add_sweep_rows(rows, "out-of-band", oob, ObjectiveKind::Pct5);

  emit_summary(ctx, rows);
}

void cmd_preset(Context& ctx, const CommonFlags& flags) {
  const auto& name = flags.preset;
  if (name == "fig2") return preset_fig2(ctx);
  if (name == "fig3") return preset_fig3(ctx);
  if (name == "fig5") return preset_fig5(ctx);
  if (name == "fig6") return preset_fig6(ctx);
  if (name == "table1") return preset_table1(ctx);
  throw Error(ErrorKind::OutOfRange, "preset", "unknown preset '" + name + "'");
}

unsigned resolve_workers(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("HETNET_LB_WORKERS")) {
    const std::string text(env);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0) {
      throw Error(ErrorKind::OutOfRange, "HETNET_LB_WORKERS", "expected a positive integer");
    }
    return v;
  }
  return 1;
}

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::MissingField:
    case ErrorKind::UnknownKey:
    case ErrorKind::BadReference:
    case ErrorKind::OutOfRange:
    case ErrorKind::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Load balancing experiments for heterogeneous cellular networks", "hetnet-lb"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "Scenario config file (default: built-in reference scenario)");
    sub->add_option("--out", flags.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", flags.seed, "Master seed")->each([&flags](const std::string&) { flags.seed_set = true; });
    sub->add_option("--realizations", flags.realizations, "Monte Carlo realizations")->check(CLI::PositiveNumber);
    sub->add_option("--workers", flags.workers, "Worker threads (env HETNET_LB_WORKERS)")->check(CLI::PositiveNumber);
  };
  auto objective = [&flags](CLI::App* sub) {
    sub->add_option("--objective", flags.objective, "pct5 | pct50 | meanlog")->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Run one ensemble and write samples.csv");
  common(run);
  objective(run);
  run->add_option("--policy", flags.policy, "max-power | max-sinr | biased | load-aware")->capture_default_str();

  auto* sweep_b = app.add_subcommand("sweep-bias", "Sweep the small-cell bias");
  common(sweep_b);
  objective(sweep_b);
  sweep_b->add_option("--bias-grid", flags.bias_grid, "first:last:step in dB")->capture_default_str();

  auto* sweep_e = app.add_subcommand("sweep-blanking", "Joint sweep of bias and blanking fraction");
  common(sweep_e);
  objective(sweep_e);
  sweep_e->add_option("--bias-grid", flags.bias_grid, "first:last:step in dB")->capture_default_str();
  sweep_e->add_option("--eta-grid", flags.eta_grid, "first:last:step")->capture_default_str();
  sweep_e->add_option("--variant", flags.variant, "re-only-in-blank | all-subframes");

  auto* trend = app.add_subcommand("trend", "Optimal bias as the small-cell density grows");
  common(trend);
  objective(trend);
  trend->add_option("--mode", flags.mode, "in-band | in-band-blank | out-of-band")->capture_default_str();
  trend->add_option("--ratios", flags.ratios, "Comma separated small-cell/macro density ratios")->capture_default_str();
  trend->add_option("--bias-grid", flags.bias_grid, "first:last:step in dB")->capture_default_str();
  trend->add_option("--eta-grid", flags.eta_grid, "first:last:step")->capture_default_str();
  trend->add_option("--variant", flags.variant, "re-only-in-blank | all-subframes");

  auto* preset = app.add_subcommand("preset", "Built-in experiments: fig2 fig3 fig5 fig6 table1");
  common(preset);
  preset->add_option("name", flags.preset, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (preset->parsed()) {
      static constexpr std::string_view kPresets[] = {"fig2", "fig3", "fig5", "fig6", "table1"};
      if (std::find(std::begin(kPresets), std::end(kPresets), flags.preset) == std::end(kPresets)) {
        err << "error: unknown preset '" << flags.preset << "'\n";
        return kExitUsage;
      }
    }
    Context ctx{{}, {}, flags.out_dir, out};
    if (!flags.config_path.empty()) {
      ctx.cfg = load_experiment(read_raw_config(flags.config_path));
    } else {
      ctx.cfg.scenario = reference_scenario();
    }
    if (flags.seed_set) ctx.cfg.seed = flags.seed;
    if (flags.realizations > 0) ctx.cfg.realizations = flags.realizations;
    ctx.options.workers = resolve_workers(flags.workers);
    ctx.options.solver = ctx.cfg.solver;
    ctx.options.max_candidates = ctx.cfg.max_candidates;

    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec || !std::filesystem::is_directory(ctx.out_dir)) {
      throw Error(ErrorKind::Io, ctx.out_dir.string(), "output directory is not writable");
    }

    if (run->parsed()) cmd_run(ctx, flags);
    if (sweep_b->parsed()) cmd_sweep_bias(ctx, flags);
    if (sweep_e->parsed()) cmd_sweep_blanking(ctx, flags);
    if (trend->parsed()) cmd_trend(ctx, flags);
    if (preset->parsed()) cmd_preset(ctx, flags);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e.kind()) ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace hetnet
