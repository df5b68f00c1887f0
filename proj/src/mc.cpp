#include "hetnet/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hetnet/error.hpp"
#include "hetnet/parallel.hpp"

namespace hetnet {

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::MaxPower: return "max-power";
    case Policy::MaxSinr: return "max-sinr";
    case Policy::Biased: return "biased";
    case Policy::LoadAware: return "load-aware";
  }
  return "unknown";
}

std::optional<Policy> parse_policy(std::string_view name) {
  for (auto p : {Policy::MaxPower, Policy::MaxSinr, Policy::Biased, Policy::LoadAware}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Pct5: return "pct5";
    case ObjectiveKind::Pct50: return "pct50";
    case ObjectiveKind::MeanLog: return "meanlog";
  }
  return "unknown";
}

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
  for (auto k : {ObjectiveKind::Pct5, ObjectiveKind::Pct50, ObjectiveKind::MeanLog}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string_view to_string(TrendMode mode) {
  switch (mode) {
    case TrendMode::InBand: return "in-band";
    case TrendMode::InBandBlank: return "in-band-blank";
    case TrendMode::OutOfBand: return "out-of-band";
  }
  return "unknown";
}

std::optional<TrendMode> parse_trend_mode(std::string_view name) {
  for (auto m : {TrendMode::InBand, TrendMode::InBandBlank, TrendMode::OutOfBand}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

double objective_value(const RateStats& stats, ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Pct5: return percentile(stats, 5.0);
    case ObjectiveKind::Pct50: return percentile(stats, 50.0);
    case ObjectiveKind::MeanLog: return mean_log_positive(stats).value;
  }
  return 0.0;
}

std::vector<RateSample> evaluate_realization(const LinkTable& table, const ScenarioConfig& scenario, Policy policy,
                                             const McOptions& options) {
  Association association;
  switch (policy) {
    case Policy::MaxPower: association = associate_max_power(table); break;
    case Policy::MaxSinr: association = associate_max_sinr(table); break;
    case Policy::Biased: association = associate_biased(table, tier_biases(scenario)); break;
    case Policy::LoadAware:
      association = solve_load_aware(build_rate_matrix(table, options.max_candidates), options.solver);
      break;
  }
  auto loads = compute_loads(association, table);
  if (scenario.full_buffer_interference) return user_rates(association, loads, table, scenario);

  std::vector<bool> active(table.bs_count());
  for (std::size_t b = 0; b < table.bs_count(); ++b) active[b] = loads.k_total[b] > 0;
  const auto loaded = table.with_active_interferers(active);
  return user_rates(association, loads, loaded, scenario);
}

namespace {

void require_realizations(int realizations) {
  if (realizations < 1) throw Error(ErrorKind::OutOfRange, "mc.realizations", "must be >= 1");
}

std::vector<double> pooled_rates(const std::vector<std::vector<RateSample>>& per_realization) {
  std::vector<double> v;
  for (const auto& rs : per_realization) {
    for (const auto& s : rs) v.push_back(s.rate_bps);
  }
  return v;
}

}  // namespace

EnsembleResult run_ensemble(const ScenarioConfig& scenario, Policy policy, int realizations,
                            std::uint64_t master_seed, const McOptions& options) {
  require_realizations(realizations);
  check_invariants(scenario);
  std::vector<std::vector<RateSample>> parts(static_cast<std::size_t>(realizations));
  parallel_for(parts.size(), options.workers, [&](std::size_t r) {
    const auto net = generate_realization(scenario, derive_seed(master_seed, r));
    const auto table = build_link_table(net, scenario);
    parts[r] = evaluate_realization(table, scenario, policy, options);
    for (auto& s : parts[r]) s.realization = r;
  });
  EnsembleResult result;
  for (auto& p : parts) result.samples.insert(result.samples.end(), p.begin(), p.end());
  result.rates = RateStats(pooled_rates(parts));
  return result;
}

std::vector<double> make_grid(double first, double last, double step) {
  if (!(step > 0.0) || last < first) throw Error(ErrorKind::OutOfRange, "grid", "need step > 0 and last >= first");
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) g.push_back(first + static_cast<double>(i) * step);
  return g;
}

std::vector<double> default_bias_grid_db() { return make_grid(0.0, 30.0, 1.0); }

std::vector<double> default_eta_grid() {
  auto g = make_grid(0.0, 9.0, 1.0);
  for (auto& v : g) v /= 10.0;
  return g;
}

namespace {

// Link tables shared by every grid point of one sweep.
class SweepCache {
 public:
  SweepCache(const ScenarioConfig& scenario, std::vector<NetworkRealization> realizations, unsigned workers)
      : keep_dense_(!scenario.full_buffer_interference) {
    if (keep_dense_) {
      // Interference depends on the association, so tables are rebuilt per point.
      realizations_ = std::move(realizations);
      return;
    }
    tables_.resize(realizations.size());
    parallel_for(realizations.size(), workers, [&](std::size_t r) {
      tables_[r] = build_link_table(realizations[r], scenario);
      tables_[r].compact();
    });
  }

  std::size_t size() const { return keep_dense_ ? realizations_.size() : tables_.size(); }

  template <typename F>
  void for_each(const ScenarioConfig& scenario, F&& f) const {
    for (std::size_t r = 0; r < size(); ++r) {
      if (keep_dense_) {
        f(r, build_link_table(realizations_[r], scenario));
      } else {
        f(r, tables_[r]);
      }
    }
  }

 private:
  bool keep_dense_;
  std::vector<LinkTable> tables_;
  std::vector<NetworkRealization> realizations_;
};

std::vector<NetworkRealization> draw_realizations(const ScenarioConfig& scenario, int realizations,
                                                  std::uint64_t master_seed, unsigned workers) {
  require_realizations(realizations);
  std::vector<NetworkRealization> nets(static_cast<std::size_t>(realizations));
  parallel_for(nets.size(), workers,
               [&](std::size_t r) { nets[r] = generate_realization(scenario, derive_seed(master_seed, r)); });
  return nets;
}

SweepResult run_sweep(const ScenarioConfig& scenario, const SweepCache& cache, std::span<const double> bias_grid_db,
                      std::span<const double> eta_grid, BlankingVariant variant, ObjectiveKind objective,
                      const McOptions& options) {
  if (bias_grid_db.empty() || eta_grid.empty()) throw Error(ErrorKind::OutOfRange, "grid", "grid is empty");
  SweepResult result;
  result.points.resize(bias_grid_db.size() * eta_grid.size());
  std::vector<std::size_t> sample_counts(result.points.size());

  parallel_for(result.points.size(), options.workers, [&](std::size_t i) {
    const double eta = eta_grid[i / bias_grid_db.size()];
    const double bias_db = bias_grid_db[i % bias_grid_db.size()];
    ScenarioConfig point = scenario;
    set_small_cell_bias_db(point, bias_db);
    point.blanking = {eta, variant};
    check_invariants(point);

    std::vector<double> pooled;
    cache.for_each(point, [&](std::size_t, const LinkTable& table) {
      for (const auto& s : evaluate_realization(table, point, Policy::Biased, options)) pooled.push_back(s.rate_bps);
    });
    sample_counts[i] = pooled.size();
    result.points[i] = {bias_db, eta, objective_value(RateStats(std::move(pooled)), objective)};
  });

  result.samples_per_point = sample_counts.front();
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    if (result.points[i].value > result.points[result.argmax].value) result.argmax = i;
  }
  for (std::size_t e = 0; e < eta_grid.size(); ++e) {
    std::size_t best = e * bias_grid_db.size();
    for (std::size_t j = 0; j < bias_grid_db.size(); ++j) {
      const auto i = e * bias_grid_db.size() + j;
      if (result.points[i].value > result.points[best].value) best = i;
    }
    result.per_eta_best.push_back(result.points[best]);
  }
  return result;
}

}  // namespace

SweepResult sweep_bias(const ScenarioConfig& scenario, std::span<const double> bias_grid_db, ObjectiveKind objective,
                       int realizations, std::uint64_t master_seed, const McOptions& options) {
  check_invariants(scenario);
  SweepCache cache(scenario, draw_realizations(scenario, realizations, master_seed, options.workers),
                   options.workers);
  const double eta[] = {scenario.blanking.eta};
  return run_sweep(scenario, cache, bias_grid_db, eta, scenario.blanking.variant, objective, options);
}

SweepResult sweep_blanking(const ScenarioConfig& scenario, std::span<const double> bias_grid_db,
                           std::span<const double> eta_grid, BlankingVariant variant, ObjectiveKind objective,
                           int realizations, std::uint64_t master_seed, const McOptions& options) {
  check_invariants(scenario);
  auto nets = draw_realizations(scenario, realizations, master_seed, options.workers);
  return sweep_blanking_over(scenario, nets, bias_grid_db, eta_grid, variant, objective, options);
}

SweepResult sweep_blanking_over(const ScenarioConfig& scenario, std::span<const NetworkRealization> realizations,
                                std::span<const double> bias_grid_db, std::span<const double> eta_grid,
                                BlankingVariant variant, ObjectiveKind objective, const McOptions& options) {
  if (realizations.empty()) throw Error(ErrorKind::OutOfRange, "mc.realizations", "must be >= 1");
  SweepCache cache(scenario, {realizations.begin(), realizations.end()}, options.workers);
  return run_sweep(scenario, cache, bias_grid_db, eta_grid, variant, objective, options);
}

ScenarioConfig trend_scenario(const ScenarioConfig& scenario, double ratio, TrendMode mode) {
  if (!(ratio > 0.0)) throw Error(ErrorKind::OutOfRange, "ratio", "must be > 0");
  auto macro = scenario.macro_tier();
  if (!macro) throw Error(ErrorKind::BadReference, "tiers", "density trends need a macro tier");
  ScenarioConfig s = scenario;
  set_small_cell_density_ratio(s, ratio);
  const int macro_band = s.tiers[*macro].band_id;
  int small_band = macro_band;
  if (mode == TrendMode::OutOfBand) {
    auto other = std::find_if(s.bands.begin(), s.bands.end(), [&](const BandConfig& b) { return b.band_id != macro_band; });
    if (other == s.bands.end()) throw Error(ErrorKind::BadReference, "bands", "out-of-band mode needs a second band");
    small_band = other->band_id;
  }
  for (auto& t : s.tiers) {
    if (!t.is_macro) t.band_id = small_band;
  }
  if (mode == TrendMode::InBandBlank) {
    if (s.blanking.variant == BlankingVariant::Off) s.blanking.variant = BlankingVariant::ReOnlyInBlank;
  } else {
    s.blanking = {};
  }
  check_invariants(s);
  return s;
}

std::vector<TrendPoint> density_trend(const ScenarioConfig& scenario, std::span<const double> ratios, TrendMode mode,
                                      ObjectiveKind objective, int realizations, std::uint64_t master_seed,
                                      const McOptions& options, std::span<const double> bias_grid_db,
                                      std::span<const double> eta_grid) {
  const auto default_bias = default_bias_grid_db();
  const auto default_eta = default_eta_grid();
  if (bias_grid_db.empty()) bias_grid_db = default_bias;
  if (eta_grid.empty()) eta_grid = default_eta;

  std::vector<TrendPoint> out;
  for (double ratio : ratios) {
    const auto s = trend_scenario(scenario, ratio, mode);
    if (mode == TrendMode::InBandBlank) {
      auto sweep = sweep_blanking(s, bias_grid_db, eta_grid, s.blanking.variant, objective, realizations,
                                  master_seed, options);
      out.push_back({ratio, sweep.best().bias_db, sweep.best().eta, sweep.best().value});
    } else {
      auto sweep = sweep_bias(s, bias_grid_db, objective, realizations, master_seed, options);
      out.push_back({ratio, sweep.best().bias_db, std::nullopt, sweep.best().value});
    }
  }
  return out;
}

}  // namespace hetnet
