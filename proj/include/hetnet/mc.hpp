#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hetnet/loadopt.hpp"
#include "hetnet/netgen.hpp"
#include "hetnet/scenario.hpp"
#include "hetnet/sched.hpp"
#include "hetnet/stats.hpp"

namespace hetnet {

enum class Policy { MaxPower, MaxSinr, Biased, LoadAware };
enum class ObjectiveKind { Pct5, Pct50, MeanLog };

std::string_view to_string(Policy policy);
std::optional<Policy> parse_policy(std::string_view name);
std::string_view to_string(ObjectiveKind kind);
std::optional<ObjectiveKind> parse_objective(std::string_view name);

// Pct5/Pct50 use nearest-rank percentiles; MeanLog skips zero-rate samples.
double objective_value(const RateStats& stats, ObjectiveKind kind);

struct McOptions {
  unsigned workers = 1;
  SolverParams solver;
  // Links kept per user in the load-aware rate matrix (0 keeps all).
  std::size_t max_candidates = 10;
};

// Association, loads and rates for one realization. With
// full_buffer_interference off, stations without users are dropped from the
// interference aggregates once after association.
std::vector<RateSample> evaluate_realization(const LinkTable& table, const ScenarioConfig& scenario, Policy policy,
                                             const McOptions& options = {});

struct EnsembleResult {
  std::vector<RateSample> samples;  // realization order, then user order
  RateStats rates;
};

// Realization r uses seed derive_seed(master_seed, r); the result does not
// depend on the worker count.
EnsembleResult run_ensemble(const ScenarioConfig& scenario, Policy policy, int realizations,
                            std::uint64_t master_seed, const McOptions& options = {});

struct SweepPoint {
  double bias_db = 0.0;
  double eta = 0.0;
  double value = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // eta-major, bias-minor
  std::size_t argmax = 0;          // first maximum in grid order
  std::size_t samples_per_point = 0;
  std::vector<SweepPoint> per_eta_best;  // bias argmax for each eta

  const SweepPoint& best() const { return points[argmax]; }
};

std::vector<double> default_bias_grid_db();  // 0..30 dB, 1 dB steps
std::vector<double> default_eta_grid();      // 0..0.9, 0.1 steps
std::vector<double> make_grid(double first, double last, double step);

// Biased association with every small-cell tier at each grid bias. All grid
// points reuse the same realizations (common random numbers).
SweepResult sweep_bias(const ScenarioConfig& scenario, std::span<const double> bias_grid_db, ObjectiveKind objective,
                       int realizations, std::uint64_t master_seed, const McOptions& options = {});

// Two-dimensional (bias, eta) sweep for one blanking variant.
SweepResult sweep_blanking(const ScenarioConfig& scenario, std::span<const double> bias_grid_db,
                           std::span<const double> eta_grid, BlankingVariant variant, ObjectiveKind objective,
                           int realizations, std::uint64_t master_seed, const McOptions& options = {});

// Same sweeps over caller-supplied realizations.
SweepResult sweep_blanking_over(const ScenarioConfig& scenario, std::span<const NetworkRealization> realizations,
                                std::span<const double> bias_grid_db, std::span<const double> eta_grid,
                                BlankingVariant variant, ObjectiveKind objective, const McOptions& options = {});

enum class TrendMode { InBand, InBandBlank, OutOfBand };

std::string_view to_string(TrendMode mode);
std::optional<TrendMode> parse_trend_mode(std::string_view name);

struct TrendPoint {
  double ratio = 0.0;
  double bias_db = 0.0;
  std::optional<double> eta;
  double value = 0.0;
};

// Scenario used by density_trend for one ratio: small-cell density set to
// ratio x macro density and small tiers moved to the macro band (in-band) or
// to the first other band (out-of-band).
ScenarioConfig trend_scenario(const ScenarioConfig& scenario, double ratio, TrendMode mode);

std::vector<TrendPoint> density_trend(const ScenarioConfig& scenario, std::span<const double> ratios, TrendMode mode,
                                      ObjectiveKind objective, int realizations, std::uint64_t master_seed,
                                      const McOptions& options = {},
                                      std::span<const double> bias_grid_db = {},
                                      std::span<const double> eta_grid = {});

}  // namespace hetnet
