#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hetnet {

double db_to_linear(double db);
double linear_to_db(double ratio);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

struct BandConfig {
  int band_id = 1;
  double bandwidth_hz = 10e6;
  double noise_mw = 0.0;  // total over the band

  bool operator==(const BandConfig&) const = default;
};

struct TierConfig {
  int tier_id = 1;
  double density_per_km2 = 0.0;
  double tx_power_mw = 1.0;
  double bias = 1.0;  // linear
  int band_id = 1;
  bool is_macro = false;

  bool operator==(const TierConfig&) const = default;
};

enum class BlankingVariant { Off, ReOnlyInBlank, AllSubframes };

std::string_view to_string(BlankingVariant variant);
std::optional<BlankingVariant> parse_blanking_variant(std::string_view name);

struct BlankingConfig {
  double eta = 0.0;
  BlankingVariant variant = BlankingVariant::Off;

  // Fraction of muted macro subframes actually in force.
  double effective_eta() const { return variant == BlankingVariant::Off ? 0.0 : eta; }
  // Blanking only changes the rate model when some subframes are muted.
  bool active() const { return effective_eta() > 0.0; }

  bool operator==(const BlankingConfig&) const = default;
};

inline constexpr double kDefaultAmcFloorDb = -6.5;

struct ScenarioConfig {
  double region_side_km = 10.0;
  std::vector<TierConfig> tiers;
  std::vector<BandConfig> bands;
  double user_density_per_km2 = 0.0;
  double pathloss_exponent = 3.5;
  double min_distance_m = 1.0;
  BlankingConfig blanking;
  std::optional<double> amc_floor_db;
  bool full_buffer_interference = true;

  double area_km2() const { return region_side_km * region_side_km; }
  std::size_t band_index(int band_id) const;
  std::size_t tier_index(int tier_id) const;
  const BandConfig& band_of(const TierConfig& tier) const;
  // Index of the first macro tier, if any.
  std::optional<std::size_t> macro_tier() const;

  bool operator==(const ScenarioConfig&) const = default;
};

// Sectioned key-value text: `[section]` headers, `key = value` lines and
// `#` comments. Entries keep file order.
struct RawConfig {
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    std::vector<Entry> entries;
    int line = 0;

    const Entry* find(std::string_view key) const;
  };
  std::vector<Section> sections;

  const Section* find(std::string_view name) const;
};

RawConfig parse_raw_config(std::string_view text);
RawConfig read_raw_config(const std::string& path);

// Resolves units (dB, dBm, MHz, ...) and checks every scenario invariant.
// Sections other than the scenario ones ([solver], [mc]) are ignored here.
ScenarioConfig validate(const RawConfig& raw);

// Checks the invariants of an already resolved scenario; throws hetnet::Error.
void check_invariants(const ScenarioConfig& scenario);

// Writes a scenario back in the config format, in linear units so that
// validate(parse_raw_config(serialize(s))) == s exactly.
std::string serialize(const ScenarioConfig& scenario);

// Two-tier co-channel deployment: macro 1/km2 at 46 dBm, small cells 5/km2
// at 23 dBm, one 10 MHz band with -95 dBm noise, 30 users/km2, 10 km torus.
ScenarioConfig reference_scenario();
// Same deployment with the small-cell tier moved to its own 20 MHz band.
ScenarioConfig out_of_band_scenario();

// Helpers for experiment drivers.
void set_small_cell_bias_db(ScenarioConfig& scenario, double bias_db);
void set_small_cell_density_ratio(ScenarioConfig& scenario, double ratio);

}  // namespace hetnet
