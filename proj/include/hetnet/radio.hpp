#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hetnet/netgen.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

struct PathlossModel {
  double exponent = 3.5;
  double min_distance_m = 1.0;
};

// tx_power * max(d, min_distance)^-exponent with d in metres.
double received_power(double tx_power_mw, double distance_km, const PathlossModel& model);

enum class SinrMode { Full, MacroBlanked };

struct BsInfo {
  int tier_id = 0;
  std::size_t tier_index = 0;
  std::size_t band_index = 0;
  bool is_macro = false;
};

struct LinkOptions {
  // Multiplicative per-link gain (e.g. i.i.d. fading). Unset means 1.
  std::function<double(std::size_t user, std::size_t bs)> fading;
};

// Received powers of every user from every base station plus per-band
// aggregates. The dense power matrix can be dropped with compact(); the
// per-tier strongest links and the aggregates are always kept, which is all
// the max-power, biased and max-SINR policies need.
class LinkTable {
 public:
  LinkTable() = default;

  std::size_t user_count() const { return users_; }
  std::size_t bs_count() const { return bs_.size(); }
  std::size_t tier_count() const { return tiers_; }
  std::size_t band_count() const { return bandwidth_hz_.size(); }

  const BsInfo& bs(std::size_t b) const { return bs_[b]; }
  const std::vector<BsInfo>& base_stations() const { return bs_; }
  double bandwidth_hz(std::size_t band) const { return bandwidth_hz_[band]; }
  double noise_mw(std::size_t band) const { return noise_mw_[band]; }

  bool has_dense() const { return !power_.empty() || users_ == 0 || bs_.empty(); }
  double received_power(std::size_t user, std::size_t bs) const;
  double total_received(std::size_t user, std::size_t band) const { return total_[user * band_count() + band]; }
  double macro_received(std::size_t user, std::size_t band) const { return macro_[user * band_count() + band]; }

  // Strongest base station of a tier for this user (lowest index on ties).
  std::optional<std::size_t> strongest_in_tier(std::size_t user, std::size_t tier_index) const;
  double strongest_power_in_tier(std::size_t user, std::size_t tier_index) const {
    return tier_best_power_[user * tiers_ + tier_index];
  }
  // Unbiased max-received-power base station.
  std::size_t strongest_bs(std::size_t user) const;

  void compact();

  // Aggregates recomputed so only base stations flagged in `active` interfere.
  LinkTable with_active_interferers(const std::vector<bool>& active) const;

 private:
  friend LinkTable build_link_table(const NetworkRealization&, const ScenarioConfig&, const LinkOptions&);
  void rebuild_aggregates(const std::vector<bool>* active);

  std::size_t users_ = 0;
  std::size_t tiers_ = 0;
  std::vector<BsInfo> bs_;
  std::vector<double> bandwidth_hz_;
  std::vector<double> noise_mw_;
  std::vector<double> power_;  // users x bs, row-major
  std::vector<double> total_;  // users x bands
  std::vector<double> macro_;  // users x bands
  std::vector<std::int32_t> tier_best_;  // users x tiers, -1 when the tier is empty
  std::vector<double> tier_best_power_;
};

LinkTable build_link_table(const NetworkRealization& realization, const ScenarioConfig& scenario,
                           const LinkOptions& options = {});

// Full: P / (total - P + noise). MacroBlanked drops the macro aggregate from
// the denominator; a muted macro cannot serve, so that combination throws
// InvalidMode. A zero denominator gives +inf.
double sinr(const LinkTable& table, std::size_t user, std::size_t bs, SinrMode mode);

}  // namespace hetnet
