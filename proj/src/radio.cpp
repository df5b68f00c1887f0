#include "hetnet/radio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetnet/error.hpp"

namespace hetnet {

double received_power(double tx_power_mw, double distance_km, const PathlossModel& model) {
  const double d_m = std::max(distance_km * 1000.0, model.min_distance_m);
  return tx_power_mw * std::pow(d_m, -model.exponent);
}

double LinkTable::received_power(std::size_t user, std::size_t bs) const {
  if (!power_.empty()) return power_[user * bs_.size() + bs];
  const auto t = bs_[bs].tier_index;
  if (tier_best_[user * tiers_ + t] == static_cast<std::int32_t>(bs)) return tier_best_power_[user * tiers_ + t];
  throw Error(ErrorKind::OutOfRange, "link(" + std::to_string(user) + "," + std::to_string(bs) + ")",
              "link table was compacted and keeps only the strongest link per tier");
}

std::optional<std::size_t> LinkTable::strongest_in_tier(std::size_t user, std::size_t tier_index) const {
  const auto b = tier_best_[user * tiers_ + tier_index];
  if (b < 0) return std::nullopt;
  return static_cast<std::size_t>(b);
}

std::size_t LinkTable::strongest_bs(std::size_t user) const {
  std::int32_t best = -1;
  double best_power = -1.0;
  for (std::size_t t = 0; t < tiers_; ++t) {
    const auto b = tier_best_[user * tiers_ + t];
    if (b < 0) continue;
    const double p = tier_best_power_[user * tiers_ + t];
    if (p > best_power || (p == best_power && b < best)) {
      best = b;
      best_power = p;
    }
  }
  return static_cast<std::size_t>(best);
}

void LinkTable::compact() {
  power_.clear();
  power_.shrink_to_fit();
}

void LinkTable::rebuild_aggregates(const std::vector<bool>* active) {
  const auto nb = bs_.size();
  const auto nbands = band_count();
  total_.assign(users_ * nbands, 0.0);
  macro_.assign(users_ * nbands, 0.0);
  tier_best_.assign(users_ * tiers_, -1);
  tier_best_power_.assign(users_ * tiers_, 0.0);
  for (std::size_t u = 0; u < users_; ++u) {
    const double* row = power_.data() + u * nb;
    double* total = total_.data() + u * nbands;
    double* macro = macro_.data() + u * nbands;
    std::int32_t* best = tier_best_.data() + u * tiers_;
    double* best_power = tier_best_power_.data() + u * tiers_;
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& info = bs_[b];
      const double p = row[b];
      if (p > best_power[info.tier_index] || best[info.tier_index] < 0) {
        best[info.tier_index] = static_cast<std::int32_t>(b);
        best_power[info.tier_index] = p;
      }
      if (active && !(*active)[b]) continue;
      total[info.band_index] += p;
      if (info.is_macro) macro[info.band_index] += p;
    }
  }
}

LinkTable LinkTable::with_active_interferers(const std::vector<bool>& active) const {
  if (power_.empty() && users_ > 0 && !bs_.empty()) {
    throw Error(ErrorKind::OutOfRange, "link table", "interference rebuild needs the dense power matrix");
  }
  LinkTable copy = *this;
  copy.rebuild_aggregates(&active);
  return copy;
}

LinkTable build_link_table(const NetworkRealization& realization, const ScenarioConfig& scenario,
                           const LinkOptions& options) {
  LinkTable table;
  table.users_ = realization.users.size();
  table.tiers_ = scenario.tiers.size();
  for (const auto& band : scenario.bands) {
    table.bandwidth_hz_.push_back(band.bandwidth_hz);
    table.noise_mw_.push_back(band.noise_mw);
  }
  std::vector<double> tx;
  table.bs_.reserve(realization.base_stations.size());
  for (const auto& bs : realization.base_stations) {
    const auto t = scenario.tier_index(bs.tier_id);
    const auto& tier = scenario.tiers[t];
    table.bs_.push_back({tier.tier_id, t, scenario.band_index(tier.band_id), tier.is_macro});
    tx.push_back(tier.tx_power_mw);
  }

  // Squared distances avoid a sqrt per link: P = tx * (d^2)^(-alpha/2).
  const double side = realization.region_side_km;
  const double half_exp = -0.5 * scenario.pathloss_exponent;
  const double min_d2 = scenario.min_distance_m * scenario.min_distance_m;
  const auto nb = table.bs_.size();
  table.power_.resize(table.users_ * nb);
  for (std::size_t u = 0; u < table.users_; ++u) {
    const auto& up = realization.users[u];
    double* row = table.power_.data() + u * nb;
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& bp = realization.base_stations[b].position;
      double dx = std::abs(up.x_km - bp.x_km);
      double dy = std::abs(up.y_km - bp.y_km);
      dx = std::min(dx, side - dx) * 1000.0;
      dy = std::min(dy, side - dy) * 1000.0;
      const double d2 = std::max(dx * dx + dy * dy, min_d2);
      row[b] = tx[b] * std::pow(d2, half_exp);
    }
    if (options.fading) {
      for (std::size_t b = 0; b < nb; ++b) row[b] *= options.fading(u, b);
    }
  }
  table.rebuild_aggregates(nullptr);
  return table;
}

double sinr(const LinkTable& table, std::size_t user, std::size_t bs, SinrMode mode) {
  const auto& info = table.bs(bs);
  const double p = table.received_power(user, bs);
  double others = table.total_received(user, info.band_index) - p;
  if (mode == SinrMode::MacroBlanked) {
    if (info.is_macro) {
      throw Error(ErrorKind::InvalidMode, "bs " + std::to_string(bs), "a muted macro cannot serve");
    }
    others -= table.macro_received(user, info.band_index);
  }
  const double denom = std::max(others, 0.0) + table.noise_mw(info.band_index);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return p / denom;
}

}  // namespace hetnet
