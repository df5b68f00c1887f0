#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hetnet/assoc.hpp"
#include "hetnet/radio.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

struct LoadState {
  std::vector<std::uint32_t> k_total;  // per BS
  std::vector<std::uint32_t> k_re;     // range-expanded users per BS
  std::vector<bool> range_expanded;    // per user

  std::uint32_t k_nre(std::size_t bs) const { return k_total[bs] - k_re[bs]; }
};

// A user is range-expanded when a non-macro station serves it although its
// strongest unbiased link comes from a macro.
LoadState compute_loads(const Association& association, const LinkTable& table);

struct RateSample {
  std::size_t realization = 0;
  std::size_t user = 0;
  double rate_bps = 0.0;
  int tier_id = 0;
  bool range_expanded = false;
  double sinr_full = 0.0;  // of the serving link
  // Fractions of total airtime the user holds in normal and muted subframes.
  double normal_share = 0.0;
  double blank_share = 0.0;
};

// Round-robin long-term rate. With blanking active (eta > 0) macros serve in
// the (1 - eta) normal fraction only; small cells split their users per the
// blanking variant. Spectral efficiencies below the AMC floor count as 0.
RateSample user_rate(std::size_t user, const Association& association, const LoadState& loads,
                     const LinkTable& table, const ScenarioConfig& scenario);

std::vector<RateSample> user_rates(const Association& association, const LoadState& loads, const LinkTable& table,
                                   const ScenarioConfig& scenario);

}  // namespace hetnet
