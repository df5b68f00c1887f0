#include "hetnet/sched.hpp"

#include <cmath>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

LoadState compute_loads(const Association& association, const LinkTable& table) {
  if (association.serving.size() != table.user_count()) {
    throw Error(ErrorKind::OutOfRange, "association", "user count differs from the link table");
  }
  LoadState s;
  s.k_total.assign(table.bs_count(), 0);
  s.k_re.assign(table.bs_count(), 0);
  s.range_expanded.assign(table.user_count(), false);
  for (std::size_t u = 0; u < table.user_count(); ++u) {
    const auto b = association.serving[u];
    ++s.k_total[b];
    if (!table.bs(b).is_macro && table.bs(table.strongest_bs(u)).is_macro) {
      s.range_expanded[u] = true;
      ++s.k_re[b];
    }
  }
  return s;
}

namespace {

double spectral_efficiency(double sinr_value, double floor_linear) {
  if (sinr_value < floor_linear) return 0.0;
  return std::log2(1.0 + sinr_value);
}

}  // namespace

RateSample user_rate(std::size_t user, const Association& association, const LoadState& loads,
                     const LinkTable& table, const ScenarioConfig& scenario) {
  const auto b = association.serving[user];
  const auto& info = table.bs(b);
  const double bandwidth = table.bandwidth_hz(info.band_index);
  const double floor = scenario.amc_floor_db ? db_to_linear(*scenario.amc_floor_db) : 0.0;
  const double eta = scenario.blanking.effective_eta();

  RateSample r;
  r.user = user;
  r.tier_id = info.tier_id;
  r.range_expanded = loads.range_expanded[user];

  const double k_total = loads.k_total[b];
  r.sinr_full = sinr(table, user, b, SinrMode::Full);
  const double se_full = spectral_efficiency(r.sinr_full, floor);

  if (eta <= 0.0) {
    r.normal_share = 1.0 / k_total;
    r.rate_bps = bandwidth * r.normal_share * se_full;
    return r;
  }
  if (info.is_macro) {
    r.normal_share = (1.0 - eta) / k_total;
    r.rate_bps = bandwidth * r.normal_share * se_full;
    return r;
  }

  const double se_blank = spectral_efficiency(sinr(table, user, b, SinrMode::MacroBlanked), floor);
  if (scenario.blanking.variant == BlankingVariant::ReOnlyInBlank) {
    if (r.range_expanded) {
      r.blank_share = eta / loads.k_re[b];
      r.rate_bps = bandwidth * r.blank_share * se_blank;
    } else {
      r.normal_share = (1.0 - eta) / loads.k_nre(b);
      r.rate_bps = bandwidth * r.normal_share * se_full;
    }
    return r;
  }
  r.normal_share = (1.0 - eta) / k_total;
  r.blank_share = eta / k_total;
  r.rate_bps = bandwidth * (r.normal_share * se_full + r.blank_share * se_blank);
  return r;
}

std::vector<RateSample> user_rates(const Association& association, const LoadState& loads, const LinkTable& table,
                                   const ScenarioConfig& scenario) {
  std::vector<RateSample> out;
  out.reserve(table.user_count());
  for (std::size_t u = 0; u < table.user_count(); ++u) out.push_back(user_rate(u, association, loads, table, scenario));
  return out;
}

}  // namespace hetnet
