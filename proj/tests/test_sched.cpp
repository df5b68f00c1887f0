#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "hetnet/assoc.hpp"
#include "hetnet/sched.hpp"
#include "test_util.hpp"

using namespace hetnet;
using testutil::flat_scenario;
using testutil::stacked;

namespace {

Association on(std::vector<std::size_t> serving) { return {std::move(serving), PolicyTag::Biased}; }

double rate_of(std::size_t u, const Association& a, const LinkTable& t, const ScenarioConfig& s) {
  return user_rate(u, a, compute_loads(a, t), t, s).rate_bps;
}

}  // namespace

TEST_CASE("full share rate") {
  const auto s = flat_scenario({mw_to_dbm(15.0)}, 1.0);
  const auto t1 = build_link_table(stacked({1}, 1), s);
  CHECK(rate_of(0, on({0}), t1, s) == doctest::Approx(40e6).epsilon(1e-12));
  const auto t4 = build_link_table(stacked({1}, 4), s);
  for (std::size_t u = 0; u < 4; ++u) CHECK(rate_of(u, on({0, 0, 0, 0}), t4, s) == doctest::Approx(10e6).epsilon(1e-12));
}

TEST_CASE("all-subframes example") {
  // pico 3 mW serving, macro 2 mW, noise 1 mW: SINR_Full = 1, SINR_MacroBlanked = 3
  auto s = flat_scenario({mw_to_dbm(2.0), mw_to_dbm(3.0)}, 1.0);
  s.blanking = {0.5, BlankingVariant::AllSubframes};
  const auto t = build_link_table(stacked({1, 2}, 1), s);
  CHECK(sinr(t, 0, 1, SinrMode::Full) == doctest::Approx(1.0));
  CHECK(sinr(t, 0, 1, SinrMode::MacroBlanked) == doctest::Approx(3.0));
  CHECK(rate_of(0, on({1}), t, s) == doctest::Approx(15e6).epsilon(1e-12));
}

TEST_CASE("load counting") {
  const auto s = flat_scenario({30, 20});
  const auto t = build_link_table(stacked({1, 2, 2}, 3), s);
  const auto l = compute_loads(on({0, 0, 0}), t);
  CHECK(l.k_total == std::vector<std::uint32_t>{3, 0, 0});
  CHECK(l.k_re == std::vector<std::uint32_t>{0, 0, 0});
  const auto l2 = compute_loads(on({0, 1, 2}), t);
  CHECK(l2.k_re == std::vector<std::uint32_t>{0, 1, 1});
  CHECK(l2.range_expanded == std::vector<bool>{false, true, true});
  CHECK(l2.k_nre(0) == 1);
}

TEST_CASE("unbiased association has no range expansion") {
  std::mt19937_64 rng(83);
  const auto s = reference_scenario();
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = build_link_table(testutil::random_realization(rng, s, 12, 50), s);
    const auto l = compute_loads(associate_biased(t, tier_biases(s)), t);
    for (auto k : l.k_re) CHECK(k == 0);
  }
}

TEST_CASE("range expansion matches a recount") {
  std::mt19937_64 rng(89);
  auto s = reference_scenario();
  set_small_cell_bias_db(s, 12.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = testutil::random_realization(rng, s, 12, 60);
    const auto t = build_link_table(r, s);
    const auto a = associate_biased(t, tier_biases(s));
    const auto l = compute_loads(a, t);
    std::map<std::size_t, std::uint32_t> re;
    const PathlossModel m{s.pathloss_exponent, s.min_distance_m};
    for (std::size_t u = 0; u < r.users.size(); ++u) {
      // unbiased winner recomputed from geometry
      std::size_t best = 0;
      double best_p = -1;
      for (std::size_t b = 0; b < r.base_stations.size(); ++b) {
        const auto& tier = s.tiers[s.tier_index(r.base_stations[b].tier_id)];
        const double p = received_power(tier.tx_power_mw,
                                        torus_distance(r.users[u], r.base_stations[b].position, s.region_side_km), m);
        if (p > best_p) best_p = p, best = b;
      }
      const bool macro_best = r.base_stations[best].tier_id == s.tiers[0].tier_id;
      const bool small_serving = r.base_stations[a.serving[u]].tier_id != s.tiers[0].tier_id;
      if (macro_best && small_serving) ++re[a.serving[u]];
    }
    for (std::size_t b = 0; b < t.bs_count(); ++b) CHECK(l.k_re[b] == (re.count(b) ? re[b] : 0u));
  }
}

TEST_CASE("zero eta equals no blanking exactly") {
  std::mt19937_64 rng(97);
  auto s = reference_scenario();
  set_small_cell_bias_db(s, 15.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = build_link_table(testutil::random_realization(rng, s, 15, 60), s);
    const auto a = associate_biased(t, tier_biases(s));
    const auto l = compute_loads(a, t);
    const auto off = user_rates(a, l, t, s);
    for (auto v : {BlankingVariant::ReOnlyInBlank, BlankingVariant::AllSubframes}) {
      auto sv = s;
      sv.blanking = {0.0, v};
      const auto got = user_rates(a, l, t, sv);
      for (std::size_t u = 0; u < off.size(); ++u) CHECK(got[u].rate_bps == off[u].rate_bps);
    }
  }
}

TEST_CASE("time shares add up per pool") {
  std::mt19937_64 rng(101);
  auto s = reference_scenario();
  set_small_cell_bias_db(s, 14.0);
  for (auto v : {BlankingVariant::ReOnlyInBlank, BlankingVariant::AllSubframes}) {
    for (double eta : {0.0, 0.3, 0.6}) {
      s.blanking = {eta, v};
      const auto t = build_link_table(testutil::random_realization(rng, s, 15, 80), s);
      const auto a = associate_biased(t, tier_biases(s));
      const auto l = compute_loads(a, t);
      const auto rates = user_rates(a, l, t, s);
      std::vector<double> normal(t.bs_count(), 0.0), blank(t.bs_count(), 0.0);
      std::vector<int> n_normal(t.bs_count(), 0), n_blank(t.bs_count(), 0);
      for (std::size_t u = 0; u < rates.size(); ++u) {
        normal[a.serving[u]] += rates[u].normal_share;
        blank[a.serving[u]] += rates[u].blank_share;
        n_normal[a.serving[u]] += rates[u].normal_share > 0;
        n_blank[a.serving[u]] += rates[u].blank_share > 0;
      }
      for (std::size_t b = 0; b < t.bs_count(); ++b) {
        if (n_normal[b]) CHECK(normal[b] == doctest::Approx(1.0 - eta));
        if (n_blank[b]) CHECK(blank[b] == doctest::Approx(eta));
        if (t.bs(b).is_macro) CHECK(n_blank[b] == 0);
      }
    }
  }
}

TEST_CASE("lone range-expanded user rate is linear in eta") {
  // macro stronger, pico serves the user: range expanded
  auto s = flat_scenario({mw_to_dbm(4.0), mw_to_dbm(2.0)}, 0.5);
  const auto t = build_link_table(stacked({1, 2}, 1), s);
  const double blanked = sinr(t, 0, 1, SinrMode::MacroBlanked);
  for (double eta = 0.1; eta < 0.95; eta += 0.1) {
    s.blanking = {eta, BlankingVariant::ReOnlyInBlank};
    const auto r = user_rate(0, on({1}), compute_loads(on({1}), t), t, s);
    CHECK(r.range_expanded);
    CHECK(r.rate_bps == doctest::Approx(eta * 10e6 * std::log2(1.0 + blanked)).epsilon(1e-12));
  }
}

TEST_CASE("macro users only get normal subframes") {
  auto s = flat_scenario({mw_to_dbm(15.0)}, 1.0);
  s.blanking = {0.25, BlankingVariant::AllSubframes};
  const auto t = build_link_table(stacked({1}, 2), s);
  CHECK(rate_of(0, on({0, 0}), t, s) == doctest::Approx(0.75 * 40e6 / 2).epsilon(1e-12));
}

TEST_CASE("amc floor never raises a rate") {
  std::mt19937_64 rng(103);
  auto s = reference_scenario();
  set_small_cell_bias_db(s, 20.0);
  auto floored = s;
  floored.amc_floor_db = kDefaultAmcFloorDb;
  for (auto v : {BlankingVariant::Off, BlankingVariant::ReOnlyInBlank, BlankingVariant::AllSubframes}) {
    s.blanking = floored.blanking = {0.4, v};
    const auto t = build_link_table(testutil::random_realization(rng, s, 15, 80), s);
    const auto a = associate_biased(t, tier_biases(s));
    const auto l = compute_loads(a, t);
    const auto plain = user_rates(a, l, t, s);
    const auto with_floor = user_rates(a, l, t, floored);
    for (std::size_t u = 0; u < plain.size(); ++u) CHECK(with_floor[u].rate_bps <= plain[u].rate_bps);
  }
}
