#include "hetnet/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

std::string_view to_string(PolicyTag tag) {
  switch (tag) {
    case PolicyTag::MaxPower: return "max-power";
    case PolicyTag::MaxSinr: return "max-sinr";
    case PolicyTag::Biased: return "biased";
    case PolicyTag::LoadAware: return "load-aware";
    case PolicyTag::Oracle: return "oracle";
  }
  return "unknown";
}

std::vector<double> tier_biases(const ScenarioConfig& scenario) {
  std::vector<double> biases;
  biases.reserve(scenario.tiers.size());
  for (const auto& t : scenario.tiers) biases.push_back(t.bias);
  return biases;
}

namespace {

void require_stations(const LinkTable& table) {
  if (table.bs_count() == 0 && table.user_count() > 0) {
    throw Error(ErrorKind::DegenerateScenario, "link table", "no base station to associate with");
  }
}

}  // namespace

Association associate_max_power(const LinkTable& table) {
  require_stations(table);
  Association a{std::vector<std::size_t>(table.user_count()), PolicyTag::MaxPower};
  for (std::size_t u = 0; u < table.user_count(); ++u) a.serving[u] = table.strongest_bs(u);
  return a;
}

Association associate_biased(const LinkTable& table, std::span<const double> biases) {
  require_stations(table);
  if (biases.size() != table.tier_count()) {
    throw Error(ErrorKind::OutOfRange, "biases", "need one bias per tier");
  }
  Association a{std::vector<std::size_t>(table.user_count()), PolicyTag::Biased};
  for (std::size_t u = 0; u < table.user_count(); ++u) {
    double best_metric = -1.0;
    std::size_t best_bs = 0;
    for (std::size_t t = 0; t < table.tier_count(); ++t) {
      auto b = table.strongest_in_tier(u, t);
      if (!b) continue;
      const double metric = biases[t] * table.strongest_power_in_tier(u, t);
      if (metric > best_metric) {
        best_metric = metric;
        best_bs = *b;
      }
    }
    a.serving[u] = best_bs;
  }
  return a;
}

Association associate_max_sinr(const LinkTable& table) {
  require_stations(table);
  Association a{std::vector<std::size_t>(table.user_count()), PolicyTag::MaxSinr};
  // Within one band SINR is increasing in received power, so the global
  // argmax is always one of the per-tier strongest stations.
  for (std::size_t u = 0; u < table.user_count(); ++u) {
    double best = -1.0;
    std::size_t best_bs = std::numeric_limits<std::size_t>::max();
    for (std::size_t t = 0; t < table.tier_count(); ++t) {
      auto b = table.strongest_in_tier(u, t);
      if (!b) continue;
      const double s = sinr(table, u, *b, SinrMode::Full);
      if (s > best || (s == best && *b < best_bs)) {
        best = s;
        best_bs = *b;
      }
    }
    a.serving[u] = best_bs;
  }
  return a;
}

OracleResult brute_force_log_utility(const RateMatrix& rates, std::uint64_t max_size) {
  const auto users = rates.user_count();
  std::uint64_t space = 1;
  for (std::size_t u = 0; u < users; ++u) {
    const auto n = rates.row(u).size();
    if (n == 0) throw Error(ErrorKind::NoFeasibleUser, "user " + std::to_string(u), "all rates are zero");
    if (space > max_size / n) {
      throw Error(ErrorKind::TooLarge, "oracle", "search space exceeds " + std::to_string(max_size));
    }
    space *= n;
  }
  if (users == 0) return {{{}, PolicyTag::Oracle}, 0.0};

  // Logs are precomputed per entry and each assignment is summed afresh so
  // the comparison does not accumulate drift.
  std::vector<std::vector<double>> logs(users);
  for (std::size_t u = 0; u < users; ++u) {
    for (const auto& e : rates.row(u)) logs[u].push_back(std::log(e.rate));
  }
  std::vector<std::size_t> choice(users, 0);
  std::vector<std::uint32_t> load(rates.bs_count(), 0);
  auto evaluate = [&] {
    std::fill(load.begin(), load.end(), 0);
    double s = 0.0;
    for (std::size_t u = 0; u < users; ++u) {
      s += logs[u][choice[u]];
      ++load[rates.row(u)[choice[u]].bs];
    }
    for (auto k : load) {
      if (k > 1) s -= k * std::log(static_cast<double>(k));
    }
    return s;
  };

  std::vector<std::size_t> best_choice = choice;
  double best = evaluate();
  // Odometer with the last user as the fastest digit, so the first optimum
  // met is the lexicographically smallest one.
  while (true) {
    std::size_t u = users;
    bool done = true;
    while (u > 0) {
      --u;
      choice[u] = (choice[u] + 1) % logs[u].size();
      if (choice[u] != 0) {
        done = false;
        break;
      }
    }
    if (done) break;
    const double value = evaluate();
    if (value > best + 1e-12 * std::max(1.0, std::abs(best))) {
      best = value;
      best_choice = choice;
    }
  }

  OracleResult result{{std::vector<std::size_t>(users), PolicyTag::Oracle}, 0.0};
  for (std::size_t u = 0; u < users; ++u) result.association.serving[u] = rates.row(u)[best_choice[u]].bs;
  result.objective = best;
  return result;
}

}  // namespace hetnet
