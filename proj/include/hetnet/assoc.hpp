#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hetnet/radio.hpp"
#include "hetnet/rate_matrix.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

enum class PolicyTag { MaxPower, MaxSinr, Biased, LoadAware, Oracle };

std::string_view to_string(PolicyTag tag);

struct Association {
  std::vector<std::size_t> serving;  // per user, a base station index
  PolicyTag policy = PolicyTag::MaxPower;

  bool operator==(const Association&) const = default;
};

// Per-tier linear biases in scenario tier order.
std::vector<double> tier_biases(const ScenarioConfig& scenario);

Association associate_max_power(const LinkTable& table);

// Cell range expansion: the tier maximising bias * (strongest power in the
// tier) wins (lowest tier index on ties) and its strongest station serves.
Association associate_biased(const LinkTable& table, std::span<const double> biases);

Association associate_max_sinr(const LinkTable& table);

inline constexpr std::uint64_t kDefaultOracleMaxSize = 10'000'000;

struct OracleResult {
  Association association;
  double objective = 0.0;  // nats
};

// Exhaustive maximum of sum_u ln(c[u][b(u)] / K[b(u)]) over binary
// assignments to positive-rate links. Among (numerically) tied optima the
// lexicographically smallest assignment is returned.
OracleResult brute_force_log_utility(const RateMatrix& rates, std::uint64_t max_size = kDefaultOracleMaxSize);

}  // namespace hetnet
