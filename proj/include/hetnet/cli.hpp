#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "hetnet/loadopt.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

struct ExperimentConfig {
  ScenarioConfig scenario;
  SolverParams solver;
  std::size_t max_candidates = 10;
  int realizations = 50;
  std::uint64_t seed = 1;
};

// Scenario sections plus the optional [solver] and [mc] sections.
ExperimentConfig load_experiment(const RawConfig& raw);

// Entry point of the hetnet-lb tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetnet
