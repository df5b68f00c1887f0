#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hetnet/scenario.hpp"

namespace hetnet {

struct Point {
  double x_km = 0.0;
  double y_km = 0.0;

  bool operator==(const Point&) const = default;
};

struct BaseStation {
  int tier_id = 0;
  Point position;

  bool operator==(const BaseStation&) const = default;
};

struct NetworkRealization {
  double region_side_km = 0.0;
  std::vector<BaseStation> base_stations;
  std::vector<Point> users;
  std::uint64_t seed = 0;

  bool operator==(const NetworkRealization&) const = default;
};

inline constexpr int kMaxRedraws = 100;

// Wrap-around Euclidean distance on the square torus of side `side_km`.
double torus_distance(Point p, Point q, double side_km);

// Mixes (master, index) into an independent 64-bit stream seed. Used for
// per-realization seeds and for redraw substreams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Independent PPPs per tier and for users on the torus. Deterministic in
// (scenario, seed). A draw with users but no base station is redrawn on the
// next substream, up to kMaxRedraws times, then DegenerateScenario.
NetworkRealization generate_realization(const ScenarioConfig& scenario, std::uint64_t seed);

// CSV dump: kind(bs|user),tier_id,x_km,y_km with tier_id -1 for users.
void write_realization_csv(std::ostream& out, const NetworkRealization& realization);
NetworkRealization read_realization_csv(std::istream& in, double region_side_km);

}  // namespace hetnet
