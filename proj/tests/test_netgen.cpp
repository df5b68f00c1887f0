#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hetnet/error.hpp"
#include "hetnet/netgen.hpp"
#include "test_util.hpp"

using namespace hetnet;

TEST_CASE("torus distance examples") {
  CHECK(torus_distance({3, 4}, {3, 4}, 10) == 0.0);
  CHECK(torus_distance({0.5, 5}, {9.5, 5}, 10) == doctest::Approx(1.0));
  CHECK(torus_distance({0, 0}, {5, 5}, 10) == doctest::Approx(std::sqrt(50.0)));
}

TEST_CASE("torus distance is symmetric and translation invariant") {
  std::mt19937_64 rng(3);
  const double side = 10.0;
  for (int i = 0; i < 500; ++i) {
    Point p{side * testutil::unit(rng), side * testutil::unit(rng)};
    Point q{side * testutil::unit(rng), side * testutil::unit(rng)};
    CHECK(torus_distance(p, q, side) == torus_distance(q, p, side));
    const double dx = side * testutil::unit(rng), dy = side * testutil::unit(rng);
    Point p2{std::fmod(p.x_km + dx, side), std::fmod(p.y_km + dy, side)};
    Point q2{std::fmod(q.x_km + dx, side), std::fmod(q.y_km + dy, side)};
    CHECK(torus_distance(p2, q2, side) == doctest::Approx(torus_distance(p, q, side)).epsilon(1e-12));
  }
}

TEST_CASE("zero densities give an empty realization") {
  auto s = reference_scenario();
  for (auto& t : s.tiers) t.density_per_km2 = 0.0;
  s.user_density_per_km2 = 0.0;
  const auto r = generate_realization(s, 9);
  CHECK(r.base_stations.empty());
  CHECK(r.users.empty());
}

TEST_CASE("users without stations is degenerate") {
  auto s = reference_scenario();
  for (auto& t : s.tiers) t.density_per_km2 = 0.0;
  try {
    generate_realization(s, 1);
    FAIL("expected DegenerateScenario");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateScenario);
  }
}

TEST_CASE("sparse stations are redrawn rather than failing") {
  auto s = reference_scenario();
  s.region_side_km = 1.0;
  s.tiers[0].density_per_km2 = 1.0;  // P(no BS) = e^-1 per tier draw
  s.tiers[1].density_per_km2 = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = generate_realization(s, seed);
    if (!r.users.empty()) CHECK(!r.base_stations.empty());
  }
}

TEST_CASE("mean station count matches the Poisson mean") {
  auto s = reference_scenario();
  s.tiers.resize(1);
  s.tiers[0].density_per_km2 = 1.0;
  s.user_density_per_km2 = 0.0;
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) sum += static_cast<double>(generate_realization(s, seed).base_stations.size());
  // mean 100, sd of the mean sqrt(100/1000)
  CHECK(std::abs(sum / 1000.0 - 100.0) <= 3.0 * std::sqrt(100.0 / 1000.0));
}

TEST_CASE("positions lie in the region and follow tier order") {
  const auto s = reference_scenario();
  const auto r = generate_realization(s, 42);
  CHECK(!r.base_stations.empty());
  int last_tier = 0;
  for (const auto& bs : r.base_stations) {
    CHECK(bs.tier_id >= last_tier);
    last_tier = bs.tier_id;
    CHECK(bs.position.x_km >= 0.0);
    CHECK(bs.position.x_km < s.region_side_km);
    CHECK(bs.position.y_km >= 0.0);
    CHECK(bs.position.y_km < s.region_side_km);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const auto s = reference_scenario();
  CHECK(generate_realization(s, 7) == generate_realization(s, 7));
  CHECK(!(generate_realization(s, 7) == generate_realization(s, 8)));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("realization csv round trip") {
  const auto s = reference_scenario();
  const auto r = generate_realization(s, 3);
  std::stringstream ss;
  write_realization_csv(ss, r);
  CHECK(ss.str().rfind("kind,tier_id,x_km,y_km\n", 0) == 0);
  auto back = read_realization_csv(ss, s.region_side_km);
  back.seed = r.seed;
  CHECK(back == r);
}
