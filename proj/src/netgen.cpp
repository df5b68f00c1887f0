#include "hetnet/netgen.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "hetnet/error.hpp"
#include "hetnet/format.hpp"

namespace hetnet {

double torus_distance(Point p, Point q, double side_km) {
  double dx = std::abs(p.x_km - q.x_km);
  double dy = std::abs(p.y_km - q.y_km);
  dx = std::min(dx, side_km - dx);
  dy = std::min(dy, side_km - dy);
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// [0, 1) with 53 random bits; std::uniform_real_distribution may return 1.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t poisson_count(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

Point uniform_point(std::mt19937_64& rng, double side) {
  const double x = unit_uniform(rng) * side;
  const double y = unit_uniform(rng) * side;
  return {x, y};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

NetworkRealization generate_realization(const ScenarioConfig& scenario, std::uint64_t seed) {
  const double side = scenario.region_side_km;
  const double area = scenario.area_km2();
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    NetworkRealization r;
    r.region_side_km = side;
    r.seed = seed;
    for (const auto& tier : scenario.tiers) {
      const auto n = poisson_count(rng, tier.density_per_km2 * area);
      for (std::uint64_t i = 0; i < n; ++i) r.base_stations.push_back({tier.tier_id, uniform_point(rng, side)});
    }
    const auto users = poisson_count(rng, scenario.user_density_per_km2 * area);
    r.users.reserve(users);
    for (std::uint64_t i = 0; i < users; ++i) r.users.push_back(uniform_point(rng, side));

    if (r.users.empty() || !r.base_stations.empty()) return r;
  }
  throw Error(ErrorKind::DegenerateScenario, "seed " + std::to_string(seed),
              "no serving base station after " + std::to_string(kMaxRedraws) + " redraws");
}

void write_realization_csv(std::ostream& out, const NetworkRealization& r) {
  out << "kind,tier_id,x_km,y_km\n";
  for (const auto& bs : r.base_stations) {
    out << "bs," << bs.tier_id << ',' << format_exact(bs.position.x_km) << ','
        << format_exact(bs.position.y_km) << '\n';
  }
  for (const auto& u : r.users) {
    out << "user,-1," << format_exact(u.x_km) << ',' << format_exact(u.y_km) << '\n';
  }
}

NetworkRealization read_realization_csv(std::istream& in, double region_side_km) {
  NetworkRealization r;
  r.region_side_km = region_side_km;
  std::string line;
  int line_no = 0;
  auto bad = [&line_no](const std::string& what) {
    return Error(ErrorKind::ParseError, "realization line " + std::to_string(line_no), what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "kind,tier_id,x_km,y_km") throw bad("unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      cols.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols.size() != 4) throw bad("expected 4 columns");
    auto num = [&](const std::string& s) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) throw bad("bad number '" + s + "'");
      return v;
    };
    Point p{num(cols[2]), num(cols[3])};
    if (p.x_km < 0.0 || p.x_km >= region_side_km || p.y_km < 0.0 || p.y_km >= region_side_km) {
      throw bad("point outside the region");
    }
    if (cols[0] == "bs") {
      r.base_stations.push_back({static_cast<int>(num(cols[1])), p});
    } else if (cols[0] == "user") {
      r.users.push_back(p);
    } else {
      throw bad("unknown kind '" + cols[0] + "'");
    }
  }
  return r;
}

}  // namespace hetnet
