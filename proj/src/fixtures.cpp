#include "hetnet/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "hetnet/assoc.hpp"
#include "hetnet/error.hpp"
#include "hetnet/format.hpp"
#include "hetnet/netgen.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

void write_rates_csv(std::ostream& out, const std::vector<std::vector<double>>& rows) {
  out << "user,bs,rate_bps\n";
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (std::size_t b = 0; b < rows[u].size(); ++b) {
      out << u << ',' << b << ',' << format_exact(rows[u][b]) << '\n';
    }
  }
}

RateMatrix read_rates_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "user,bs,rate_bps") {
    throw Error(ErrorKind::ParseError, "rates", "missing header");
  }
  std::vector<std::vector<double>> rows;
  std::size_t bs_count = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string fu, fb, fr;
    if (!std::getline(ss, fu, ',') || !std::getline(ss, fb, ',') || !std::getline(ss, fr)) {
      throw Error(ErrorKind::ParseError, "rates", "line " + std::to_string(lineno));
    }
    std::size_t u = 0, b = 0;
    double r = 0.0;
    try {
      u = std::stoul(fu);
      b = std::stoul(fb);
      r = std::stod(fr);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "rates", "line " + std::to_string(lineno));
    }
    if (u >= rows.size()) rows.resize(u + 1);
    if (b >= rows[u].size()) rows[u].resize(b + 1, 0.0);
    rows[u][b] = r;
    bs_count = std::max(bs_count, b + 1);
  }
  for (auto& r : rows) r.resize(bs_count, 0.0);
  return RateMatrix::from_dense(rows);
}

namespace {

struct Writer {
  std::filesystem::path dir;
  std::vector<std::string> names;

  std::ofstream open(const std::string& name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, (dir / name).string(), "cannot write fixture");
    names.push_back(name);
    return f;
  }
};

std::string join_assignment(const Association& a) {
  std::string s;
  for (std::size_t u = 0; u < a.serving.size(); ++u) {
    if (u) s += ' ';
    s += std::to_string(a.serving[u]);
  }
  return s;
}

void oracle_fixture(Writer& w, const std::string& name, const std::vector<std::vector<double>>& rows,
                    const std::string& source) {
  {
    auto f = w.open(name + ".rates.csv");
    write_rates_csv(f, rows);
  }
  const auto result = brute_force_log_utility(RateMatrix::from_dense(rows));
  auto f = w.open(name + ".expected");
  f << "[fixture]\n"
    << "name = " << name << '\n'
    << "kind = oracle\n"
    << "rates = " << name << ".rates.csv\n"
    << "\n[expected]\n"
    << "assignment = " << join_assignment(result.association) << '\n'
    << "objective = " << format_exact(result.objective) << '\n'
    << "tolerance = 1e-6\n"
    << "source = " << source << '\n';
}

// 53 random bits in [0, 1); avoids library-specific distribution code so the
// generated files do not depend on the standard library.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<std::string> generate_fixtures(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Writer w{dir, {}};

  oracle_fixture(w, "oracle_3x2", {{4.0, 1.0}, {4.0, 1.0}, {1.0, 4.0}}, "exhaustive search over 8 assignments");

  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 6; ++i) {
    const std::size_t users = 4 + static_cast<std::size_t>(rng() % 9);  // 4..12
    const std::size_t bss = 2 + static_cast<std::size_t>(rng() % 2);    // 2..3
    std::vector<std::vector<double>> rows(users, std::vector<double>(bss));
    for (auto& row : rows) {
      for (auto& c : row) c = std::round(1e5 * std::exp2(8.0 * unit(rng)));  // 0.1 to 25.6 Mbit/s
    }
    oracle_fixture(w, "oracle_random_" + std::to_string(i), rows,
                   "exhaustive search over " + std::to_string(static_cast<long long>(std::pow(bss, users))) +
                       " assignments");
  }

  // Users but no stations at any density: every redraw is empty.
  {
    auto s = reference_scenario();
    for (auto& t : s.tiers) t.density_per_km2 = 0.0;
    auto f = w.open("empty_tier.cfg");
    f << serialize(s);
    auto e = w.open("empty_tier.expected");
    e << "[fixture]\n"
      << "name = empty_tier\n"
      << "kind = error\n"
      << "config = empty_tier.cfg\n"
      << "seed = 1\n"
      << "\n[expected]\n"
      << "error = " << to_string(ErrorKind::DegenerateScenario) << '\n'
      << "source = contract\n";
  }

  // One macro, one small cell, one user 150 m from the macro and 50 m from
  // the small cell. The small cell wins once
  //   bias_db + P_small - 10 a log10(50) > P_macro - 10 a log10(150).
  {
    auto s = reference_scenario();
    {
      auto f = w.open("single_user.cfg");
      f << serialize(s);
    }
    NetworkRealization r;
    r.region_side_km = s.region_side_km;
    r.base_stations = {{s.tiers[0].tier_id, {5.0, 5.0}}, {s.tiers[1].tier_id, {5.2, 5.0}}};
    r.users = {{5.15, 5.0}};
    {
      auto f = w.open("single_user.realization.csv");
      write_realization_csv(f, r);
    }
    const double a = s.pathloss_exponent;
    const double gap_db = mw_to_dbm(s.tiers[0].tx_power_mw) - mw_to_dbm(s.tiers[1].tx_power_mw);
    const double switch_db = gap_db - 10.0 * a * std::log10(150.0 / 50.0);
    auto e = w.open("single_user.expected");
    e << "[fixture]\n"
      << "name = single_user\n"
      << "kind = switching_bias\n"
      << "config = single_user.cfg\n"
      << "realization = single_user.realization.csv\n"
      << "\n[expected]\n"
      << "switching_bias_db = " << format_exact(switch_db) << '\n'
      << "serving_below = 0\n"
      << "serving_above = 1\n"
      << "tolerance_db = 1e-9\n"
      << "source = closed form from the pathloss law\n";
  }
  return w.names;
}

}  // namespace hetnet
