#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hetnet/assoc.hpp"
#include "hetnet/error.hpp"
#include "hetnet/fixtures.hpp"
#include "hetnet/loadopt.hpp"
#include "hetnet/netgen.hpp"
#include "hetnet/scenario.hpp"

using namespace hetnet;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = HETNET_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string expected(const RawConfig& raw, const std::string& key) {
  const auto* s = raw.find("expected");
  REQUIRE(s);
  const auto* e = s->find(key);
  REQUIRE(e);
  return e->value;
}

std::string field(const RawConfig& raw, const std::string& key) {
  const auto* e = raw.find("fixture")->find(key);
  REQUIRE(e);
  return e->value;
}

// Re-summed objective of a stated assignment, no shared code with the oracle.
double resum(const RateMatrix& rates, const std::vector<std::size_t>& pick) {
  std::vector<double> load(rates.bs_count(), 0.0);
  for (auto b : pick) load[b] += 1;
  double s = 0.0;
  for (std::size_t u = 0; u < pick.size(); ++u) s += std::log(rates.rate(u, pick[u]) / load[pick[u]]);
  return s;
}

}  // namespace

TEST_CASE("regenerated fixtures match the committed files byte for byte") {
  const auto tmp = fs::temp_directory_path() / "hetnet_fixture_regen";
  fs::remove_all(tmp);
  const auto names = generate_fixtures(tmp);
  CHECK(names.size() >= 10);
  for (const auto& n : names) {
    INFO(n);
    CHECK(slurp(tmp / n) == slurp(kDir / n));
  }
  std::size_t committed = 0;
  for (const auto& e : fs::directory_iterator(kDir)) committed += e.is_regular_file();
  CHECK(committed == names.size());
}

TEST_CASE("oracle fixtures hold") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(kDir)) {
    if (entry.path().extension() != ".expected") continue;
    const auto raw = read_raw_config(entry.path().string());
    if (field(raw, "kind") != "oracle") continue;
    ++seen;
    INFO(entry.path().filename().string());
    std::ifstream f(kDir / field(raw, "rates"));
    const auto rates = read_rates_csv(f);
    CHECK(rates.user_count() <= 12);
    CHECK(rates.bs_count() <= 3);

    std::vector<std::size_t> pick;
    std::istringstream in(expected(raw, "assignment"));
    for (std::size_t b; in >> b;) pick.push_back(b);
    const double objective = std::stod(expected(raw, "objective"));
    const double tol = std::stod(expected(raw, "tolerance"));
    CHECK(!expected(raw, "source").empty());

    const auto oracle = brute_force_log_utility(rates);
    CHECK(oracle.association.serving == pick);
    CHECK(std::abs(oracle.objective - objective) <= tol);
    CHECK(std::abs(resum(rates, pick) - objective) <= tol);
    CHECK(solve_relaxed(rates).dual.best_dual >= objective - 1e-6);
  }
  CHECK(seen == 7);
}

TEST_CASE("oracle_3x2 is the textbook instance") {
  const auto raw = read_raw_config((kDir / "oracle_3x2.expected").string());
  CHECK(expected(raw, "assignment") == "0 0 1");
  CHECK(std::stod(expected(raw, "objective")) == doctest::Approx(2.7726).epsilon(1e-4));
}

TEST_CASE("empty tier fixture is degenerate") {
  const auto raw = read_raw_config((kDir / "empty_tier.expected").string());
  const auto s = validate(read_raw_config((kDir / field(raw, "config")).string()));
  const auto seed = std::stoull(field(raw, "seed"));
  try {
    generate_realization(s, seed);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(to_string(e.kind()) == expected(raw, "error"));
  }
}

TEST_CASE("single user switching bias") {
  const auto raw = read_raw_config((kDir / "single_user.expected").string());
  const auto s = validate(read_raw_config((kDir / field(raw, "config")).string()));
  std::ifstream f(kDir / field(raw, "realization"));
  const auto r = read_realization_csv(f, s.region_side_km);
  const auto t = build_link_table(r, s);
  const double switch_db = std::stod(expected(raw, "switching_bias_db"));
  const double tol = std::stod(expected(raw, "tolerance_db"));
  // hand algebra: 23 dB power gap against a 3x distance ratio at alpha 3.5
  CHECK(std::abs(switch_db - (23.0 - 35.0 * std::log10(3.0))) <= tol);
  // the received powers cross exactly there
  CHECK(std::abs(linear_to_db(t.received_power(0, 0) / t.received_power(0, 1)) - switch_db) <= 1e-9);
  const auto below = std::stoul(expected(raw, "serving_below"));
  const auto above = std::stoul(expected(raw, "serving_above"));
  for (double d : {0.0, switch_db - 0.01}) {
    CHECK(associate_biased(t, std::vector<double>{1.0, db_to_linear(d)}).serving[0] == below);
  }
  for (double d : {switch_db + 0.01, 20.0}) {
    CHECK(associate_biased(t, std::vector<double>{1.0, db_to_linear(d)}).serving[0] == above);
  }
}
