#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hetnet/assoc.hpp"
#include "hetnet/error.hpp"
#include "hetnet/loadopt.hpp"
#include "test_util.hpp"

using namespace hetnet;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense random_rates(std::mt19937_64& rng, std::size_t users, std::size_t bss, bool holes) {
  Dense c(users, std::vector<double>(bss));
  for (auto& row : c) {
    for (auto& x : row) x = 1e5 * std::exp2(8.0 * testutil::unit(rng));
    if (holes && bss > 1 && rng() % 4 == 0) row[rng() % bss] = 0.0;
  }
  return c;
}

// Exhaustive log utility written directly against the dense rows.
double dense_oracle(const Dense& c) {
  const std::size_t users = c.size(), bss = c[0].size();
  std::vector<std::size_t> pick(users, 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    bool ok = true;
    std::vector<double> load(bss, 0.0);
    for (std::size_t u = 0; u < users; ++u) {
      ok = ok && c[u][pick[u]] > 0;
      load[pick[u]] += 1;
    }
    if (ok) {
      double s = 0.0;
      for (std::size_t u = 0; u < users; ++u) s += std::log(c[u][pick[u]]) - std::log(load[pick[u]]);
      best = std::max(best, s);
    }
    std::size_t u = 0;
    while (u < users && ++pick[u] == bss) pick[u++] = 0;
    if (u == users) break;
  }
  return best;
}

}  // namespace

TEST_CASE("load response at unit price is one") {
  CHECK(load_response(1.0) == 1.0);
  CHECK(load_response(1.0 + std::log(3.0)) == doctest::Approx(3.0));
}

TEST_CASE("oracle instance") {
  const auto rates = RateMatrix::from_dense({{4, 1}, {4, 1}, {1, 4}});
  const auto sol = solve_relaxed(rates);
  CHECK(round_association(sol.fractional, rates).serving == std::vector<std::size_t>{0, 0, 1});
  CHECK(sol.dual.best_dual >= 2.7726 - 1e-6);
  CHECK(solve_load_aware(rates).serving == std::vector<std::size_t>{0, 0, 1});
  CHECK(log_utility({{0, 0, 1}, PolicyTag::LoadAware}, rates) == doctest::Approx(2.7726).epsilon(1e-4));
}

TEST_CASE("single station converges in one iteration") {
  const auto rates = RateMatrix::from_dense({{3}, {5}, {7}, {11}});
  const auto sol = solve_relaxed(rates);
  CHECK(sol.dual.iteration == 1);
  for (std::size_t u = 0; u < 4; ++u) CHECK(sol.fractional.fraction(u, 0) == 1.0);
  const double want = std::log(3.0 / 4) + std::log(5.0 / 4) + std::log(7.0 / 4) + std::log(11.0 / 4);
  CHECK(sol.dual.best_primal == doctest::Approx(want).epsilon(1e-12));
  CHECK(sol.dual.best_dual == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("fractional rows sum to one") {
  std::mt19937_64 rng(71);
  const auto rates = RateMatrix::from_dense(random_rates(rng, 30, 6, true));
  const auto sol = solve_relaxed(rates, {1.0, 300, 1e-9});
  for (std::size_t u = 0; u < rates.user_count(); ++u) {
    double s = 0.0;
    for (const auto& e : sol.fractional.row(u)) {
      CHECK(e.x >= 0.0);
      CHECK(rates.rate(u, e.bs) > 0.0);
      s += e.x;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rounding") {
  FractionalAssociation f;
  f.add_user({{0, 0.5}, {1, 0.5}});
  f.add_user({{1, 1.0}});
  f.add_user({{0, 0.2}, {2, 0.7}, {1, 0.1}});
  const auto rates = RateMatrix::from_dense({{1, 1, 0}, {1, 1, 0}, {1, 1, 1}});
  const auto a = round_association(f, rates);
  CHECK(a.serving == std::vector<std::size_t>{0, 1, 2});
  CHECK(a.policy == PolicyTag::LoadAware);
  CHECK(round_association(f, rates) == a);
}

TEST_CASE("log utility examples") {
  CHECK(log_utility({{0}, PolicyTag::Oracle}, RateMatrix::from_dense({{std::exp(1.0)}})) == doctest::Approx(1.0));
  const auto twins = RateMatrix::from_dense({{8, 8}, {8, 8}});
  const double split = log_utility({{0, 1}, PolicyTag::Oracle}, twins);
  const double stacked = log_utility({{0, 0}, PolicyTag::Oracle}, twins);
  CHECK(split == doctest::Approx(2 * std::log(8.0)));
  CHECK(stacked == doctest::Approx(2 * std::log(4.0)));
  CHECK(split > stacked);
  try {
    log_utility({{1}, PolicyTag::Oracle}, RateMatrix::from_dense({{5, 0}}));
    FAIL("expected UndefinedUtility");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedUtility);
  }
}

TEST_CASE("solver errors") {
  try {
    solve_relaxed(RateMatrix::from_dense({{1, 2}, {0, 0}}));
    FAIL("expected NoFeasibleUser");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoFeasibleUser);
  }
  CHECK_THROWS_AS(solve_relaxed(RateMatrix::from_dense({{1}}), {0.0, 10, 1e-3}), Error);
  CHECK_THROWS_AS(solve_relaxed(RateMatrix::from_dense({{1}}), {1.0, 0, 1e-3}), Error);
}

TEST_CASE("dual bound and rounding quality against exhaustive search") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t users = 1 + rng() % 10, bss = 1 + rng() % 3;
    const auto dense = random_rates(rng, users, bss, trial % 2 == 0);
    const auto rates = RateMatrix::from_dense(dense);
    const double oracle = dense_oracle(dense);
    const auto sol = solve_relaxed(rates);
    CHECK(sol.dual.best_dual >= oracle - 1e-6);
    const double got = log_utility(solve_load_aware(rates), rates);
    CHECK(got <= oracle + 1e-9);
    CHECK(got >= oracle - 0.05 * std::abs(oracle));
  }
}

TEST_CASE("gap closes on 50 users and 10 stations") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rates = RateMatrix::from_dense(random_rates(rng, 50, 10, false));
    const auto sol = solve_relaxed(rates, {1.0, 5000, 1e-3});
    CHECK(sol.dual.relative_gap() < 1e-2);
  }
}

TEST_CASE("rate matrix keeps the best candidates") {
  auto s = testutil::flat_scenario({30, 20, 20, 10}, 1.0);
  const auto t = build_link_table(testutil::stacked({1, 2, 3, 4, 3}, 2), s);
  const auto all = build_rate_matrix(t);
  CHECK(all.row(0).size() == 5);
  const double total = t.total_received(0, 0);
  for (std::size_t b = 0; b < 5; ++b) {
    const double p = t.received_power(0, b);
    CHECK(all.rate(0, b) == doctest::Approx(10e6 * std::log2(1.0 + p / (total - p + 1.0))).epsilon(1e-12));
  }
  const auto top = build_rate_matrix(t, 3);
  std::vector<std::uint32_t> kept;
  for (const auto& e : top.row(1)) kept.push_back(e.bs);
  std::sort(kept.begin(), kept.end());
  CHECK(kept == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("trace csv") {
  std::vector<TraceRow> trace;
  solve_relaxed(RateMatrix::from_dense({{4, 1}, {4, 1}, {1, 4}}), {}, &trace);
  REQUIRE(!trace.empty());
  std::ostringstream out;
  write_trace_csv(out, trace);
  CHECK(out.str().rfind("iteration,dual,primal,gap\n1,", 0) == 0);
}
