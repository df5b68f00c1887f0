#include <doctest.h>

#include <cmath>
#include <random>

#include "hetnet/error.hpp"
#include "hetnet/stats.hpp"
#include "test_util.hpp"

using namespace hetnet;

namespace {

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

// Reference KS distance: evaluate both CDFs at every sample point.
double ks_brute(const std::vector<double>& a, const std::vector<double>& b) {
  auto cdf = [](const std::vector<double>& v, double x) {
    double n = 0;
    for (double y : v) n += y <= x;
    return n / static_cast<double>(v.size());
  };
  double d = 0.0;
  for (const auto* v : {&a, &b}) {
    for (double x : *v) d = std::max(d, std::abs(cdf(a, x) - cdf(b, x)));
  }
  return d;
}

std::vector<double> random_samples(std::mt19937_64& rng, std::size_t n, int levels) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng() % static_cast<unsigned>(levels));
  return v;
}

}  // namespace

TEST_CASE("percentile examples") {
  const RateStats s({40, 10, 30, 20});
  CHECK(percentile(s, 50) == 20);
  CHECK(percentile(s, 100) == 40);
  CHECK(percentile(s, 0.1) == 10);
  CHECK(percentile(RateStats({7}), 5) == 7);
  CHECK(percentile(RateStats({7}), 100) == 7);
  CHECK(error_of([] { percentile(RateStats{}, 50); }) == ErrorKind::EmptySamples);
  CHECK(error_of([&] { percentile(s, 0); }) == ErrorKind::OutOfRange);
  CHECK(error_of([&] { percentile(s, 101); }) == ErrorKind::OutOfRange);
}

TEST_CASE("percentile of 5 in 200 samples is the 10th smallest") {
  std::vector<double> v;
  for (int i = 200; i >= 1; --i) v.push_back(i);
  CHECK(percentile(RateStats(v), 5) == 10);
  CHECK(percentile(RateStats(v), 50) == 100);
}

TEST_CASE("percentile is monotone and scale equivariant") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    auto v = random_samples(rng, 1 + rng() % 40, 1000);
    RateStats s(v);
    double prev = -1;
    for (double p = 1; p <= 100; p += 1) {
      const double q = percentile(s, p);
      CHECK(q >= prev);
      prev = q;
    }
    for (auto& x : v) x *= 2.5;
    RateStats scaled(v);
    for (double p : {5.0, 50.0, 95.0}) CHECK(percentile(scaled, p) == 2.5 * percentile(s, p));
  }
}

TEST_CASE("ks distance examples") {
  CHECK(ks_distance(RateStats({1, 2, 3}), RateStats({1, 2, 3})) == 0.0);
  CHECK(ks_distance(RateStats({0, 0}), RateStats({1, 1})) == 1.0);
  CHECK(ks_distance(RateStats({1, 2, 3, 4}), RateStats({1, 2, 3, 5})) == doctest::Approx(0.25));
  CHECK(error_of([] { ks_distance(RateStats{}, RateStats({1})); }) == ErrorKind::EmptySamples);
}

TEST_CASE("ks distance matches brute force, is symmetric and a metric") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    auto a = random_samples(rng, 1 + rng() % 30, 12);
    auto b = random_samples(rng, 1 + rng() % 30, 12);
    auto c = random_samples(rng, 1 + rng() % 30, 12);
    RateStats sa(a), sb(b), sc(c);
    const double ab = ks_distance(sa, sb);
    CHECK(ab == doctest::Approx(ks_brute(a, b)).epsilon(1e-12));
    CHECK(ab == ks_distance(sb, sa));
    CHECK(ab <= ks_distance(sa, sc) + ks_distance(sc, sb) + 1e-12);
  }
}

TEST_CASE("mean log examples") {
  const double e = std::exp(1.0);
  CHECK(mean_log(RateStats({e, e})) == doctest::Approx(1.0));
  CHECK(mean_log(RateStats({1})) == 0.0);
  CHECK(mean_log(RateStats({2, 8})) == doctest::Approx((std::log(2.0) + std::log(8.0)) / 2));
  CHECK(error_of([] { mean_log(RateStats({1, 0})); }) == ErrorKind::NonPositiveSample);
  CHECK(error_of([] { mean_log(RateStats{}); }) == ErrorKind::EmptySamples);
  const auto m = mean_log_positive(RateStats({0, 0, 2, 8}));
  CHECK(m.excluded == 2);
  CHECK(m.value == doctest::Approx(std::log(4.0)));
}
