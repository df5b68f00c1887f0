#include "hetnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

RateStats::RateStats(std::vector<double> samples) : samples_(std::move(samples)) {
  std::sort(samples_.begin(), samples_.end());
}

double percentile(const RateStats& stats, double p) {
  if (stats.empty()) throw Error(ErrorKind::EmptySamples, "percentile");
  if (!(p > 0.0 && p <= 100.0)) throw Error(ErrorKind::OutOfRange, "percentile", "p must lie in (0, 100]");
  const auto n = stats.size();
  // The small slack keeps exact products such as 50% of 4 at rank 2.
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(n) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return stats.samples()[rank - 1];
}

double ks_distance(const RateStats& a, const RateStats& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySamples, "ks_distance");
  const auto& x = a.samples();
  const auto& y = b.samples();
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double mean_log(const RateStats& stats) {
  if (stats.empty()) throw Error(ErrorKind::EmptySamples, "mean_log");
  if (stats.samples().front() <= 0.0) {
    throw Error(ErrorKind::NonPositiveSample, "mean_log", "sample " + std::to_string(stats.samples().front()));
  }
  double s = 0.0;
  for (double v : stats.samples()) s += std::log(v);
  return s / static_cast<double>(stats.size());
}

MeanLogSummary mean_log_positive(const RateStats& stats) {
  MeanLogSummary m;
  double s = 0.0;
  std::size_t n = 0;
  for (double v : stats.samples()) {
    if (v > 0.0) {
      s += std::log(v);
      ++n;
    } else {
      ++m.excluded;
    }
  }
  if (n == 0) throw Error(ErrorKind::EmptySamples, "mean_log", "no positive sample");
  m.value = s / static_cast<double>(n);
  return m;
}

}  // namespace hetnet
