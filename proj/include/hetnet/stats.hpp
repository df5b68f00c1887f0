#pragma once

#include <cstddef>
#include <vector>

namespace hetnet {

// Empirical distribution of pooled samples, sorted ascending on construction.
class RateStats {
 public:
  RateStats() = default;
  explicit RateStats(std::vector<double> samples);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  bool operator==(const RateStats&) const = default;

 private:
  std::vector<double> samples_;
};

// Nearest rank: the ceil(p/100 * n)-th smallest sample, p in (0, 100].
double percentile(const RateStats& stats, double p);

// Sup-norm distance between the two empirical CDFs.
double ks_distance(const RateStats& a, const RateStats& b);

// Mean natural log; throws NonPositiveSample on any sample <= 0.
double mean_log(const RateStats& stats);

struct MeanLogSummary {
  double value = 0.0;        // over the positive samples
  std::size_t excluded = 0;  // zero-rate samples left out
};
MeanLogSummary mean_log_positive(const RateStats& stats);

}  // namespace hetnet
