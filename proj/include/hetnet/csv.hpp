#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "hetnet/mc.hpp"
#include "hetnet/sched.hpp"

namespace hetnet {

inline constexpr std::string_view kSamplesHeader = "policy,bias_db,eta,variant,tier,range_expanded,rate_bps";
inline constexpr std::string_view kSummaryHeader =
    "experiment,policy,bias_db,eta,objective_kind,objective_value,is_argmax";
inline constexpr std::string_view kSweepHeader = "bias_db,eta,objective_value";

struct SummaryRow {
  std::string experiment;
  std::string policy;
  double bias_db = 0.0;
  double eta = 0.0;
  ObjectiveKind objective = ObjectiveKind::Pct50;
  double value = 0.0;
  bool is_argmax = false;
};

// Rows only; callers write kSamplesHeader once.
void append_samples_csv(std::ostream& out, std::string_view policy, double bias_db, double eta,
                        BlankingVariant variant, std::span<const RateSample> samples);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

std::string summary_line(const SummaryRow& row);

}  // namespace hetnet
