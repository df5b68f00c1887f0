#include "hetnet/csv.hpp"

#include <ostream>

#include "hetnet/format.hpp"

namespace hetnet {

void append_samples_csv(std::ostream& out, std::string_view policy, double bias_db, double eta,
                        BlankingVariant variant, std::span<const RateSample> samples) {
  const auto prefix = std::string(policy) + ',' + format_sig6(bias_db) + ',' + format_sig6(eta) + ',' +
                      std::string(to_string(variant)) + ',';
  for (const auto& s : samples) {
    out << prefix << s.tier_id << ',' << (s.range_expanded ? 1 : 0) << ',' << format_sig6(s.rate_bps) << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.policy << ',' << format_sig6(r.bias_db) << ',' << format_sig6(r.eta) << ','
        << to_string(r.objective) << ',' << format_sig6(r.value) << ',' << (r.is_argmax ? 1 : 0) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << kSweepHeader << '\n';
  for (const auto& p : sweep.points) {
    out << format_sig6(p.bias_db) << ',' << format_sig6(p.eta) << ',' << format_sig6(p.value) << '\n';
  }
}

std::string summary_line(const SummaryRow& r) {
  std::string s = r.experiment + ": " + r.policy + " " + std::string(to_string(r.objective)) + " = " +
                  format_sig6(r.value);
  if (r.is_argmax) s += " at bias " + format_sig6(r.bias_db) + " dB, eta " + format_sig6(r.eta);
  return s;
}

}  // namespace hetnet
