#include "hetnet/rate_matrix.hpp"

#include <algorithm>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

RateMatrix RateMatrix::from_dense(const std::vector<std::vector<double>>& rows) {
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  RateMatrix m(width);
  for (const auto& r : rows) {
    if (r.size() != width) throw Error(ErrorKind::OutOfRange, "rate matrix", "ragged rows");
    std::vector<Entry> entries;
    for (std::size_t b = 0; b < r.size(); ++b) {
      if (r[b] < 0.0) throw Error(ErrorKind::OutOfRange, "rate matrix", "negative rate");
      if (r[b] > 0.0) entries.push_back({static_cast<std::uint32_t>(b), r[b]});
    }
    m.add_user(std::move(entries));
  }
  return m;
}

void RateMatrix::add_user(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.bs < b.bs; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].bs >= bs_count_ || !(entries[i].rate > 0.0) ||
        (i > 0 && entries[i].bs == entries[i - 1].bs)) {
      throw Error(ErrorKind::OutOfRange, "rate matrix user " + std::to_string(user_count()),
                  "entries need distinct in-range base stations and positive rates");
    }
  }
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  offsets_.push_back(entries_.size());
}

double RateMatrix::rate(std::size_t user, std::size_t bs) const {
  auto r = row(user);
  auto it = std::lower_bound(r.begin(), r.end(), bs, [](const Entry& e, std::size_t b) { return e.bs < b; });
  return (it != r.end() && it->bs == bs) ? it->rate : 0.0;
}

}  // namespace hetnet
