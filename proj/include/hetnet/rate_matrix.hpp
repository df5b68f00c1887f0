#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hetnet {

// Full-resource link rates c[u][b] in bit/s, stored row-compressed. Entries
// that are not stored are zero (unreachable or pruned links).
class RateMatrix {
 public:
  struct Entry {
    std::uint32_t bs = 0;
    double rate = 0.0;

    bool operator==(const Entry&) const = default;
  };

  explicit RateMatrix(std::size_t bs_count = 0) : bs_count_(bs_count), offsets_{0} {}

  // Rows of a dense matrix; zero entries are dropped.
  static RateMatrix from_dense(const std::vector<std::vector<double>>& rows);

  // Appends a user; entries must have distinct bs < bs_count and rate > 0.
  void add_user(std::vector<Entry> entries);

  std::size_t user_count() const { return offsets_.size() - 1; }
  std::size_t bs_count() const { return bs_count_; }
  std::span<const Entry> row(std::size_t user) const {
    return {entries_.data() + offsets_[user], entries_.data() + offsets_[user + 1]};
  }
  double rate(std::size_t user, std::size_t bs) const;

 private:
  std::size_t bs_count_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

}  // namespace hetnet
