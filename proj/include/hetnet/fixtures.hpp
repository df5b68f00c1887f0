#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hetnet/rate_matrix.hpp"

namespace hetnet {

// Dense rate rows as "user,bs,rate_bps"; the BS count is one past the largest
// bs index. Zero rates are written and dropped again on read.
void write_rates_csv(std::ostream& out, const std::vector<std::vector<double>>& rows);
RateMatrix read_rates_csv(std::istream& in);

// Writes every fixture into dir and returns the file names in write order.
// Output is a pure function of the code, so reruns are byte-identical.
std::vector<std::string> generate_fixtures(const std::filesystem::path& dir);

}  // namespace hetnet
