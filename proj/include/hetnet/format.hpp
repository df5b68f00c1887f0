#pragma once

#include <string>

namespace hetnet {

// Locale-independent number text. format_sig6 matches printf("%.6g");
// format_exact is the shortest string that parses back to the same double.
std::string format_sig6(double value);
std::string format_exact(double value);

}  // namespace hetnet
