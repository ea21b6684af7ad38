#pragma once

#include <string>
#include <string_view>

namespace rme {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict parse of a full decimal field; throws std::invalid_argument.
double parse_double(std::string_view text);

}  // namespace rme
