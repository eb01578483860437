#pragma once

#include <string>

namespace kelly::cli {

/// %.17g, with "inf", "-inf" and "nan" for non-finite values.
[[nodiscard]] std::string format_double(double value);

/// Inverse of format_double; throws std::invalid_argument.
[[nodiscard]] double parse_double(const std::string& text);

}  // namespace kelly::cli
