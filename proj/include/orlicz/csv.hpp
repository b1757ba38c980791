#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace orlicz::csv {

/// 17 significant digits; +inf as `inf`, -inf as `-inf`.
std::string format_number(double v);

/// Inverse of format_number; throws orlicz::Error on malformed input or NaN.
double parse_number(std::string_view text);

std::vector<std::string_view> split_row(std::string_view line);

/// Writes `content` to `path` in binary mode; throws orlicz::Error on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace orlicz::csv
