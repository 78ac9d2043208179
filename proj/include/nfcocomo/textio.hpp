#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfcocomo {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_whitespace(std::string_view s);

std::optional<double> parse_double(std::string_view token);
std::optional<int> parse_int(std::string_view token);

// Shortest round-trip decimal representation; byte-stable for a given value.
std::string format_double(double value);

}  // namespace nfcocomo
