#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dcreg {

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split(std::string_view s, char sep);

/// Strict decimal parse of the whole string; accepts "+inf"/"inf".
double parse_double(std::string_view s);

/// Shortest representation that round-trips bit-exactly; +inf prints "+inf".
std::string format_double(double v);

}  // namespace dcreg
