#include "dcreg/text.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "dcreg/error.hpp"

namespace dcreg {

std::string_view trim(std::string_view s) noexcept {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(std::string_view s) {
  s = trim(s);
  if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || std::isnan(v))
    fail(ErrorCode::InvalidValue, "not a number: '" + std::string(s) + "'");
  return v;
}

std::string format_double(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "+inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace dcreg
