#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace bohm {

/// Shortest-round-trip-safe text for a double: 17 significant digits,
/// `nan` for NaN, `.` as decimal separator regardless of locale.
inline std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

}  // namespace bohm
