#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "botbuster/errors.hpp"

namespace botbuster {

/// Shortest decimal form that parses back to the identical double; "inf"
/// and "nan" spelled out so CSV consumers get a stable token.
inline std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view text, const std::string& what)
{
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorCategory::Parse, "invalid " + what + ": '" + std::string(text) + "'");
    }
    return v;
}

inline std::uint64_t parse_u64(std::string_view text, const std::string& what)
{
    std::uint64_t v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorCategory::Parse, "invalid " + what + ": '" + std::string(text) + "'");
    }
    return v;
}

} // namespace botbuster
