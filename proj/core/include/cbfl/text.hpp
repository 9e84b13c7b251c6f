#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Locale-independent number formatting and parsing.
namespace cbfl::text {

// Shortest representation that parses back to the identical double.
std::string shortest(double v);

// 12 significant digits, '.' separator. Used for every CSV cell.
std::string sig12(double v);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<std::uint64_t> parse_u64(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on runs of spaces/tabs.
std::vector<std::string_view> split_ws(std::string_view s);

}  // namespace cbfl::text
