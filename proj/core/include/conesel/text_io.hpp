#pragma once

#include <string>
#include <string_view>

namespace conesel {

/// Shortest decimal text that parses back to exactly `value`; always uses '.'
/// regardless of the global locale.
std::string format_number(double value);

/// Locale-independent parse of a whole token. Throws ParseError.
double parse_number(std::string_view token);
long long parse_integer(std::string_view token);

}  // namespace conesel
