#pragma once

#include <string>
#include <string_view>

namespace eff {

// Shortest round-trip spelling; always contains '.', 'e', "inf" or "nan" so
// the result never reads back as an integer.
std::string format_float(double value);

// Double-quoted with the escapes the lexer understands.
std::string quote_string(std::string_view text);

}  // namespace eff
