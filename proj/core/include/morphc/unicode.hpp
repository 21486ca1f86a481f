#pragma once

#include <string>
#include <string_view>

namespace morphc {

/// Lexical and surface strings are sequences of Unicode scalar values.
using Text = std::u32string;
using TextView = std::u32string_view;

/// Throws std::invalid_argument on malformed UTF-8.
Text decode_utf8(std::string_view bytes);

std::string encode_utf8(TextView text);
std::string encode_utf8(char32_t c);

}  // namespace morphc
