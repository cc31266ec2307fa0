#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace parallels::utf8 {

// Decodes the code point starting at text[pos]. On success advances pos past
// the sequence and returns the code point; returns -1 on malformed input
// (invalid lead byte, truncated sequence, overlong form, surrogate, > U+10FFFF)
// and leaves pos at the offending byte.
int32_t decode(std::string_view text, size_t& pos);

// Appends the UTF-8 encoding of cp to out.
void encode(char32_t cp, std::string& out);

// Decodes a whole string; throws std::invalid_argument with the byte offset
// on malformed input.
std::u32string decode_all(std::string_view text);

std::string encode_all(std::u32string_view cps);

// Number of code points, assuming valid UTF-8.
size_t length(std::string_view text);

}  // namespace parallels::utf8
