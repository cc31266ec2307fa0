#include "parallels/utf8.hpp"

#include <stdexcept>

namespace parallels::utf8 {

int32_t decode(std::string_view text, size_t& pos) {
  if (pos >= text.size()) return -1;
  const auto b0 = static_cast<uint8_t>(text[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }

  int len;
  uint32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return -1;
  }
  if (pos + len > text.size()) return -1;

  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<uint8_t>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return -1;
    cp = (cp << 6) | (b & 0x3F);
  }

  static constexpr uint32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < min_for_len[len]) return -1;                 // overlong
  if (cp >= 0xD800 && cp <= 0xDFFF) return -1;          // surrogate
  if (cp > 0x10FFFF) return -1;

  pos += len;
  return static_cast<int32_t>(cp);
}

void encode(char32_t cp, std::string& out) {
  const uint32_t c = cp;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::u32string decode_all(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    const int32_t cp = decode(text, pos);
    if (cp < 0)
      throw std::invalid_argument("invalid UTF-8 at byte " + std::to_string(pos));
    out.push_back(static_cast<char32_t>(cp));
  }
  return out;
}

std::string encode_all(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (const char32_t cp : cps) encode(cp, out);
  return out;
}

size_t length(std::string_view text) {
  size_t n = 0;
  for (size_t i = 0; i < text.size();) {
    const auto b = static_cast<uint8_t>(text[i]);
    i += b < 0x80 ? 1 : (b & 0xE0) == 0xC0 ? 2 : (b & 0xF0) == 0xE0 ? 3 : 4;
    ++n;
  }
  return n;
}

}  // namespace parallels::utf8
