#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>

#include "parallels/utf8.hpp"

using namespace parallels;

TEST_CASE("encode/decode round-trips boundary code points") {
  const char32_t cases[] = {0x1,    0x7F,   0x80,    0x7FF,    0x800,
                            0x5D0,  0x5EA,  0xFFFF,  0x10000,  0x10FFFF};
  for (char32_t cp : cases) {
    std::string bytes;
    utf8::encode(cp, bytes);
    size_t pos = 0;
    CHECK(utf8::decode(bytes, pos) == static_cast<int32_t>(cp));
    CHECK(pos == bytes.size());
  }
}

TEST_CASE("decode rejects malformed input and stays on the offending byte") {
  auto rejects = [](const std::string& bytes) {
    size_t pos = 0;
    const int32_t got = utf8::decode(bytes, pos);
    CHECK(got == -1);
    CHECK(pos == 0);
  };
  rejects("\xFF");               // invalid lead byte
  rejects("\x80");               // bare continuation
  rejects("\xC3");               // truncated two-byte sequence
  rejects("\xE0\x80\x80");       // overlong
  rejects("\xC0\xAF");           // overlong slash
  rejects("\xED\xA0\x80");       // surrogate
  rejects("\xF4\x90\x80\x80");   // above U+10FFFF
}

TEST_CASE("decode_all reports the byte offset of the bad sequence") {
  const std::string text = std::string("ab") + "\xC3";
  CHECK_THROWS_WITH_AS(utf8::decode_all(text),
                       doctest::Contains("2"), std::invalid_argument);
}

TEST_CASE("length counts code points") {
  CHECK(utf8::length("") == 0);
  CHECK(utf8::length("abc") == 3);
  CHECK(utf8::length("שלום") == 4);
}

TEST_CASE("random strings survive encode_all/decode_all") {
  std::mt19937 rng(20260816);
  std::uniform_int_distribution<uint32_t> any(1, 0x10FFFF);
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string original;
    for (int i = 0; i < 40; ++i) {
      uint32_t cp = any(rng);
      if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0x5D0;  // skip surrogates
      original.push_back(cp);
    }
    CHECK(utf8::decode_all(utf8::encode_all(original)) == original);
  }
}
