// atlas - learning program abstractions for example-guided synthesis
// UTF-8 <-> code point conversion used at the I/O boundary.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atlas {

/// Strings are sequences of Unicode code points; every character constant in a
/// predicate is a code point, which keeps predicate arguments uniformly integral.
using Text = std::u32string;

class utf8_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Text from_utf8(std::string_view in) {
  Text out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    auto lead = static_cast<unsigned char>(in[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      cp = lead & 0x1F;
      extra = 1;
    } else if ((lead & 0xF0) == 0xE0) {
      cp = lead & 0x0F;
      extra = 2;
    } else if ((lead & 0xF8) == 0xF0) {
      cp = lead & 0x07;
      extra = 3;
    } else {
      throw utf8_error("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= in.size()) throw utf8_error("truncated UTF-8 sequence at offset " + std::to_string(i));
      auto cont = static_cast<unsigned char>(in[i + k]);
      if ((cont & 0xC0) != 0x80) throw utf8_error("invalid UTF-8 continuation at offset " + std::to_string(i + k));
      cp = (cp << 6) | (cont & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string to_utf8(const Text& in) {
  std::string out;
  out.reserve(in.size());
  for (char32_t cp : in) append_utf8(out, cp);
  return out;
}

inline Text operator""_t(const char* s, std::size_t n) { return from_utf8(std::string_view(s, n)); }

}  // namespace atlas
