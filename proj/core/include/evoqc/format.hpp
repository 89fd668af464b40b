#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace evoqc {

// Shortest decimal string that round-trips to the same double. Every file
// the library writes goes through this so outputs are byte-reproducible.
inline std::string format_double(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

// Strict double parse: the whole of `text` must be consumed.
inline bool parse_double(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

// Strict int parse: the whole of `text` must be consumed.
inline bool parse_int(const std::string& text, int& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace evoqc
