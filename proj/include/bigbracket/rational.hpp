#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bigbracket {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n" or "n/d" (also accepts the unicode minus U+2212).
/// Throws std::invalid_argument on malformed text or a zero denominator.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 is E2 88 92 in UTF-8
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (text[i] != ' ') s.push_back(text[i]);
  }
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](std::string_view part, bool allow_sign) {
    std::size_t start = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace bigbracket
