#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "invprob/error.hpp"

// Boost 1.74's rational-vs-integer equality recurses forever under C++20's rewritten
// comparisons. Exact-match overloads take precedence and route through rational == rational.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long long b) { return a == rational<std::int64_t>(b); }
}  // namespace boost

namespace invprob {

using Rational = boost::rational<std::int64_t>;

/// Always "p/q", including integers ("1/1") so the rendering is uniform.
inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    std::int64_t num = std::stoll(std::string(text.substr(0, slash)));
    std::int64_t den = slash == std::string_view::npos ? 1 : std::stoll(std::string(text.substr(slash + 1)));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'");
  }
}

}  // namespace invprob
