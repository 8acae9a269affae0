#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace seminf {

/// Exact rational scalar. All linear algebra in this library is exact;
/// mpq_class gives canonicalized arbitrary-precision fractions.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Renders a rational as "n" or "n/d" (canonical form, d > 0).
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "n" or "n/d". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
    if (!ok) throw std::invalid_argument("rat_from_string: bad char in '" + s + "'");
  }
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_from_string: '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("rat_from_string: zero denominator");
  r.canonicalize();
  return r;
}

}  // namespace seminf
