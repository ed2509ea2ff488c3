#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace sclqm {

using Rational = boost::rational<std::int64_t>;

// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Closed interval of rationals, used where only a bracket is certified.
struct RationalInterval {
  Rational lower;
  Rational upper;

  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
  Rational width() const { return upper - lower; }
};

}  // namespace sclqm
