#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace jetlab {

/// Exact arbitrary-precision rational scalar. GMP keeps values canonical
/// (positive denominator, coprime) after every arithmetic operation.
using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw ParseError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q" or "p". Rejects zero denominators and malformed input.
inline Rational rat_parse(const std::string& text) {
  Rational q;
  try {
    q = Rational(text);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: '" + text + "'");
  }
  if (q.get_den() == 0) throw ParseError("rational with zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

/// Serializes as "p/q", or "p" when the denominator is 1.
inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace jetlab
