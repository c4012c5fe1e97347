#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace slopelab {

// Expression templates off: values are stored in containers and returned from
// lambdas, where deferred expressions would dangle or fail to deduce.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

/// Converts an integral rational, throwing when it is not.
inline Integer to_integer(const Rational& q, const char* what = "value") {
  if (!is_integral(q)) {
    throw StructuralError(std::string(what) + " is not integral: " + q.str());
  }
  return numerator_of(q);
}

/// "p/q" or "p" when q == 1.
inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (text.empty() || slash == 0 || (slash != std::string::npos && slash + 1 == text.size())) {
    throw StructuralError("not a rational number: '" + text + "'");
  }
  Integer num;
  Integer den = 1;
  try {
    num = Integer(text.substr(0, slash));
    if (slash != std::string::npos) den = Integer(text.substr(slash + 1));
  } catch (const std::runtime_error&) {
    throw StructuralError("not a rational number: '" + text + "'");
  }
  if (den == 0) throw DomainError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

inline Integer ipow(const Integer& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Integer binomial(const Integer& n, unsigned k) {
  if (n < 0) return 0;
  if (n < k) return 0;
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

}  // namespace slopelab
