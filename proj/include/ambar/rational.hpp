#pragma once

#include <gmpxx.h>

#include <string>

namespace ambar {

/// Arbitrary-precision rational scalar.
using Rational = mpq_class;

/// Exact conversion; every finite double is a dyadic rational.
inline Rational to_rational(double v) { return Rational(v); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// "p" or "p/q" in lowest terms.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "p/q" or a decimal literal such as "-1.25".
Rational parse_rational(const std::string& text);

}  // namespace ambar
