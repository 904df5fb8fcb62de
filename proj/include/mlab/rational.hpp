#pragma once

#include <gmpxx.h>

#include <string>

namespace mlab {

// Exact rational scalar used throughout the core. Verdicts hinge on strict
// vs. weak inequalities, so nothing on a decision path may round.
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (q != 0) in base 10. Throws ParseError otherwise.
Rational parse_rational(const std::string& text);

// Canonical "p" or "p/q" form, never floating point.
std::string to_string(const Rational& value);

}  // namespace mlab
