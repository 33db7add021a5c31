#pragma once

// Exact rational arithmetic used by every decision procedure in the library.
//
// Rational is GMP's mpq_class. Values produced by arithmetic are always in
// lowest terms with a positive denominator; values built from strings must go
// through parse_rational(), which canonicalizes.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tvd {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses `p/q` or an integer `p` (optional leading '-').
/// Throws std::invalid_argument on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical `p/q` rendering; integers print without a denominator.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational dot(const RationalVector& lhs, const RationalVector& rhs);

Rational sum(const RationalVector& values);

}  // namespace tvd
