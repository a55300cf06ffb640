#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace freerot {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical text form: "p" or "p/q" with q > 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace freerot
