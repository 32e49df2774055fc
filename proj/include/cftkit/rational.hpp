#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cftkit {

using Integer = mpz_class;
/// GMP rationals are kept canonical (lowest terms, positive denominator) by
/// every arithmetic operation; values built by hand go through make_rational.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Parses "p/q", "p" or "-p/q". Throws UsageError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q);

bool fits_long(const Integer& z);

Integer to_integer(__int128 v);

}  // namespace cftkit
