#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

namespace lenseq {

// Arbitrary-precision integers and rationals. Rational values are kept
// canonical: reduced to lowest terms, denominator positive.
using Int = mpz_class;
using Rational = mpq_class;

// Builds a canonical rational from numerator and denominator.
// Throws DivisionByZero when den == 0.
Rational make_rational(const Int& num, const Int& den);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Requires is_integer(q).
Int to_int(const Rational& q);

// Floor of sqrt(n); requires n >= 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n);

// Exact square root of a rational, when one exists.
std::optional<Rational> rational_sqrt(const Rational& q);

// Writes n = m^2 * d with d square-free, n > 0. Returns {d, m}.
// Exact for all n whose non-square part is < 10^18 after stripping prime
// factors below 10^6; larger stubborn composites are returned as-is.
std::pair<Int, Int> square_free_decompose(const Int& n);

// Parses "p" or "p/q" with optional leading sign. Throws ParseError on
// malformed input, DivisionByZero on q == 0.
Rational parse_rational(const std::string& text);

// Formats as "p" or "p/q" in lowest terms.
std::string format_rational(const Rational& q);

}  // namespace lenseq
