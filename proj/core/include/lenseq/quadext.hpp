#pragma once

#include <string>

#include "lenseq/numbers.hpp"

namespace lenseq {

// Exact element of a real quadratic field: a + b*sqrt(d).
//
// Canonical form: d is square-free and >= 2 whenever b != 0, and d == 0
// whenever b == 0. Square factors of the radicand are folded into b on
// construction, and radicands 0 and 1 collapse into the rational part.
// Arithmetic between two elements with different nonzero discriminants
// throws MixedDiscriminant; everything else stays inside one field.
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), d_(0) {}
  QuadExt(const Rational& a) : a_(a), b_(0), d_(0) {}  // NOLINT: implicit
  QuadExt(long a) : a_(a), b_(0), d_(0) {}             // NOLINT: implicit
  QuadExt(const Rational& a, const Rational& b, const Int& d);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  const Int& discriminant() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadExt conj() const;     // a - b*sqrt(d)
  QuadExt inverse() const;  // throws DivisionByZero on zero
  Rational norm() const;    // a^2 - b^2 d
  QuadExt pow(long n) const;

  QuadExt operator-() const;
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

 private:
  // Shared field for a binary operation; throws MixedDiscriminant when both
  // sides carry different nonzero radicands.
  static Int merge_discriminant(const QuadExt& x, const QuadExt& y);

  Rational a_, b_;
  Int d_;
};

// Exact square root of a nonnegative rational as a field element:
// sqrt(p/q) = sqrt(pq)/q. Collapses to a rational when p/q is a square.
QuadExt sqrt_rational(const Rational& x);

// Nearest double to a + b*sqrt(d), evaluated with at least precision_bits
// of working precision before the final rounding.
double quad_to_double(const QuadExt& x, int precision_bits = 128);

// Correctly rounded conversion (mpq_get_d truncates; this rounds to nearest).
double rational_to_double(const Rational& q);

// Decimal expansion with the given number of significant digits.
std::string quad_to_decimal(const QuadExt& x, int digits);

// "p/q" for rationals, "p/q + r/s*sqrt(D)" / "p/q - r/s*sqrt(D)" otherwise.
std::string format_quadext(const QuadExt& x);

// Inverse of format_quadext; whitespace around tokens is ignored.
QuadExt parse_quadext(const std::string& text);

}  // namespace lenseq
