#include "lenseq/quadext.hpp"

#include <cstdio>  // before mpfr.h: enables mpfr_asprintf
#include <mpfr.h>

#include <cctype>
#include <sstream>

#include "lenseq/errors.hpp"

namespace lenseq {

QuadExt::QuadExt(const Rational& a, const Rational& b, const Int& d) : a_(a), b_(b), d_(d) {
  if (b_ == 0) {
    d_ = 0;
    return;
  }
  if (d_ < 0) fail(ErrorCode::NegativeRadicand, "sqrt(" + d_.get_str() + ")");
  if (d_ == 0) {
    b_ = 0;
    return;
  }
  auto [sf, root] = square_free_decompose(d_);
  if (root != 1) {
    b_ *= root;
    d_ = sf;
  }
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
}

Int QuadExt::merge_discriminant(const QuadExt& x, const QuadExt& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
  fail(ErrorCode::MixedDiscriminant,
       "sqrt(" + x.d_.get_str() + ") vs sqrt(" + y.d_.get_str() + ")");
}

QuadExt QuadExt::conj() const {
  QuadExt r = *this;
  r.b_ = -r.b_;
  return r;
}

Rational QuadExt::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

QuadExt QuadExt::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  // (a + b sqrt(d))^-1 = conj / norm; norm != 0 since d is not a square.
  Rational n = norm();
  QuadExt r = conj();
  r.a_ /= n;
  r.b_ /= n;
  return r;
}

QuadExt QuadExt::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  QuadExt acc(Rational(1));
  QuadExt base = *this;
  unsigned long e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

QuadExt QuadExt::operator-() const {
  QuadExt r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  d_ = merge_discriminant(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  d_ = merge_discriminant(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  Int d = merge_discriminant(*this, o);
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = b_ == 0 ? Int(0) : d;
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) { return *this *= o.inverse(); }

namespace {

// Evaluates x into rop at rop's precision.
void quad_to_mpfr(mpfr_t rop, const QuadExt& x) {
  if (x.is_rational()) {
    mpfr_set_q(rop, x.rational_part().get_mpq_t(), MPFR_RNDN);
    return;
  }
  mpfr_set_z(rop, x.discriminant().get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(rop, rop, MPFR_RNDN);
  mpfr_mul_q(rop, rop, x.radical_part().get_mpq_t(), MPFR_RNDN);
  mpfr_add_q(rop, rop, x.rational_part().get_mpq_t(), MPFR_RNDN);
}

}  // namespace

QuadExt sqrt_rational(const Rational& x) {
  if (x < 0) fail(ErrorCode::NegativeRadicand, "sqrt of " + format_rational(x));
  if (x == 0) return QuadExt(Rational(0));
  const Int& p = x.get_num();
  const Int& q = x.get_den();
  return QuadExt(Rational(0), make_rational(1, q), p * q);
}

double quad_to_double(const QuadExt& x, int precision_bits) {
  if (precision_bits < 64) precision_bits = 64;
  mpfr_t t;
  mpfr_init2(t, precision_bits + 32);
  quad_to_mpfr(t, x);
  double r = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return r;
}

double rational_to_double(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 96);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  double r = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return r;
}

std::string quad_to_decimal(const QuadExt& x, int digits) {
  if (digits < 1) digits = 1;
  mpfr_t t;
  mpfr_init2(t, static_cast<mpfr_prec_t>(digits * 4 + 64));
  quad_to_mpfr(t, x);
  char* s = nullptr;
  // %.*Rg keeps the output human-readable for both tiny and huge values.
  mpfr_asprintf(&s, "%.*Rg", digits, t);
  std::string out(s);
  mpfr_free_str(s);
  mpfr_clear(t);
  return out;
}

std::string format_quadext(const QuadExt& x) {
  if (x.is_rational()) return format_rational(x.rational_part());
  std::ostringstream os;
  os << format_rational(x.rational_part());
  Rational b = x.radical_part();
  if (b < 0) {
    os << " - " << format_rational(-b);
  } else {
    os << " + " << format_rational(b);
  }
  os << "*sqrt(" << x.discriminant().get_str() << ")";
  return os.str();
}

QuadExt parse_quadext(const std::string& text) {
  // Grammar: rational [("+"|"-") rational "*sqrt(" integer ")"]
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto body = s.find("*sqrt(");
  if (body == std::string::npos) return QuadExt(parse_rational(s));
  if (s.empty() || s.back() != ')') fail(ErrorCode::ParseError, "bad radical '" + text + "'");
  std::string d_str = s.substr(body + 6, s.size() - body - 7);
  // Split off the radical coefficient at the last +/- that is not a leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body; i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) fail(ErrorCode::ParseError, "bad radical '" + text + "'");
  Rational a = parse_rational(s.substr(0, split));
  Rational b = parse_rational(s.substr(split + 1, body - split - 1));
  if (s[split] == '-') b = -b;
  return QuadExt(a, b, to_int(parse_rational(d_str)));
}

}  // namespace lenseq
