#include "lenseq/numbers.hpp"

#include <cctype>

#include "lenseq/errors.hpp"

namespace lenseq {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedDiscriminant: return "MixedDiscriminant";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::NonSquareDiscriminant: return "NonSquareDiscriminant";
    case ErrorCode::ZeroMiddleTerm: return "ZeroMiddleTerm";
    case ErrorCode::ZeroDenominatorTerm: return "ZeroDenominatorTerm";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::NonIntegerSequence: return "NonIntegerSequence";
    case ErrorCode::ComplexLambda: return "ComplexLambda";
    case ErrorCode::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorCode::DivergentSum: return "DivergentSum";
    case ErrorCode::SingularConfiguration: return "SingularConfiguration";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::DegenerateSeed: return "DegenerateSeed";
    case ErrorCode::NotRenderable: return "NotRenderable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Int to_int(const Rational& q) {
  if (!is_integer(q)) fail(ErrorCode::NotIntegral, format_rational(q) + " is not an integer");
  return q.get_num();
}

Int isqrt(const Int& n) {
  if (n < 0) fail(ErrorCode::NegativeRadicand, "isqrt of negative " + n.get_str());
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Int& num = q.get_num();
  const Int& den = q.get_den();
  if (!is_perfect_square(num) || !is_perfect_square(den)) return std::nullopt;
  return make_rational(isqrt(num), isqrt(den));
}

std::pair<Int, Int> square_free_decompose(const Int& n) {
  if (n <= 0) fail(ErrorCode::NegativeRadicand, "square-free part of non-positive " + n.get_str());
  Int d = 1;  // square-free accumulator
  Int m = 1;  // extracted square root factor
  Int rest = n;

  auto strip = [&](const Int& p) {
    unsigned long e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++e;
    }
    if (e == 0) return;
    for (unsigned long i = 0; i + 1 < e; i += 2) m *= p;
    if (e % 2 == 1) d *= p;
  };

  strip(2);
  for (Int p = 3; p * p <= rest && p <= 1000000; p += 2) strip(p);

  if (rest > 1) {
    // All prime factors of rest now exceed 10^6, so below 10^18 it has at
    // most two of them and cannot hide a square other than rest itself.
    if (is_perfect_square(rest)) {
      m *= isqrt(rest);
    } else {
      // Prime, or a product of distinct large primes: square-free below
      // 10^18. Beyond that a square of a >10^6 prime could slip through.
      d *= rest;
    }
  }
  return {d, m};
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
  auto slash = s.find('/');
  std::string num_s = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den_s = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  if (!valid(num_s) || !valid(den_s)) fail(ErrorCode::ParseError, "bad rational '" + text + "'");
  // mpz rejects an explicit plus sign.
  if (num_s[0] == '+') num_s.erase(0, 1);
  if (den_s[0] == '+') den_s.erase(0, 1);
  return make_rational(Int(num_s), Int(den_s));
}

std::string format_rational(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace lenseq
