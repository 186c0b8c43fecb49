#include "lenseq/underground.hpp"

#include <deque>

#include "lenseq/errors.hpp"

namespace lenseq {

const Int& UndergroundWindow::at(int n) const {
  if (n < lo() || n > hi()) fail(ErrorCode::OutOfRange, "factor index " + std::to_string(n));
  return terms[static_cast<std::size_t>(n - lo())];
}

namespace {

// Step multiplier at factor index m: k on even positions, s on odd ones.
const Rational& coef_at(const Rational& s, const Rational& k, long m) {
  return (m % 2 == 0) ? k : s;
}

// Canonical sign: the four factors starting at index max(lo, min(0, hi-3))
// must sum positive; a zero sum defers to the first nonzero of the four.
bool needs_flip(const std::vector<Rational>& f, int lo) {
  int hi = lo + static_cast<int>(f.size()) - 1;
  int c = std::max(lo, std::min(0, hi - 3));
  Rational sum = 0;
  const Rational* first_nonzero = nullptr;
  for (int m = c; m <= std::min(hi, c + 3); ++m) {
    const Rational& v = f[static_cast<std::size_t>(m - lo)];
    sum += v;
    if (!first_nonzero && v != 0) first_nonzero = &v;
  }
  if (sum != 0) return sum < 0;
  return first_nonzero && *first_nonzero < 0;
}

}  // namespace

Seed symbol_to_seed(const UndergroundSymbol& sym) {
  Rational p(sym.p), q(sym.q);
  return {(sym.s * p - q) * p, p * q, q * (sym.k * q - p)};
}

LensConstants symbol_constants(const UndergroundSymbol& sym) {
  Rational p(sym.p), q(sym.q);
  Rational alpha = sym.k * sym.s - 2;
  Rational beta = sym.k * q * q + sym.s * p * p - sym.k * sym.s * p * q;
  return {alpha, beta};
}

UndergroundSymbol normalize_symbol(UndergroundSymbol sym) {
  std::vector<Rational> f{Rational(sym.p), Rational(sym.q), sym.k * sym.q - sym.p};
  f.push_back(sym.s * f[2] - sym.q);
  if (needs_flip(f, 0)) {
    sym.p = -sym.p;
    sym.q = -sym.q;
  }
  return sym;
}

UndergroundSymbol seed_to_symbol(const Seed& seed) {
  if (!is_integer(seed.a) || !is_integer(seed.b) || !is_integer(seed.c))
    fail(ErrorCode::NotIntegral, "symbol of non-integer seed");
  Int a = seed.a.get_num(), b = seed.b.get_num(), c = seed.c.get_num();
  if (b == 0) fail(ErrorCode::ZeroMiddleTerm, "symbol of seed with zero middle term");
  Int p = gcd(a, b);
  Int q = b / p;
  if (abs(q) != gcd(b, c))
    fail(ErrorCode::NotPrimitive, "middle term is not split by its neighbor gcds");
  UndergroundSymbol sym;
  sym.p = p;
  sym.q = q;
  sym.s = make_rational(a + b, p * p);
  sym.k = make_rational(b + c, q * q);
  // Both (p, q) and (-p, -q) reproduce the seed; pick the canonical sign.
  return normalize_symbol(sym);
}

bool symbol_is_primitive(const UndergroundSymbol& sym) {
  if (!sym.is_integral()) return false;
  Int s = sym.s.get_num(), k = sym.k.get_num();
  return gcd(sym.p, sym.q) == 1 && gcd(sym.p, k) == 1 && gcd(s, sym.q) == 1;
}

UndergroundWindow underground_extend(const UndergroundSymbol& sym, int forward, int backward) {
  if (!sym.is_integral()) fail(ErrorCode::NotIntegral, "extending a fractional symbol");
  if (forward < 0 || backward < 0) fail(ErrorCode::OutOfRange, "negative extension count");
  Int s = sym.s.get_num(), k = sym.k.get_num();
  auto coef = [&](long m) -> const Int& { return (m % 2 == 0) ? k : s; };
  std::deque<Int> f{sym.p, sym.q};
  long lo = 0, hi = 1;
  while (hi < 1 + forward) {
    ++hi;
    f.push_back(coef(hi) * f[f.size() - 1] - f[f.size() - 2]);
  }
  while (lo > -backward) {
    // f[m] = coef(m) f[m-1] - f[m-2] at m = lo+1, solved for the low term.
    f.push_front(coef(lo + 1) * f[0] - f[1]);
    --lo;
  }
  UndergroundWindow w;
  w.terms.assign(f.begin(), f.end());
  w.origin_offset = static_cast<int>(-lo);
  w.s = s;
  w.k = k;
  return w;
}

SequenceWindow pair_factors(const UndergroundWindow& f) {
  if (f.terms.size() < 2) fail(ErrorCode::OutOfRange, "need two factors to pair");
  std::vector<Rational> b;
  for (std::size_t i = 0; i + 1 < f.terms.size(); ++i) {
    b.push_back(Rational(f.terms[i] * f.terms[i + 1]));
  }
  // b-index of the first product is f.lo() + 1.
  int lo = f.lo() + 1;
  Rational alpha = Rational(f.k * f.s) - 2;
  // Anchoring the pair formula at the window edge swaps the roles of the
  // multipliers on odd offsets.
  Rational kk(f.k), ss(f.s);
  if (((f.lo() % 2) + 2) % 2 == 1) std::swap(kk, ss);
  Rational f0(f.terms[0]), f1(f.terms[1]);
  Rational beta = kk * f1 * f1 + ss * f0 * f0 - kk * ss * f0 * f1;
  int origin_offset = -lo;
  if (origin_offset < 0 || origin_offset >= static_cast<int>(b.size())) {
    // The paired window does not cover index 0; re-anchor at its low edge.
    origin_offset = 0;
  }
  return SequenceWindow::from_terms(std::move(b), origin_offset, LensConstants{alpha, beta});
}

UndergroundWindow factorize(const SequenceWindow& w) {
  if (w.size() < 3) fail(ErrorCode::OutOfRange, "need three terms to factor");
  std::vector<Int> b;
  b.reserve(w.terms().size());
  for (const Rational& t : w.terms()) {
    if (!is_integer(t)) fail(ErrorCode::NonIntegerSequence, "factoring " + format_rational(t));
    b.push_back(t.get_num());
  }
  Int g = 0;
  for (const Int& t : b) g = gcd(g, t);
  if (g != 1) fail(ErrorCode::NotPrimitive, "window gcd is " + g.get_str());

  const int blo = w.lo(), bhi = w.hi();
  const int flo = blo - 1, fhi = bhi;
  const int fn = fhi - flo + 1;
  std::vector<Int> f(static_cast<std::size_t>(fn));
  auto F = [&](int m) -> Int& { return f[static_cast<std::size_t>(m - flo)]; };
  auto B = [&](int n) -> const Int& { return b[static_cast<std::size_t>(n - blo)]; };

  // Interior magnitudes from the gcd law; gcd(0,0) = 0 marks the single
  // factor zero under an adjacent pair of zero terms.
  for (int m = blo; m <= bhi - 1; ++m) F(m) = gcd(B(m), B(m + 1));

  const Rational& alpha = w.constants().alpha;
  auto stride_value = [&](int via, int far) -> Int {
    // f[m] = alpha f[m-2] - f[m-4] shifted to the needed edge; exact and
    // sign-correct once the referenced factors are signed.
    Rational v = alpha * Rational(F(via)) - Rational(F(far));
    if (!is_integer(v)) fail(ErrorCode::NotIntegral, "factor stride is fractional");
    return v.get_num();
  };
  // Edge magnitudes divide out of the boundary products. When the adjacent
  // interior factor is zero the product carries no information, so the edge
  // waits until signs are threaded and then follows the stride relation.
  bool left_deferred = false, right_deferred = false;
  if (F(blo) != 0) {
    F(flo) = B(blo) / F(blo);
  } else {
    if (blo + 3 > bhi - 1) fail(ErrorCode::OutOfRange, "window too short to factor edge zeros");
    left_deferred = true;
  }
  if (F(bhi - 1) != 0) {
    F(fhi) = B(bhi) / F(bhi - 1);
  } else {
    if (bhi - 4 < blo) fail(ErrorCode::OutOfRange, "window too short to factor edge zeros");
    right_deferred = true;
  }

  // Thread signs left to right from the first nonzero factor. A zero left
  // factor kills the product constraint, so cross it with the determinant
  // relation f[m] f[m-3] - f[m-1] f[m-2] = -beta.
  int anchor = flo;
  while (anchor <= fhi && F(anchor) == 0) ++anchor;
  if (anchor > fhi) fail(ErrorCode::AllZero, "all factors vanish");
  for (int m = anchor + 1; m <= fhi; ++m) {
    if (F(m) == 0) continue;
    if (F(m - 1) != 0) {
      bool neg = (B(m) < 0) != (F(m - 1) < 0);
      if (neg != (F(m) < 0)) F(m) = -F(m);
    } else {
      if (m - 3 < flo || F(m - 3) == 0)
        fail(ErrorCode::OutOfRange, "window too short to thread signs across zeros");
      Rational v = -w.constants().beta / Rational(F(m - 3));
      if (!is_integer(v) || abs(v.get_num()) != abs(F(m)))
        fail(ErrorCode::NotIntegral, "window is not a factorable lens window");
      F(m) = v.get_num();
    }
  }
  if (left_deferred) F(flo) = stride_value(blo + 1, blo + 3);
  if (right_deferred) F(fhi) = stride_value(bhi - 2, bhi - 4);

  // Every product must land back on the window exactly.
  for (int n = blo; n <= bhi; ++n) {
    if (F(n - 1) * F(n) != B(n))
      fail(ErrorCode::NotIntegral, "window is not a factorable lens window");
  }

  // Step multipliers: f[m] = coef(m) f[m-1] - f[m-2], k on even m, s on odd.
  std::optional<Int> s, k;
  auto record = [&](long m, const Rational& v) {
    if (!is_integer(v)) fail(ErrorCode::NotIntegral, "fractional step multiplier");
    std::optional<Int>& slot = (m % 2 == 0) ? k : s;
    if (slot && *slot != v.get_num())
      fail(ErrorCode::NotIntegral, "inconsistent step multipliers");
    slot = v.get_num();
  };
  for (int m = flo + 2; m <= fhi; ++m) {
    if (F(m - 1) != 0) record(m, make_rational(F(m) + F(m - 2), F(m - 1)));
  }
  if (!s || !k) {
    // One parity can stay hidden behind zeros; s k = alpha + 2 fills it in.
    Rational prod = alpha + 2;
    if (s && *s != 0) {
      record(0, prod / Rational(*s));
    } else if (k && *k != 0) {
      record(1, prod / Rational(*k));
    }
    if (!s || !k) fail(ErrorCode::OutOfRange, "window too short to determine step multipliers");
  }

  std::vector<Rational> fr(f.begin(), f.end());
  if (needs_flip(fr, flo)) {
    for (Int& v : f) v = -v;
  }

  UndergroundWindow out;
  out.terms = std::move(f);
  out.origin_offset = -flo;
  out.s = *s;
  out.k = *k;
  return out;
}

bool factor_gcd_check(const SequenceWindow& w, const UndergroundWindow& f) {
  for (int n = std::max(w.lo(), f.lo()); n <= std::min(w.hi() - 1, f.hi()); ++n) {
    if (abs(f.at(n)) != gcd(to_int(w.at(n)), to_int(w.at(n + 1)))) return false;
  }
  return true;
}

bool factor_stride_check(const UndergroundWindow& f, const Rational& alpha) {
  for (int m = f.lo() + 4; m <= f.hi(); ++m) {
    if (Rational(f.at(m)) + Rational(f.at(m - 4)) != alpha * Rational(f.at(m - 2))) return false;
  }
  return true;
}

bool factor_determinant_check(const UndergroundWindow& f, const Rational& beta) {
  for (int m = f.lo() + 3; m <= f.hi(); ++m) {
    if (Rational(f.at(m) * f.at(m - 3) - f.at(m - 2) * f.at(m - 1)) != -beta) return false;
  }
  return true;
}

bool square_sum_check(const SequenceWindow& w, const UndergroundWindow& f) {
  Rational s(f.s), k(f.k);
  bool any = false;
  for (int n = std::max(w.lo(), f.lo()); n + 1 <= w.hi(); ++n) {
    if (n > f.hi()) break;
    const Rational& m = coef_at(s, k, n + 1);
    if (w.at(n) + w.at(n + 1) != m * Rational(f.at(n) * f.at(n))) return false;
    any = true;
  }
  return any;
}

bool eigenvector_check(const SequenceWindow& w, const UndergroundWindow& f, int n) {
  const Rational& beta = w.constants().beta;
  Rational v1(f.at(n + 1)), v2(-f.at(n - 1));
  Rational r1 = w.at(n + 1) * v1 + w.at(n + 2) * v2;
  Rational r2 = w.at(n - 1) * v1 + w.at(n) * v2;
  return r1 == beta * v1 && r2 == beta * v2;
}

bool divisibility_sufficient(const Seed& seed) {
  if (!is_integer(seed.a) || !is_integer(seed.b) || !is_integer(seed.c))
    fail(ErrorCode::NotIntegral, "criterion on non-integer seed");
  Int a = seed.a.get_num(), b = seed.b.get_num(), c = seed.c.get_num();
  if (b == 0) fail(ErrorCode::ZeroMiddleTerm, "criterion on seed with zero middle term");
  Int ac = a * c;
  Int cross = a * b + b * c + c * a;
  Int b2 = b * b;
  return mpz_divisible_p(ac.get_mpz_t(), b.get_mpz_t()) != 0 &&
         mpz_divisible_p(cross.get_mpz_t(), b2.get_mpz_t()) != 0;
}

bool divisibility_exact(const Seed& seed) {
  if (!is_integer(seed.a) || !is_integer(seed.b) || !is_integer(seed.c))
    fail(ErrorCode::NotIntegral, "criterion on non-integer seed");
  Int a = seed.a.get_num(), b = seed.b.get_num(), c = seed.c.get_num();
  if (b == 0) fail(ErrorCode::ZeroMiddleTerm, "criterion on seed with zero middle term");
  Int g = gcd(gcd(a, b), c);
  Int P = gcd(a, b), Q = gcd(b, c);
  if (P * Q != abs(b) * g) return false;
  Int lhs1 = (a + b) * g, m1 = P * P;
  Int lhs2 = (b + c) * g, m2 = Q * Q;
  return mpz_divisible_p(lhs1.get_mpz_t(), m1.get_mpz_t()) != 0 &&
         mpz_divisible_p(lhs2.get_mpz_t(), m2.get_mpz_t()) != 0;
}

std::optional<SeedLabel> symbol_to_label(const UndergroundSymbol& sym) {
  if (abs(sym.p) != 1) return std::nullopt;
  Rational q(sym.q);
  if (sym.p == -1) q = -q;
  return SeedLabel{sym.s - q, q, sym.k};
}

UndergroundSymbol label_to_symbol(const SeedLabel& label) {
  if (!is_integer(label.b) || !is_integer(label.a + label.b))
    fail(ErrorCode::NotIntegral, "label with fractional factor data");
  UndergroundSymbol sym;
  sym.p = 1;
  sym.q = label.b.get_num();
  sym.s = label.a + label.b;
  sym.k = label.k;
  return sym;
}

Seed label_to_seed(const SeedLabel& label) {
  return {label.a, label.b, label.b * (label.b * label.k - 1)};
}

LensConstants label_constants(const SeedLabel& label) {
  Rational ab = label.a + label.b;
  return {ab * label.k - 2, ab - label.a * label.b * label.k};
}

}  // namespace lenseq
