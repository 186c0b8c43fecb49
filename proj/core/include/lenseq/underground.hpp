#pragma once

#include <optional>
#include <vector>

#include "lenseq/sequence.hpp"

namespace lenseq {

// ^s(p,q)^k. Describes the sequence through its factor layer: f[0] = p,
// f[1] = q, and f alternately steps with k (even index) and s (odd index):
// f[m] = k*f[m-1] - f[m-2] for even m, s*f[m-1] - f[m-2] for odd m.
// s and k stay rational in general; the integer calculus requires both
// integral.
struct UndergroundSymbol {
  Rational s, k;
  Int p, q;

  bool is_integral() const { return is_integer(s) && is_integer(k); }

  friend bool operator==(const UndergroundSymbol& x, const UndergroundSymbol& y) {
    return x.s == y.s && x.k == y.k && x.p == y.p && x.q == y.q;
  }
};

// (p, q) and (-p, -q) describe the same sequence; the canonical choice
// makes the first four factors sum positive (a zero sum defers to the
// first nonzero factor).
UndergroundSymbol normalize_symbol(UndergroundSymbol sym);

// [a,b;k]: shorthand for the symbol ^(a+b)(1,b)^k, available when p = 1.
struct SeedLabel {
  Rational a, b, k;
};

// The factor layer of an integral sequence: integer terms f with
// b[n] = f[n-1]*f[n] in the paired sequence above it. Index n maps to
// terms[n - lo_index]; s and k are the alternating step multipliers.
struct UndergroundWindow {
  std::vector<Int> terms;
  int origin_offset = 0;  // position of f[0] in terms
  Int s, k;

  int lo() const { return -origin_offset; }
  int hi() const { return lo() + static_cast<int>(terms.size()) - 1; }
  const Int& at(int n) const;
};

// Seed ((sp - q)p, pq, q(kq - p)) occupying positions (b[0], b[1], b[2]);
// the middle term pq sits over the factor pair (f[0], f[1]) = (p, q).
Seed symbol_to_seed(const UndergroundSymbol& sym);

// alpha = ks - 2; beta = k q^2 + s p^2 - ks p q evaluated at the seed's
// central factor pair.
LensConstants symbol_constants(const UndergroundSymbol& sym);

// Recovers the symbol of an integer seed occupying the symbol positions
// (b[0], b[1], b[2]): p = gcd(a, b) up to sign, q = b/p, s = (a + b)/p^2,
// k = (b + c)/q^2 (s, k may come out rational). The result reproduces the
// seed exactly; of the two sign choices, the one whose first four factors
// sum positive (ties broken by the first nonzero factor) is returned.
// Throws ZeroMiddleTerm when b = 0, NotIntegral for fractional entries,
// NotPrimitive when |b| != gcd(a,b)*gcd(b,c).
UndergroundSymbol seed_to_symbol(const Seed& seed);

// gcd(p,q) = gcd(p,k) = gcd(s,q) = 1; requires an integral symbol.
bool symbol_is_primitive(const UndergroundSymbol& sym);

// Runs the alternating recurrence across f-indices [-backward, 1+forward].
// Requires an integral symbol.
UndergroundWindow underground_extend(const UndergroundSymbol& sym, int forward, int backward);

// Pairs adjacent factors: b[n] = f[n-1]*f[n] for every n with both factors
// in the window; constants come from the symbol.
SequenceWindow pair_factors(const UndergroundWindow& f);

// Inverse of pair_factors for an integral window of at least three terms:
// rebuilds the factor layer from gcds of adjacent terms, threads signs so
// the products reproduce the window exactly, then normalizes the global
// sign so the sum of the four factors around the origin is positive (the
// first nonzero factor from the left breaks a zero-sum tie).
// Throws NonIntegerSequence for fractional terms, NotPrimitive when the
// window's triple gcd exceeds 1.
UndergroundWindow factorize(const SequenceWindow& w);

// |f[n]| = gcd(b[n], b[n+1]) for every position where both sides exist.
bool factor_gcd_check(const SequenceWindow& w, const UndergroundWindow& f);

// f[n+2] + f[n-2] == alpha * f[n] across the window.
bool factor_stride_check(const UndergroundWindow& f, const Rational& alpha);

// f[n+3]*f[n] - f[n+1]*f[n+2] == -beta across the window.
bool factor_determinant_check(const UndergroundWindow& f, const Rational& beta);

// b[n] + b[n+1] == m * f[n]^2 where m alternates: s for even n, k for odd.
bool square_sum_check(const SequenceWindow& w, const UndergroundWindow& f);

// (f[n+1], -f[n-1]) is an eigenvector of [[b[n+1], b[n+2]], [b[n-1], b[n]]]
// with eigenvalue beta.
bool eigenvector_check(const SequenceWindow& w, const UndergroundWindow& f, int n);

// Sufficient test on an integer seed: b | ac and b^2 | (ab + bc + ca).
bool divisibility_sufficient(const Seed& seed);

// Exact characterization of integral primitive seeds:
// gcd(a,b)*gcd(b,c) = |b| * gcd(a,b,c), gcd(a,b)^2 | (a+b)*g and
// gcd(b,c)^2 | (b+c)*g with g = gcd(a,b,c).
bool divisibility_exact(const Seed& seed);

// The label form when |p| = 1 (after a global sign flip if p = -1).
std::optional<SeedLabel> symbol_to_label(const UndergroundSymbol& sym);

UndergroundSymbol label_to_symbol(const SeedLabel& label);

// Seed (a, b, b(bk - 1)) at positions (b[0], b[1], b[2]).
Seed label_to_seed(const SeedLabel& label);

// alpha = (a + b)k - 2, beta = (a + b) - abk.
LensConstants label_constants(const SeedLabel& label);

}  // namespace lenseq
