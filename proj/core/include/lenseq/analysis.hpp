#pragma once

#include <optional>

#include "lenseq/quadext.hpp"
#include "lenseq/sequence.hpp"
#include "lenseq/underground.hpp"

namespace lenseq {

// Larger root of t^2 - alpha t + 1 = 0: (alpha + sqrt(alpha^2 - 4))/2.
// Real only for |alpha| >= 2; otherwise throws ComplexLambda.
QuadExt char_constant(const Rational& alpha);

// b[n] = w lambda^n + conj(w) conj(lambda)^n + gamma. The two power terms
// are conjugate, so every value collapses back to a rational.
struct BinetForm {
  QuadExt lambda, lambda_conj;
  QuadExt w, w_conj;
  Rational gamma;  // -beta/(alpha - 2)
};

// w = (a - 2b + c)/(2(alpha-2)) + (c - a)/(2(alpha^2-4)) * sqrt(alpha^2-4).
// Throws DegenerateAlpha at alpha = +-2, ComplexLambda for alpha^2 < 4.
BinetForm binet_form(const Seed& seed);

// Exact evaluation at index n (negative indices allowed; lambda is a unit).
Rational binet_eval(const BinetForm& f, long n);

// Sum of 1/b[n] over the whole bi-infinite sequence:
// sqrt(alpha^2 - 4)/(-beta), exactly zero at alpha = 2. Throws DivergentSum
// when alpha < 2 (the terms do not shrink) or beta = 0 (the backward tail
// blows up).
QuadExt reciprocal_sum_closed(const LensConstants& k);

// Sum of 1/b[n] over the central window [-N, N]. A zero term in the window
// throws DivisionByZero.
Rational reciprocal_sum_partial(const Seed& seed, int N);

// Smallest period p <= max_period, verified across three full cycles.
std::optional<int> detect_period(const Seed& seed, int max_period);

// x[n] = a w^n + b w^-n + c satisfies
// x[n+2] = (w + 1/w) x[n+1] - x[n] + c (2 - w - 1/w); checks the rule over
// [n_lo, n_hi] for the given field elements.
bool shifted_power_rule(const QuadExt& a, const QuadExt& b, const QuadExt& c,
                        const QuadExt& w, int n_lo, int n_hi);

// One-parameter families with closed forms for everything: seed, symbol,
// constants, lens radius, growth constant, and the one-tail reciprocal sum.
// The same values recomputed through the general machinery sit beside them.
struct FamilyReport {
  int id;
  Int n;
  Seed seed;
  UndergroundSymbol closed_symbol, general_symbol;  // both canonical sign
  LensConstants closed_constants, general_constants;
  Rational closed_R, general_R;
  QuadExt closed_lambda, general_lambda;
  QuadExt closed_tail, general_tail;

  bool consistent() const {
    return closed_symbol == general_symbol && closed_constants == general_constants &&
           closed_R == general_R && closed_lambda == general_lambda &&
           closed_tail == general_tail;
  }
};

// id 1: (n,1,n), n >= 2          tail over k >= 0
// id 2: (1,1,n), n >= 2          tail over k >= 0
// id 3: (2,2,n), n >= 3          tail over k >= 0
// id 4: (n,-1,n), n >= 4         tail over k >= 1
// id 5: (0,1,n), n >= 4          tail over k >= 0
// Out-of-range id or n throws OutOfRange.
FamilyReport parametric_family(int id, const Int& n);

}  // namespace lenseq
