#pragma once

#include <optional>
#include <vector>

#include "lenseq/numbers.hpp"

namespace lenseq {

// Three consecutive terms (b[-1], b[0], b[1]); b is the middle one and must
// be nonzero for any constants to exist.
struct Seed {
  Rational a, b, c;
};

// The invariants alpha and beta of a lens sequence. Every window of the
// sequence satisfies b[n] = alpha*b[n-1] - b[n-2] + beta, and translating
// the window leaves both constants unchanged.
struct LensConstants {
  Rational alpha, beta;

  friend bool operator==(const LensConstants& x, const LensConstants& y) {
    return x.alpha == y.alpha && x.beta == y.beta;
  }
};

// alpha = (ab + bc + ca)/b^2 - 1, beta = (b^2 - ac)/b.
// Throws ZeroMiddleTerm when seed.b == 0.
LensConstants constants_from_seed(const Seed& seed);

// A finite contiguous slice of a bi-infinite sequence. Logical index n maps
// to terms()[n - lo()]; the origin term b[0] always lies inside the window.
class SequenceWindow {
 public:
  // origin_offset = position of b[0] inside terms. When no constants are
  // given they are derived from the first triple with nonzero middle term.
  static SequenceWindow from_terms(std::vector<Rational> terms, int origin_offset,
                                   std::optional<LensConstants> constants = std::nullopt);

  int lo() const { return -origin_offset_; }
  int hi() const { return lo() + static_cast<int>(terms_.size()) - 1; }
  int size() const { return static_cast<int>(terms_.size()); }

  const Rational& at(int n) const;  // logical index; throws OutOfRange
  const std::vector<Rational>& terms() const { return terms_; }
  int origin_offset() const { return origin_offset_; }
  const LensConstants& constants() const { return constants_; }

 private:
  SequenceWindow(std::vector<Rational> terms, int origin_offset, LensConstants constants)
      : terms_(std::move(terms)), origin_offset_(origin_offset), constants_(constants) {}

  std::vector<Rational> terms_;
  int origin_offset_;
  LensConstants constants_;
};

// Grows the seed into the window [-1-backward, 1+forward] using the
// two-term linear step in both directions.
SequenceWindow extend(const Seed& seed, int forward, int backward);

// Same terms, relabeled so the term at old logical index new_origin
// becomes index zero.
SequenceWindow reanchor(const SequenceWindow& w, int new_origin);

// The sub-window [lo, hi] by logical index; must lie inside w and keep the
// origin inside the slice.
SequenceWindow slice(const SequenceWindow& w, int lo, int hi);

// a^2 + b^2 == alpha*a*b + beta*(a + b) for one adjacent pair.
bool compatible_pair(const Rational& a, const Rational& b, const LensConstants& k);

// compatible_pair over every adjacent pair of the window.
bool compatibility_check(const SequenceWindow& w);

// b[n] == (alpha+1)*b[n-1] - (alpha+1)*b[n-2] + b[n-3] across the window.
bool four_term_check(const SequenceWindow& w);

// Recovers alpha from four consecutive terms (w, x, y, z) as w/x + z/y.
// Throws ZeroDenominatorTerm when x or y is zero.
Rational alpha_from_four(const Rational& w, const Rational& x, const Rational& y,
                         const Rational& z);

// Equivalent forward steps that trade the linear two-term recurrence for
// nonlinear ones using fewer constants.
enum class StepRule {
  three_term_alpha,  // b[n+1] = ((alpha+1) b[n]^2 - b[n] b[n-1]) / (b[n] + b[n-1])
  three_term_beta,   // b[n+1] = b[n] (b[n] - beta) / b[n-1]
  four_term_beta,    // b[n+2] = (b[n+1] - beta)(b[n] - beta) / b[n-1]
  four_term_alpha,   // b[n+1] = b[n] (alpha b[n-1] - b[n-2]) / b[n-1]
  two_term_sqrt,     // b[n+1] from b[n] alone via the discriminant root
};

// Extends the seed forward with the chosen rule; the result must agree with
// the linear step wherever both are defined. Division by a vanishing
// denominator throws ZeroDenominatorTerm; two_term_sqrt throws
// NonSquareDiscriminant when the radicand is not a perfect rational square.
SequenceWindow extend_nonlinear(const Seed& seed, StepRule rule, int forward);

// (alpha^2 - 4) b^2 + 2 (alpha + 2) beta b + beta^2; the radicand under
// two_term_sqrt, and a perfect square at every term of an integral window.
Rational step_discriminant(const LensConstants& k, const Rational& b);

// gcd of the three entries, all integers. gcd(0, x) = |x|; all-zero seeds
// throw AllZero, fractional entries NotIntegral.
Int gcd_triple(const Seed& seed);

}  // namespace lenseq
