#include "lenseq/sequence.hpp"

#include <deque>

#include "lenseq/errors.hpp"

namespace lenseq {

LensConstants constants_from_seed(const Seed& seed) {
  if (seed.b == 0) fail(ErrorCode::ZeroMiddleTerm, "seed middle term is zero");
  const Rational &a = seed.a, &b = seed.b, &c = seed.c;
  Rational alpha = (a * b + b * c + c * a) / (b * b) - 1;
  Rational beta = (b * b - a * c) / b;
  return {alpha, beta};
}

SequenceWindow SequenceWindow::from_terms(std::vector<Rational> terms, int origin_offset,
                                          std::optional<LensConstants> constants) {
  if (terms.empty()) fail(ErrorCode::OutOfRange, "empty window");
  if (origin_offset < 0 || origin_offset >= static_cast<int>(terms.size()))
    fail(ErrorCode::OutOfRange, "origin outside window");
  if (!constants) {
    for (std::size_t i = 0; i + 2 < terms.size(); ++i) {
      if (terms[i + 1] != 0) {
        constants = constants_from_seed({terms[i], terms[i + 1], terms[i + 2]});
        break;
      }
    }
    if (!constants) fail(ErrorCode::ZeroMiddleTerm, "no triple with nonzero middle term");
  }
  return SequenceWindow(std::move(terms), origin_offset, *constants);
}

const Rational& SequenceWindow::at(int n) const {
  if (n < lo() || n > hi()) fail(ErrorCode::OutOfRange, "index " + std::to_string(n));
  return terms_[static_cast<std::size_t>(n - lo())];
}

SequenceWindow extend(const Seed& seed, int forward, int backward) {
  if (forward < 0 || backward < 0) fail(ErrorCode::OutOfRange, "negative extension count");
  LensConstants k = constants_from_seed(seed);
  std::deque<Rational> terms{seed.a, seed.b, seed.c};
  for (int i = 0; i < forward; ++i) {
    const Rational& last = terms[terms.size() - 1];
    const Rational& prev = terms[terms.size() - 2];
    terms.push_back(k.alpha * last - prev + k.beta);
  }
  for (int i = 0; i < backward; ++i) {
    // The recurrence is symmetric: the same step runs in reverse.
    terms.push_front(k.alpha * terms[0] - terms[1] + k.beta);
  }
  return SequenceWindow::from_terms(std::vector<Rational>(terms.begin(), terms.end()),
                                    backward + 1, k);
}

SequenceWindow reanchor(const SequenceWindow& w, int new_origin) {
  if (new_origin < w.lo() || new_origin > w.hi())
    fail(ErrorCode::OutOfRange, "new origin outside window");
  return SequenceWindow::from_terms(w.terms(), w.origin_offset() + new_origin, w.constants());
}

SequenceWindow slice(const SequenceWindow& w, int lo, int hi) {
  if (lo < w.lo() || hi > w.hi() || lo > 0 || hi < 0)
    fail(ErrorCode::OutOfRange, "slice must stay inside the window and cover the origin");
  std::vector<Rational> terms(w.terms().begin() + (lo - w.lo()),
                              w.terms().begin() + (hi - w.lo() + 1));
  return SequenceWindow::from_terms(std::move(terms), -lo, w.constants());
}

bool compatible_pair(const Rational& a, const Rational& b, const LensConstants& k) {
  return a * a + b * b == k.alpha * a * b + k.beta * (a + b);
}

bool compatibility_check(const SequenceWindow& w) {
  for (int n = w.lo(); n < w.hi(); ++n) {
    if (!compatible_pair(w.at(n), w.at(n + 1), w.constants())) return false;
  }
  return true;
}

bool four_term_check(const SequenceWindow& w) {
  const Rational a1 = w.constants().alpha + 1;
  for (int n = w.lo() + 3; n <= w.hi(); ++n) {
    if (w.at(n) != a1 * w.at(n - 1) - a1 * w.at(n - 2) + w.at(n - 3)) return false;
  }
  return true;
}

Rational alpha_from_four(const Rational& w, const Rational& x, const Rational& y,
                         const Rational& z) {
  if (x == 0 || y == 0) fail(ErrorCode::ZeroDenominatorTerm, "alpha from four");
  return w / x + z / y;
}

Rational step_discriminant(const LensConstants& k, const Rational& b) {
  return (k.alpha * k.alpha - 4) * b * b + 2 * (k.alpha + 2) * k.beta * b + k.beta * k.beta;
}

namespace {

Rational sqrt_step(const LensConstants& k, const Rational& cur, const Rational& prev) {
  Rational disc = step_discriminant(k, cur);
  auto root = rational_sqrt(disc);
  if (!root) fail(ErrorCode::NonSquareDiscriminant, "radicand " + format_rational(disc));
  // The two branches are exactly {previous term, next term}; pick the one
  // that moves forward.
  Rational plus = (k.alpha * cur + k.beta + *root) / 2;
  Rational minus = (k.alpha * cur + k.beta - *root) / 2;
  Rational linear = k.alpha * cur - prev + k.beta;
  return plus == linear ? plus : minus;
}

}  // namespace

SequenceWindow extend_nonlinear(const Seed& seed, StepRule rule, int forward) {
  if (forward < 0) fail(ErrorCode::OutOfRange, "negative extension count");
  LensConstants k = constants_from_seed(seed);
  std::vector<Rational> t{seed.a, seed.b, seed.c};
  auto back = [&](int j) -> const Rational& { return t[t.size() - static_cast<std::size_t>(j)]; };
  for (int i = 0; i < forward; ++i) {
    switch (rule) {
      case StepRule::three_term_alpha: {
        Rational den = back(1) + back(2);
        if (den == 0) fail(ErrorCode::ZeroDenominatorTerm, "b[n] + b[n-1] = 0");
        t.push_back(((k.alpha + 1) * back(1) * back(1) - back(1) * back(2)) / den);
        break;
      }
      case StepRule::three_term_beta: {
        if (back(2) == 0) fail(ErrorCode::ZeroDenominatorTerm, "b[n-1] = 0");
        t.push_back(back(1) * (back(1) - k.beta) / back(2));
        break;
      }
      case StepRule::four_term_beta: {
        if (back(3) == 0) fail(ErrorCode::ZeroDenominatorTerm, "b[n-1] = 0");
        t.push_back((back(1) - k.beta) * (back(2) - k.beta) / back(3));
        break;
      }
      case StepRule::four_term_alpha: {
        if (back(2) == 0) fail(ErrorCode::ZeroDenominatorTerm, "b[n-1] = 0");
        t.push_back(back(1) * (k.alpha * back(2) - back(3)) / back(2));
        break;
      }
      case StepRule::two_term_sqrt:
        t.push_back(sqrt_step(k, back(1), back(2)));
        break;
    }
  }
  return SequenceWindow::from_terms(std::move(t), 1, k);
}

Int gcd_triple(const Seed& seed) {
  if (!is_integer(seed.a) || !is_integer(seed.b) || !is_integer(seed.c))
    fail(ErrorCode::NotIntegral, "gcd of non-integer seed");
  if (seed.a == 0 && seed.b == 0 && seed.c == 0) fail(ErrorCode::AllZero, "gcd of zero seed");
  Int g = gcd(gcd(seed.a.get_num(), seed.b.get_num()), seed.c.get_num());
  return g;
}

}  // namespace lenseq
