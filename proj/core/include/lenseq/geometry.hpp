#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lenseq/quadext.hpp"
#include "lenseq/sequence.hpp"

namespace lenseq {

// A circle given by signed curvature and center. The radius keeps the
// curvature's sign; a negative value marks a circle enclosing the others.
// Curvature zero (a line) has no place in this numeric interface.
struct Circle {
  double curvature;
  double cx, cy;

  double radius() const { return 1.0 / curvature; }
};

// Inversive product (d^2 - r1^2 - r2^2) / (2 r1 r2) with signed radii.
// Tangency inside the signed convention lands on -1, external tangency
// between sibling circles on +1.
double pedoe_product(const Circle& x, const Circle& y);

enum class LensClass {
  formal,            // alpha < -2: no geometric carrier
  periodic,          // -2 <= alpha < 2
  tangent_boundary,  // alpha = 2: lens circles touch
  converging_inner,  // alpha > 2, chain inside the lens
  diverging_outer,   // alpha > 2, chain outside both lens circles
};

const char* lens_class_name(LensClass c);

// Geometric invariants of the lens carrying a sequence. Fields are present
// exactly when their defining expressions are finite and real; note says
// what blocked an absent one.
struct LensShape {
  LensClass cls;
  std::optional<Rational> R;     // signed lens circle radius (alpha+2)/(-beta)
  std::optional<Rational> K;     // inversive product of the two lens circles
  std::optional<QuadExt> L;      // signed lens length -2 sqrt(alpha^2-4)/beta
  std::optional<QuadExt> delta;  // distance between lens centers, 4R/sqrt(alpha+2)
  std::string note;
};

LensShape lens_params(const LensConstants& k);

// alpha < -2 formal; -2 <= alpha < 2 periodic; alpha = 2 tangent boundary.
// For alpha > 2 the window sample decides: a negative term or an adjacent
// zero pair puts the chain outside the lens.
LensClass classify(const SequenceWindow& w);

// K straight from a seed: 8 b^2 / ((a+b)(b+c)) - 1.
// Throws DegenerateSeed when (a+b)(b+c) = 0.
Rational inversive_coupling(const Seed& seed);

// The two curvatures tangent to both lens circles and to a circle of
// curvature x, for lens data (A, K): the roots y of
//   (1+K) y^2 - (2(3-K) x - 8A) y + (1+K) x^2 ... collapsed to
//   y = ((3-K) x - 4A +- 2 sqrt(2(1-K) x^2 - 8A x + 4A^2)) / (1+K).
// Throws DegenerateK at K = -1, NegativeRadicand when the radicand dips
// below zero.
std::pair<double, double> curvature_neighbors(double x, double A, double K);

// Pairwise inversive products with -1 on the diagonal.
std::array<std::array<double, 4>, 4> configuration_matrix(const std::array<Circle, 4>& c);

// Size of b^T M^-1 b relative to the magnitudes of its summands, where M is
// the configuration matrix and b the four curvatures. Near zero for circles
// that really form a lens chain quadruple; order one for perturbed data.
// Throws SingularConfiguration when M has no inverse.
double config_matrix_residual(const std::array<Circle, 4>& c);

// Same residual from an explicit matrix and curvature vector.
double config_matrix_residual(const std::array<std::array<double, 4>, 4>& m,
                              const std::array<double, 4>& curvatures);

// A fully placed chain. Chain centers sit on the x axis; their exact
// abscissas come out of rational arithmetic, so consecutive tangency holds
// identically, not just to rounding.
struct ChainLayout {
  LensShape shape;
  Rational R;                      // lens radius, positive
  QuadExt half_delta;              // half the distance between lens centers
  std::array<Circle, 2> lens;      // centers (0, +-half_delta)
  std::vector<Circle> chain;       // one per window term, window order
  std::vector<Rational> centers_x; // exact abscissas, same order
  int lo;                          // logical index of chain.front()
};

// Places the window's circles inside their lens. Requires a
// converging_inner window with all terms positive; anything else throws
// NotRenderable.
ChainLayout chain_layout(const SequenceWindow& w);

// Configuration matrix of (lens, lens, chain[n], chain[n+1]), entries
// evaluated in exact arithmetic from the layout before the one rounding to
// double. Going through rounded centers instead would smear the tangencies
// of the tiny deep-chain circles. w must be the window l was laid out from.
std::array<std::array<double, 4>, 4> quadruple_matrix(const ChainLayout& l,
                                                      const SequenceWindow& w, int n);

// config_matrix_residual of the quadruple above with curvature vector
// (1/R, 1/R, b[n], b[n+1]).
double quadruple_residual(const ChainLayout& l, const SequenceWindow& w, int n);

struct RenderOptions {
  double scale = 100;        // output units per model unit
  double margin = 10;        // canvas padding, output units
  double stroke_width = 1;   // output units
};

// Stroke-only SVG: the two lens circles first, then the chain in window
// order. Fixed six-decimal coordinates keep the output byte-stable.
std::string render_svg(const ChainLayout& l, const RenderOptions& opt);

}  // namespace lenseq
