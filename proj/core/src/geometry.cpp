#include "lenseq/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "lenseq/errors.hpp"

namespace lenseq {

double pedoe_product(const Circle& x, const Circle& y) {
  double dx = x.cx - y.cx, dy = x.cy - y.cy;
  double r1 = x.radius(), r2 = y.radius();
  return (dx * dx + dy * dy - r1 * r1 - r2 * r2) / (2 * r1 * r2);
}

const char* lens_class_name(LensClass c) {
  switch (c) {
    case LensClass::formal: return "formal";
    case LensClass::periodic: return "periodic";
    case LensClass::tangent_boundary: return "tangent_boundary";
    case LensClass::converging_inner: return "converging_inner";
    case LensClass::diverging_outer: return "diverging_outer";
  }
  return "?";
}

LensShape lens_params(const LensConstants& k) {
  LensShape out;
  const Rational& alpha = k.alpha;
  const Rational& beta = k.beta;
  std::ostringstream note;

  if (alpha < -2) {
    out.cls = LensClass::formal;
  } else if (alpha < 2) {
    out.cls = LensClass::periodic;
  } else if (alpha == 2) {
    out.cls = LensClass::tangent_boundary;
  } else if (beta < 0) {
    out.cls = LensClass::converging_inner;
  } else if (beta > 0) {
    out.cls = LensClass::diverging_outer;
  } else {
    out.cls = LensClass::converging_inner;
    note << "beta = 0: lens circles degenerate to parallel lines; ";
  }

  if (beta != 0) {
    out.R = (alpha + 2) / (-beta);
  } else {
    note << "R undefined at beta = 0; ";
  }
  if (alpha != -2) {
    out.K = (6 - alpha) / (2 + alpha);
  } else {
    note << "K undefined at alpha = -2; ";
  }
  if (alpha >= 2 && beta != 0) {
    out.L = sqrt_rational(alpha * alpha - 4) * QuadExt(Rational(-2) / beta);
  } else if (beta != 0) {
    note << "L needs alpha >= 2; ";
  }
  if (alpha > -2 && beta != 0) {
    // 4R/sqrt(alpha+2), rationalized.
    out.delta = QuadExt(4 * *out.R) / sqrt_rational(alpha + 2);
  } else if (beta != 0) {
    note << "delta needs alpha > -2; ";
  }
  out.note = note.str();
  return out;
}

LensClass classify(const SequenceWindow& w) {
  const Rational& alpha = w.constants().alpha;
  if (alpha < -2) return LensClass::formal;
  if (alpha < 2) return LensClass::periodic;
  if (alpha == 2) return LensClass::tangent_boundary;
  for (int n = w.lo(); n <= w.hi(); ++n) {
    if (w.at(n) < 0) return LensClass::diverging_outer;
    if (w.at(n) == 0 && n < w.hi() && w.at(n + 1) == 0) return LensClass::diverging_outer;
  }
  return LensClass::converging_inner;
}

Rational inversive_coupling(const Seed& seed) {
  Rational den = (seed.a + seed.b) * (seed.b + seed.c);
  if (den == 0) fail(ErrorCode::DegenerateSeed, "adjacent terms sum to zero");
  return 8 * seed.b * seed.b / den - 1;
}

std::pair<double, double> curvature_neighbors(double x, double A, double K) {
  if (K == -1) fail(ErrorCode::DegenerateK, "K = -1");
  double radicand = 2 * (1 - K) * x * x - 8 * A * x + 4 * A * A;
  if (radicand < 0) fail(ErrorCode::NegativeRadicand, "no real tangent curvature");
  double root = std::sqrt(radicand);
  double base = (3 - K) * x - 4 * A;
  return {(base + 2 * root) / (1 + K), (base - 2 * root) / (1 + K)};
}

std::array<std::array<double, 4>, 4> configuration_matrix(const std::array<Circle, 4>& c) {
  std::array<std::array<double, 4>, 4> m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m[i][j] = i == j ? -1.0 : pedoe_product(c[i], c[j]);
    }
  }
  return m;
}

namespace {

// Plain Gauss-Jordan with partial pivoting; fine at this size.
std::array<std::array<double, 4>, 4> invert4(std::array<std::array<double, 4>, 4> m) {
  std::array<std::array<double, 4>, 4> inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (std::fabs(m[pivot][col]) < 1e-250)
      fail(ErrorCode::SingularConfiguration, "configuration matrix is singular");
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    double d = m[col][col];
    for (int j = 0; j < 4; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      double f = m[r][col];
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

double config_matrix_residual(const std::array<std::array<double, 4>, 4>& m,
                              const std::array<double, 4>& curvatures) {
  auto inv = invert4(m);
  double num = 0, den = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double term = curvatures[i] * inv[i][j] * curvatures[j];
      num += term;
      den += std::fabs(term);
    }
  }
  return den == 0 ? 0.0 : std::fabs(num) / den;
}

double config_matrix_residual(const std::array<Circle, 4>& c) {
  return config_matrix_residual(
      configuration_matrix(c),
      {c[0].curvature, c[1].curvature, c[2].curvature, c[3].curvature});
}

std::array<std::array<double, 4>, 4> quadruple_matrix(const ChainLayout& l,
                                                      const SequenceWindow& w, int n) {
  if (n < l.lo || n + 1 > l.lo + static_cast<int>(l.chain.size()) - 1)
    fail(ErrorCode::OutOfRange, "quadruple index outside the layout");
  Rational hd2 = (l.half_delta * l.half_delta).rational_part();
  std::array<Rational, 2> rad = {1 / w.at(n), 1 / w.at(n + 1)};
  std::array<Rational, 2> x = {l.centers_x[static_cast<std::size_t>(n - l.lo)],
                               l.centers_x[static_cast<std::size_t>(n + 1 - l.lo)]};

  // Pedoe products from squared distances, all rational.
  Rational lens_lens = (4 * hd2 - 2 * l.R * l.R) / (2 * l.R * l.R);
  std::array<Rational, 2> lens_chain;
  for (int i = 0; i < 2; ++i) {
    Rational d2 = x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] + hd2;
    Rational r = rad[static_cast<std::size_t>(i)];
    lens_chain[static_cast<std::size_t>(i)] = (d2 - l.R * l.R - r * r) / (2 * l.R * r);
  }
  Rational gap2 = (x[1] - x[0]) * (x[1] - x[0]);
  Rational chain_chain = (gap2 - rad[0] * rad[0] - rad[1] * rad[1]) / (2 * rad[0] * rad[1]);

  double K = rational_to_double(lens_lens);
  double p0 = rational_to_double(lens_chain[0]);
  double p1 = rational_to_double(lens_chain[1]);
  double t = rational_to_double(chain_chain);
  return {{{-1, K, p0, p1}, {K, -1, p0, p1}, {p0, p0, -1, t}, {p1, p1, t, -1}}};
}

double quadruple_residual(const ChainLayout& l, const SequenceWindow& w, int n) {
  double A = rational_to_double(1 / l.R);
  return config_matrix_residual(quadruple_matrix(l, w, n),
                                {A, A, rational_to_double(w.at(n)),
                                 rational_to_double(w.at(n + 1))});
}

ChainLayout chain_layout(const SequenceWindow& w) {
  if (classify(w) != LensClass::converging_inner)
    fail(ErrorCode::NotRenderable, "chain exists only for a converging inner window");
  for (int n = w.lo(); n <= w.hi(); ++n) {
    if (w.at(n) <= 0) fail(ErrorCode::NotRenderable, "curvatures must be positive");
  }

  ChainLayout out;
  out.shape = lens_params(w.constants());
  if (!out.shape.R || *out.shape.R <= 0)
    fail(ErrorCode::NotRenderable, "lens radius is not positive");
  out.R = *out.shape.R;
  out.half_delta = *out.shape.delta * QuadExt(Rational(1, 2));
  out.lo = w.lo();

  const Rational& alpha = w.constants().alpha;
  Rational quarter_delta2 = 4 * out.R * out.R / (alpha + 2);  // (delta/2)^2

  // |x_n| from tangency to a lens circle: x^2 + (delta/2)^2 = (R - r)^2.
  std::vector<Rational> mag(static_cast<std::size_t>(w.size()));
  std::vector<Rational> radius(static_cast<std::size_t>(w.size()));
  for (int n = w.lo(); n <= w.hi(); ++n) {
    std::size_t i = static_cast<std::size_t>(n - w.lo());
    radius[i] = 1 / w.at(n);
    Rational x2 = (out.R - radius[i]) * (out.R - radius[i]) - quarter_delta2;
    auto root = x2 >= 0 ? rational_sqrt(x2) : std::nullopt;
    if (!root) fail(ErrorCode::NotRenderable, "the window does not embed in its lens");
    mag[i] = *root;
  }

  // The anchor is the largest circle; everything threads off it by adding
  // radii. Whichever anchor sign makes every position match its magnitude
  // is the embedding.
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < mag.size(); ++i) {
    if (radius[i] > radius[anchor]) anchor = i;
  }
  std::vector<Rational> xs(mag.size());
  bool placed = false;
  for (int sign = +1; sign >= -1 && !placed; sign -= 2) {
    xs[anchor] = sign * mag[anchor];
    bool ok = true;
    for (std::size_t i = anchor + 1; i < xs.size() && ok; ++i) {
      xs[i] = xs[i - 1] + radius[i - 1] + radius[i];
      ok = abs(xs[i]) == mag[i];
    }
    for (std::size_t i = anchor; i-- > 0 && ok;) {
      xs[i] = xs[i + 1] - radius[i + 1] - radius[i];
      ok = abs(xs[i]) == mag[i];
    }
    placed = ok;
  }
  if (!placed) fail(ErrorCode::NotRenderable, "the window does not thread into a chain");

  double hd = quad_to_double(out.half_delta);
  double Rd = rational_to_double(out.R);
  out.lens[0] = Circle{1.0 / Rd, 0.0, hd};
  out.lens[1] = Circle{1.0 / Rd, 0.0, -hd};
  out.centers_x = xs;
  out.chain.reserve(xs.size());
  for (int n = w.lo(); n <= w.hi(); ++n) {
    std::size_t i = static_cast<std::size_t>(n - w.lo());
    out.chain.push_back(Circle{rational_to_double(w.at(n)), rational_to_double(xs[i]), 0.0});
  }
  return out;
}

std::string render_svg(const ChainLayout& l, const RenderOptions& opt) {
  double R = 1.0 / l.lens[0].curvature;
  double hd = l.lens[0].cy;
  double half_w = R * opt.scale + opt.margin;
  double half_h = (R + hd) * opt.scale + opt.margin;

  std::ostringstream os;
  char buf[160];
  auto circle = [&](const Circle& c) {
    std::snprintf(buf, sizeof buf,
                  "  <circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\"/>\n",
                  c.cx * opt.scale, c.cy * opt.scale, opt.scale / c.curvature);
    os << buf;
  };
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" "
                "viewBox=\"%.6f %.6f %.6f %.6f\">\n",
                -half_w, -half_h, 2 * half_w, 2 * half_h);
  os << buf;
  std::snprintf(buf, sizeof buf,
                "<g fill=\"none\" stroke=\"black\" stroke-width=\"%.6f\">\n",
                opt.stroke_width);
  os << buf;
  for (const Circle& c : l.lens) circle(c);
  for (const Circle& c : l.chain) circle(c);
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace lenseq
