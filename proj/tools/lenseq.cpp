// Command line front end: generate windows, verify their identities, lay
// chains out as SVG, and dump b-file style listings.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lenseq/errors.hpp"
#include "lenseq/geometry.hpp"
#include "lenseq/sequence.hpp"
#include "lenseq/serialize.hpp"
#include "lenseq/underground.hpp"

namespace {

using namespace lenseq;
using nlohmann::json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNotRenderable = 3;

struct InputOptions {
  std::string seed, symbol, label;
  std::string origin;  // "", "middle", or "first"

  // The anchor shift. By default a label names its first term, seeds and
  // symbols their middle one; --origin overrides either way.
  int shift() const {
    if (origin == "middle") return 0;
    if (origin == "first") return -1;
    return label.empty() ? 0 : -1;
  }

  Seed triple() const {
    if (!seed.empty()) return parse_seed(seed);
    if (!symbol.empty()) return symbol_to_seed(parse_symbol(symbol));
    if (!label.empty()) return label_to_seed(parse_label(label));
    fail(ErrorCode::ParseError, "one of --seed, --symbol, --label is required");
  }

  std::string echo() const {
    if (!seed.empty()) return "seed " + seed;
    if (!symbol.empty()) return "symbol " + symbol;
    return "label " + label;
  }
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  auto* s = cmd->add_option("--seed", in.seed, "three consecutive terms a,b,c; b is index 0");
  auto* y = cmd->add_option("--symbol", in.symbol, "^s(p,q)^k; p*q is index 0");
  auto* l = cmd->add_option("--label", in.label, "[a,b;k]; a is index 0");
  s->excludes(y)->excludes(l);
  y->excludes(l);
  cmd->add_option("--origin", in.origin,
                  "which triple entry sits at index 0: middle (seed, symbol) or "
                  "first (label)")
      ->check(CLI::IsMember({"middle", "first"}));
}

Seed anchored_triple(const InputOptions& in) {
  Seed t = in.triple();
  if (t.b == 0 && in.shift() == 0) {
    // Constants always exist one step over; the window logic needs them
    // from the raw triple, so reject here with the honest reason.
    fail(ErrorCode::ZeroMiddleTerm, "anchor term is zero");
  }
  return t;
}

// Window covering exactly [-back, forward] around the input's anchor.
SequenceWindow build_window(const InputOptions& in, int back, int forward) {
  if (back < 0 || forward < 0) fail(ErrorCode::OutOfRange, "negative display range");
  Seed t = anchored_triple(in);
  int s = in.shift();
  int bk = std::max(back - s - 1, 0);
  int fw = std::max(forward + s - 1, 0);
  SequenceWindow w = extend(t, fw, bk);
  if (s != 0) w = reanchor(w, s);
  return slice(w, -back, forward);
}

int run_gen(const InputOptions& in, int back, int forward, bool as_json) {
  SequenceWindow w = build_window(in, back, forward);
  if (as_json) {
    std::cout << window_to_json(w);
    return 0;
  }
  std::cout << "# alpha = " << format_rational(w.constants().alpha)
            << "  beta = " << format_rational(w.constants().beta) << "\n";
  for (int n = w.lo(); n <= w.hi(); ++n) {
    std::cout << (n > w.lo() ? " " : "") << format_rational(w.at(n));
  }
  std::cout << "\n";
  return 0;
}

// ---- verify ----

struct CheckResult {
  std::string name, status, detail;
};

class Verifier {
 public:
  Verifier(const InputOptions& in, int depth, const std::string& constants_override)
      : in_(in), depth_(depth) {
    if (depth < 0) fail(ErrorCode::OutOfRange, "negative check depth");
    seed_ = anchored_triple(in);
    k_ = constants_from_seed(seed_);
    w_ = extend(seed_, depth, depth);
    if (!constants_override.empty()) {
      Seed f = parse_seed(constants_override + ",0");  // reuse the a,b,c parser
      override_ = LensConstants{f.a, f.b};
    }
    integral_ = true;
    for (const Rational& t : w_->terms()) integral_ = integral_ && is_integer(t);
  }

  std::vector<CheckResult> run();

 private:
  void pass(const std::string& name, const std::string& detail = "") {
    out_.push_back({name, "pass", detail});
  }
  void fail_check(const std::string& name, const std::string& detail) {
    out_.push_back({name, "fail", detail});
  }
  void skip(const std::string& name, const std::string& detail) {
    out_.push_back({name, "skip", detail});
  }
  void boolean(const std::string& name, bool ok, const std::string& bad_detail,
               const std::string& good_detail = "") {
    if (ok) {
      pass(name, good_detail);
    } else {
      fail_check(name, bad_detail);
    }
  }

  InputOptions in_;
  int depth_;
  Seed seed_{};
  LensConstants k_{};
  std::optional<SequenceWindow> w_;
  std::optional<LensConstants> override_;
  bool integral_ = false;
  std::vector<CheckResult> out_;
};

std::vector<CheckResult> Verifier::run() {
  const SequenceWindow& w = *w_;
  const Rational& alpha = k_.alpha;
  const Rational& beta = k_.beta;

  if (override_) {
    bool ok = *override_ == k_;
    boolean("constants", ok,
            "stated alpha,beta = " + format_rational(override_->alpha) + "," +
                format_rational(override_->beta) + " but the seed gives " +
                format_rational(alpha) + "," + format_rational(beta),
            "stated constants match the seed");
  } else {
    pass("constants", "alpha = " + format_rational(alpha) + ", beta = " + format_rational(beta));
  }

  {
    bool ok = true;
    for (int n = w.lo() + 2; n <= w.hi() && ok; ++n) {
      ok = w.at(n) == alpha * w.at(n - 1) - w.at(n - 2) + beta;
    }
    boolean("recurrence", ok, "two-term linear step broke inside the window");
  }

  boolean("compatibility", compatibility_check(w), "an adjacent pair fails its quadratic relation");
  boolean("four_term", four_term_check(w), "the constant-free four-term relation broke");

  {
    int used = 0;
    bool ok = true;
    for (int n = w.lo(); n + 3 <= w.hi() && ok; ++n) {
      if (w.at(n + 1) == 0 || w.at(n + 2) == 0) continue;
      ++used;
      ok = alpha_from_four(w.at(n), w.at(n + 1), w.at(n + 2), w.at(n + 3)) == alpha;
    }
    if (used == 0) {
      skip("alpha_from_four", "no quadruple with nonzero inner terms");
    } else {
      boolean("alpha_from_four", ok, "a quadruple reconstructed a different alpha");
    }
  }

  {
    bool ok = true;
    for (int n = w.lo(); n + 2 <= w.hi() && ok; ++n) {
      if (w.at(n + 1) == 0) continue;
      ok = constants_from_seed({w.at(n), w.at(n + 1), w.at(n + 2)}) == k_;
    }
    boolean("translation_invariance", ok, "a shifted triple gave different constants");
  }

  {
    int agreed = 0;
    std::string bad;
    for (StepRule rule : {StepRule::three_term_alpha, StepRule::three_term_beta,
                          StepRule::four_term_beta, StepRule::four_term_alpha,
                          StepRule::two_term_sqrt}) {
      try {
        SequenceWindow nl = extend_nonlinear(seed_, rule, depth_);
        bool same = true;
        for (int n = nl.lo(); n <= nl.hi() && same; ++n) same = nl.at(n) == w.at(n);
        if (same) {
          ++agreed;
        } else {
          bad = "a nonlinear step rule diverged from the linear one";
        }
      } catch (const Error&) {
        // that rule hit a vanishing denominator on this input
      }
    }
    if (agreed == 0 && bad.empty()) {
      skip("nonlinear_agreement", "every rule hit a degenerate denominator");
    } else {
      boolean("nonlinear_agreement", bad.empty(), bad,
              std::to_string(agreed) + " rules agree with the linear step");
    }
  }

  {
    bool seed_int = is_integer(seed_.a) && is_integer(seed_.b) && is_integer(seed_.c);
    if (!seed_int) {
      skip("integrality", "seed has fractional entries");
    } else {
      bool predicted = divisibility_exact(seed_);
      boolean("integrality", predicted == integral_,
              std::string("divisibility test says ") + (predicted ? "integral" : "fractional") +
                  " but the window disagrees",
              predicted ? "integral, as the divisibility test predicts"
                        : "fractional, as the divisibility test predicts");
    }
  }

  {
    bool seed_int = is_integer(seed_.a) && is_integer(seed_.b) && is_integer(seed_.c);
    if (!seed_int || !integral_) {
      skip("primitivity", "needs an integral window");
    } else {
      Int g = gcd_triple(seed_);
      if (g != 1) {
        skip("primitivity", "common factor " + g.get_str());
      } else {
        try {
          UndergroundSymbol sym = seed_to_symbol(seed_);
          if (sym.is_integral()) {
            boolean("primitivity", symbol_is_primitive(sym),
                    "symbol of a primitive seed fails the coprimality conditions",
                    "symbol " + format_symbol(sym) + " is primitive");
          } else {
            skip("primitivity", "symbol has fractional multipliers");
          }
        } catch (const Error& e) {
          fail_check("primitivity", e.what());
        }
      }
    }
  }

  {
    if (!integral_ ) {
      skip("underground_roundtrip", "needs an integral window");
    } else {
      try {
        UndergroundWindow f = factorize(w);
        SequenceWindow back = pair_factors(f);
        bool ok = back.lo() == w.lo() && back.hi() == w.hi();
        for (int n = w.lo(); n <= w.hi() && ok; ++n) ok = back.at(n) == w.at(n);
        ok = ok && factor_gcd_check(w, f) && factor_stride_check(f, alpha) &&
             factor_determinant_check(f, beta) && square_sum_check(w, f);
        boolean("underground_roundtrip", ok, "factor layer does not reproduce the window",
                "factors " + format_symbol(UndergroundSymbol{Rational(f.s), Rational(f.k),
                                                             f.at(0), f.at(1)}) +
                    " rebuild the window");
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotPrimitive) {
          skip("underground_roundtrip", e.what());
        } else {
          fail_check("underground_roundtrip", e.what());
        }
      }
    }
  }

  {
    bool seed_int = is_integer(seed_.a) && is_integer(seed_.b) && is_integer(seed_.c);
    if (!seed_int) {
      skip("criteria_consistency", "seed has fractional entries");
    } else {
      bool suff = divisibility_sufficient(seed_);
      bool exact = divisibility_exact(seed_);
      if (suff && !exact) {
        fail_check("criteria_consistency", "sufficient test passed but the exact one failed");
      } else {
        boolean("criteria_consistency", exact == integral_,
                "exact divisibility test disagrees with the window",
                suff ? "both divisibility tests agree" : "exact divisibility test agrees");
      }
    }
  }

  bool geometric = alpha >= 2 && beta != 0;
  {
    if (!geometric) {
      skip("curvature_step", "needs alpha >= 2 and beta != 0");
    } else {
      LensShape shape = lens_params(k_);
      double A = 1.0 / rational_to_double(*shape.R);
      double K = rational_to_double(*shape.K);
      bool ok = true;
      std::string bad;
      for (int n = w.lo() + 1; n + 1 <= w.hi() && ok; ++n) {
        double x = rational_to_double(w.at(n));
        double lo_expect = rational_to_double(w.at(n - 1));
        double hi_expect = rational_to_double(w.at(n + 1));
        try {
          auto [y1, y2] = curvature_neighbors(x, A, K);
          double e1 = std::min(std::fabs(y1 - lo_expect) + std::fabs(y2 - hi_expect),
                               std::fabs(y1 - hi_expect) + std::fabs(y2 - lo_expect));
          // Near a double root the radical loses half the working precision,
          // so the tolerance carries the forward error of the square root.
          double wing = 2 * std::fabs(1 - K) * x * x + 8 * std::fabs(A * x) + 4 * A * A;
          double rad = std::max(2 * (1 - K) * x * x - 8 * A * x + 4 * A * A, 0.0);
          double eps = 2.2e-16;
          double root_err = eps * wing / std::max(std::sqrt(rad), std::sqrt(eps * wing));
          double scale = 1 + std::fabs(lo_expect) + std::fabs(hi_expect);
          ok = e1 <= 1e-9 * scale + 8 * root_err / std::fabs(1 + K);
          if (!ok) bad = "tangent curvatures miss the neighbors at index " + std::to_string(n);
        } catch (const Error& e) {
          ok = false;
          bad = e.what();
        }
      }
      boolean("curvature_step", ok, bad, "both tangent curvatures match the neighbors");
    }
  }

  {
    if (!geometric) {
      skip("branch_sum", "needs alpha >= 2 and beta != 0");
    } else {
      LensShape shape = lens_params(k_);
      double A = 1.0 / rational_to_double(*shape.R);
      double K = rational_to_double(*shape.K);
      double al = rational_to_double(alpha), be = rational_to_double(beta);
      bool ok = true;
      for (int n = w.lo(); n <= w.hi() && ok; ++n) {
        double x = rational_to_double(w.at(n));
        try {
          auto [y1, y2] = curvature_neighbors(x, A, K);
          double want = al * x + be;
          ok = std::fabs((y1 + y2) - want) <= 1e-9 * (1 + std::fabs(want));
        } catch (const Error&) {
          // a term outside the real range contributes nothing here
        }
      }
      boolean("branch_sum", ok, "the two branches do not sum to alpha x + beta");
    }
  }

  {
    if (classify(w) != LensClass::converging_inner) {
      skip("chain_embedding", "window is not a converging inner chain");
    } else {
      try {
        ChainLayout l = chain_layout(w);
        bool ok = true;
        std::string bad;
        // Consecutive tangency in exact arithmetic: |x[i+1] - x[i]| equals
        // the sum of the two radii 1/b.
        for (std::size_t i = 0; i + 1 < l.centers_x.size() && ok; ++i) {
          int n = l.lo + static_cast<int>(i);
          Rational gap = abs(l.centers_x[i + 1] - l.centers_x[i]);
          ok = gap == 1 / w.at(n) + 1 / w.at(n + 1);
          if (!ok) bad = "consecutive circles lost tangency";
        }
        // Tangency against the lens circles, also exact: the center distance
        // squared x^2 + (delta/2)^2 must equal (R - r)^2.
        Rational hd_sq = (l.half_delta * l.half_delta).rational_part();
        for (std::size_t i = 0; i < l.centers_x.size() && ok; ++i) {
          int n = l.lo + static_cast<int>(i);
          Rational want = l.R - 1 / w.at(n);
          ok = l.centers_x[i] * l.centers_x[i] + hd_sq == want * want;
          if (!ok) bad = "a circle lost tangency with the lens";
        }
        // Inverse configuration matrix residual on each quadruple.
        for (int n = l.lo; n + 1 <= w.hi() && ok; ++n) {
          double r = quadruple_residual(l, w, n);
          ok = r < 1e-9;
          if (!ok) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3g", r);
            bad = std::string("configuration residual too large: ") + buf;
          }
        }
        boolean("chain_embedding", ok, bad, "chain embeds with exact tangencies");
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotRenderable) {
          skip("chain_embedding", e.what());
        } else {
          fail_check("chain_embedding", e.what());
        }
      }
    }
  }

  return out_;
}

int run_verify(const InputOptions& in, int depth, const std::string& constants_override) {
  Verifier v(in, depth, constants_override);
  std::vector<CheckResult> results = v.run();
  json j;
  j["input"] = in.echo();
  json checks = json::array();
  int failed = 0;
  for (const CheckResult& r : results) {
    json c;
    c["name"] = r.name;
    c["status"] = r.status;
    if (!r.detail.empty()) c["detail"] = r.detail;
    checks.push_back(c);
    failed += r.status == "fail";
  }
  j["checks"] = checks;
  j["ok"] = failed == 0;
  std::cout << j.dump(2) << "\n";
  return failed == 0 ? 0 : kExitVerifyFailed;
}

int run_render(const InputOptions& in, int circles, const RenderOptions& opt,
               const std::string& out_path) {
  if (circles < 1) fail(ErrorCode::OutOfRange, "need at least one circle");
  int back = (circles - 1) / 2;
  int forward = circles / 2;
  SequenceWindow w = build_window(in, back, forward);
  ChainLayout l = chain_layout(w);
  std::string svg = render_svg(l, opt);
  if (out_path.empty() || out_path == "-") {
    std::cout << svg;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail(ErrorCode::OutOfRange, "cannot open " + out_path);
    f << svg;
  }
  return 0;
}

int run_bfile(const InputOptions& in, int from, int to, bool underground) {
  anchored_triple(in);  // validate before any output
  if (from > to) {
    std::cout << "# " << in.echo() << " (empty range)\n";
    return 0;
  }
  if (!underground) {
    SequenceWindow w = build_window(in, std::max(-from, 0), std::max(to, 0));
    for (int n = from; n <= to; ++n) {
      // b-files carry integers; a fractional term means the input was not an
      // integer sequence to begin with.
      if (!is_integer(w.at(n)))
        fail(ErrorCode::NonIntegerSequence,
             "term at index " + std::to_string(n) + " is " + format_rational(w.at(n)));
    }
    std::cout << "# " << in.echo() << " alpha = " << format_rational(w.constants().alpha)
              << " beta = " << format_rational(w.constants().beta) << "\n";
    for (int n = from; n <= to; ++n) {
      std::cout << n << " " << format_rational(w.at(n)) << "\n";
    }
    return 0;
  }
  // Factor listing: a window of terms wide enough that factors from..to all
  // exist, whatever the anchor shift.
  int margin = 2;
  SequenceWindow w =
      build_window(in, std::max(-(from - margin), 0), std::max(to + margin, 0));
  UndergroundWindow f = factorize(w);
  std::cout << "# " << in.echo() << " s = " << f.s.get_str() << " k = " << f.k.get_str()
            << "\n";
  for (int n = from; n <= to; ++n) {
    std::cout << n << " " << f.at(n).get_str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integer sequences from circle chains inscribed in a symmetric lens"};
  app.require_subcommand(1);

  InputOptions gen_in, verify_in, render_in, bfile_in;
  int gen_back = 0, gen_forward = 8;
  bool gen_json = false;
  int verify_depth = 10;
  std::string verify_constants;
  int render_circles = 9;
  RenderOptions render_opt;
  std::string render_out;
  int bfile_from = 0, bfile_to = 20;
  bool bfile_underground = false;

  CLI::App* gen = app.add_subcommand("gen", "print a window of the sequence");
  add_input_options(gen, gen_in);
  gen->add_option("--back", gen_back, "terms before index 0")->capture_default_str();
  gen->add_option("--forward", gen_forward, "terms after index 0")->capture_default_str();
  gen->add_flag("--json", gen_json, "emit the window as json");

  CLI::App* verify = app.add_subcommand("verify", "check the window's identities");
  add_input_options(verify, verify_in);
  verify->add_option("--terms", verify_depth, "window half-depth used by the checks")
      ->capture_default_str();
  verify->add_option("--constants", verify_constants,
                     "expected 'alpha,beta'; fails the run when they differ");

  CLI::App* render = app.add_subcommand("render", "draw the chain as svg");
  add_input_options(render, render_in);
  render->add_option("--circles", render_circles, "how many chain circles")->capture_default_str();
  render->add_option("--scale", render_opt.scale, "output units per model unit")
      ->capture_default_str();
  render->add_option("--stroke", render_opt.stroke_width, "stroke width")->capture_default_str();
  render->add_option("--margin", render_opt.margin, "canvas padding")->capture_default_str();
  render->add_option("--out", render_out, "output path (default stdout)");

  CLI::App* bfile = app.add_subcommand("bfile", "list 'n value' lines");
  add_input_options(bfile, bfile_in);
  bfile->add_option("--from", bfile_from, "first index")->capture_default_str();
  bfile->add_option("--to", bfile_to, "last index")->capture_default_str();
  bfile->add_flag("--underground", bfile_underground, "list the factor layer instead");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return run_gen(gen_in, gen_back, gen_forward, gen_json);
    if (verify->parsed()) return run_verify(verify_in, verify_depth, verify_constants);
    if (render->parsed()) return run_render(render_in, render_circles, render_opt, render_out);
    if (bfile->parsed()) return run_bfile(bfile_in, bfile_from, bfile_to, bfile_underground);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NotRenderable ? kExitNotRenderable : kExitBadInput;
  }
  return 0;
}
