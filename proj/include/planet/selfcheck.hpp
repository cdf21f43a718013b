#pragma once

// Randomized sanity suites for the projective layer: classical incidence
// theorems that must hold for every generic input. These run in both exact
// and floating-point backends and report numeric residuals so callers can
// assert quantitative bounds.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "planet/cubic.hpp"
#include "planet/elliptic.hpp"
#include "planet/errors.hpp"
#include "planet/projective.hpp"
#include "planet/random.hpp"
#include "planet/singular.hpp"

namespace planet {

struct TrialOutcome {
  bool ok = false;
  double residual = 0.0;  // size of the quantity that should vanish
};

namespace detail {

/// Point b + t*c on the line joining b and c (assumes b != c).
template <class S>
Point<S> point_on_join(const Point<S>& b, const Point<S>& c, const S& t) {
  std::array<S, 3> v{b.c[0] + t * c.c[0], b.c[1] + t * c.c[1], b.c[2] + t * c.c[2]};
  return make_point(v[0], v[1], v[2]);
}

template <class S>
bool pairwise_distinct(const std::vector<Point<S>>& pts, const Tol& tol) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (points_equal(pts[i], pts[j], tol)) return false;
  return true;
}

}  // namespace detail

/// One trial of the nine-point closure check, a Desargues-type incidence
/// theorem: from generic a1,a2,b1,b2,b3 build c1 = (a1 b1)^(a2 b3) and
/// c3 = (a1 b3)^(a2 b1), pick a3 anywhere on the line b2 c3, close up with
/// c2 = (a1 b2)^(a3 b3). The nine points then carry seven collinear triples,
/// which forces the lines a2 a3, b1 b2, c1 c2 through one common point.
/// Returns nullopt if the random draw was degenerate.
template <class S>
std::optional<TrialOutcome> nine_point_trial(Rng& rng, const S& exemplar, const Tol& tol = {}) {
  using T = scalar_traits<S>;
  try {
    Point<S> a1 = random_point(rng, exemplar);
    Point<S> a2 = random_point(rng, exemplar);
    Point<S> b1 = random_point(rng, exemplar);
    Point<S> b2 = random_point(rng, exemplar);
    Point<S> b3 = random_point(rng, exemplar);
    if (!detail::pairwise_distinct<S>({a1, a2, b1, b2, b3}, tol)) return std::nullopt;

    Point<S> c1 = meet(join(a1, b1, tol), join(a2, b3, tol), tol);
    Point<S> c3 = meet(join(a1, b3, tol), join(a2, b1, tol), tol);
    if (points_equal(c3, b2, tol)) return std::nullopt;

    S t = random_scalar(rng, exemplar);
    if (T::is_zero(t, tol)) t = T::one_like(exemplar);
    Point<S> a3 = detail::point_on_join(b2, c3, t);
    if (points_equal(a3, a1, tol) || points_equal(a3, a2, tol)) return std::nullopt;

    Point<S> c2 = meet(join(a1, b2, tol), join(a3, b3, tol), tol);

    Line<S> l1 = join(a2, a3, tol);
    Line<S> l2 = join(b1, b2, tol);
    Line<S> l3 = join(c1, c2, tol);
    if (lines_equal(l1, l2, tol) || lines_equal(l1, l3, tol) || lines_equal(l2, l3, tol))
      return std::nullopt;

    TrialOutcome out;
    out.residual = concurrency_residual(l1, l2, l3);
    out.ok = concurrent(l1, l2, l3, tol);
    return out;
  } catch (const DegenerateInputError&) {
    return std::nullopt;
  }
}

/// One trial of the complete-quadrangle harmonic check: the two diagonal
/// points c1, c2 of the quadrangle a1 a2 b1 b2 separate the traces of the
/// remaining two sides harmonically, cr = -1.
template <class S>
std::optional<TrialOutcome> quadrangle_trial(Rng& rng, const S& exemplar, const Tol& tol = {}) {
  using T = scalar_traits<S>;
  try {
    Point<S> a1 = random_point(rng, exemplar);
    Point<S> a2 = random_point(rng, exemplar);
    Point<S> b1 = random_point(rng, exemplar);
    Point<S> b2 = random_point(rng, exemplar);
    if (!detail::pairwise_distinct<S>({a1, a2, b1, b2}, tol)) return std::nullopt;

    Point<S> c1 = meet(join(a1, b1, tol), join(a2, b2, tol), tol);
    Point<S> c2 = meet(join(a1, b2, tol), join(a2, b1, tol), tol);
    if (points_equal(c1, c2, tol)) return std::nullopt;

    Line<S> axis = join(c1, c2, tol);
    Point<S> x1 = meet(axis, join(a1, a2, tol), tol);
    Point<S> x2 = meet(axis, join(b1, b2, tol), tol);
    if (points_equal(x1, x2, tol) || points_equal(x1, c1, tol) || points_equal(x1, c2, tol) ||
        points_equal(x2, c1, tol) || points_equal(x2, c2, tol))
      return std::nullopt;

    S cr = cross_ratio(c1, c2, x1, x2, tol);
    S err = cr + T::one_like(exemplar);
    TrialOutcome out;
    out.residual = T::abs(err);
    out.ok = T::is_zero(err, tol);
    return out;
  } catch (const DegenerateInputError&) {
    return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

namespace detail {

inline CD chord_unit_scale(Rng& rng) {
  std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> lg(-0.1, 0.1);
  double r = std::exp(lg(rng));
  double a = ph(rng);
  return {r * std::cos(a), r * std::sin(a)};
}

inline CD chord_disc(Rng& rng) {
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (;;) {
    CD s{u(rng), u(rng)};
    double m = std::abs(s);
    if (m >= 0.25 && m <= 0.9) return s;
  }
}

}  // namespace detail

struct ChordTrial {
  double held = 0.0;       // collinearity residual with the relation satisfied
  double perturbed = 0.0;  // residual after bumping the third parameter
};

/// One well-conditioned trial of the chord law on a singular cubic: two
/// random parameters, the third from the pairing, residuals with the
/// relation held and with the third parameter bumped. Draws whose third
/// intersection is ill-conditioned are rejected and redrawn (the residual
/// at a coarse probe offset bounds the bumped residual, since the
/// determinant is holomorphic in the parameter); nullopt only if the
/// attempt cap runs out.
inline std::optional<ChordTrial> singular_chord_trial(SingularCase c, Rng& rng,
                                                      double bump = 1e-3) {
  const bool mult = singular_case_multiplicative(c);
  const int nc = singular_component_count(c);
  const int c1 = 0, c2 = (nc == 3) ? 1 : 0, c3 = nc - 1;
  for (int attempt = 0; attempt < 200; ++attempt) {
    CD s1 = mult ? detail::chord_unit_scale(rng) : detail::chord_disc(rng);
    CD s2 = mult ? detail::chord_unit_scale(rng) : detail::chord_disc(rng);
    CD s3 = singular_pairing_third(c, s1, s2);
    if (nc == 1 &&
        (std::abs(s1 - s2) < 0.4 || std::abs(s2 - s3) < 0.4 || std::abs(s3 - s1) < 0.4))
      continue;
    if (nc == 2 && std::abs(s1 - s2) < 0.4) continue;
    if (!mult && std::abs(s3) > 1.2) continue;
    Point<CD> a = singular_param(c, c1, s1);
    Point<CD> b = singular_param(c, c2, s2);
    if (collinearity_residual(a, b, singular_param(c, c3, s3 + CD{0.01, 0.0})) < 3e-3) continue;
    ChordTrial out;
    out.held = collinearity_residual(a, b, singular_param(c, c3, s3));
    out.perturbed = collinearity_residual(a, b, singular_param(c, c3, s3 + CD{bump, 0.0}));
    return out;
  }
  return std::nullopt;
}

/// One trial of the nine-point Chasles property: nine curve points whose
/// uniformizing parameters sum into the lattice, fed to complete_set_check.
/// nullopt marks a degenerate or inconclusive draw.
inline std::optional<bool> complete_set_trial(const EllipticData& e, Rng& rng,
                                              const Tol& tol = {}) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::array<std::array<double, 2>, 9> co;
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < 8; ++i) {
    co[i] = {u(rng), u(rng)};
    sa += co[i][0];
    sb += co[i][1];
  }
  co[8] = {1.0 - (sa - std::floor(sa)), 1.0 - (sb - std::floor(sb))};
  auto near_edge = [](double x) { return std::min(x, 1.0 - x) < 0.02; };
  if (near_edge(co[8][0]) && near_edge(co[8][1])) return std::nullopt;
  auto wrap_dist = [](double x, double y) {
    double d = std::abs(x - y);
    return std::min(d, 1.0 - d);
  };
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      if (wrap_dist(co[i][0], co[j][0]) < 0.02 && wrap_dist(co[i][1], co[j][1]) < 0.02)
        return std::nullopt;
  std::vector<Point<CD>> pts;
  for (const auto& ab : co) pts.push_back(pe_map(e, CD{ab[0], 0.0} + CD{ab[1], 0.0} * e.tau));
  try {
    return complete_set_check(pts, tol);
  } catch (const DegenerateInputError&) {
    return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

struct SuiteReport {
  int requested = 0;
  int completed = 0;  // non-degenerate trials that ran to a verdict
  int passed = 0;
  double max_residual = 0.0;
};

/// Runs `trials` completed trials of `fn` (redrawing degenerate instances,
/// with a hard attempt cap so a broken generator cannot loop forever).
template <class S, class TrialFn>
SuiteReport run_trials(TrialFn fn, Rng& rng, const S& exemplar, int trials, const Tol& tol = {}) {
  SuiteReport rep;
  rep.requested = trials;
  int attempts_left = trials * 50;
  while (rep.completed < trials && attempts_left-- > 0) {
    auto out = fn(rng, exemplar, tol);
    if (!out) continue;
    ++rep.completed;
    if (out->ok) ++rep.passed;
    rep.max_residual = std::max(rep.max_residual, out->residual);
  }
  return rep;
}

}  // namespace planet
