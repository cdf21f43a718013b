#pragma once

// Ternary cubic forms: evaluation, fitting through point sets, singular-point
// search, classification of the possible degenerations, chords and the
// flex-based group law, and the eight-points-force-the-ninth pencil check.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planet/errors.hpp"
#include "planet/linalg.hpp"
#include "planet/polynomial.hpp"
#include "planet/projective.hpp"
#include "planet/scalar.hpp"

namespace planet {

namespace detail {

// Projective normalization of a coefficient vector, mirroring the point
// convention: exact backends scale the last nonzero entry to 1, approximate
// backends the entry of largest modulus.
template <class S>
void normalize_projective(std::vector<S>& c) {
  if constexpr (scalar_traits<S>::is_exact) {
    int last = -1;
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
      if (!c[i].is_zero()) last = i;
    if (last < 0) throw DegenerateInputError("cannot normalize the zero vector");
    S inv = scalar_traits<S>::one_like(c[last]) / c[last];
    for (auto& x : c) x = x * inv;
  } else {
    int best = 0;
    double bm = -1.0;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
      double m = scalar_traits<S>::abs(c[i]);
      if (m > bm) {
        bm = m;
        best = i;
      }
    }
    if (bm == 0.0) throw DegenerateInputError("cannot normalize the zero vector");
    S inv = scalar_traits<S>::one_like(c[best]) / c[best];
    for (auto& x : c) x = x * inv;
  }
}

template <class S>
double hp_mass(const HomPoly<S>& f) {
  double m = 0.0;
  for (const auto& c : f.c) m = std::max(m, scalar_traits<S>::abs(c));
  return m;
}

}  // namespace detail

/// A nonzero ternary cubic form, coefficients stored projectively normalized
/// in the monomial order x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
template <class S>
struct Cubic {
  HomPoly<S> f;
};

template <class S>
Cubic<S> make_cubic(HomPoly<S> f) {
  if (f.d != 3) throw DomainError("make_cubic needs a degree-3 form");
  detail::normalize_projective(f.c);
  return Cubic<S>{std::move(f)};
}

template <class S>
Cubic<S> make_cubic(std::vector<S> coeffs) {
  if (coeffs.size() != 10) throw DomainError("make_cubic needs 10 coefficients");
  HomPoly<S> f;
  f.d = 3;
  f.c = std::move(coeffs);
  return make_cubic(std::move(f));
}

template <class S>
S evaluate(const Cubic<S>& c, const Point<S>& p) {
  return hp_eval(c.f, p);
}

template <class S>
std::array<S, 3> gradient(const Cubic<S>& c, const Point<S>& p) {
  return hp_gradient_at(c.f, p);
}

/// |f(p)| scaled by the coefficient and coordinate magnitudes.
template <class S>
double on_curve_residual(const Cubic<S>& c, const Point<S>& p) {
  double mp = 0.0;
  for (const auto& x : p.c) mp = std::max(mp, scalar_traits<S>::abs(x));
  double scale = detail::hp_mass(c.f) * mp * mp * mp;
  return scalar_traits<S>::abs(hp_eval(c.f, p)) / std::max(1e-300, scale);
}

template <class S>
bool is_on_curve(const Cubic<S>& c, const Point<S>& p, const Tol& tol = {}) {
  if constexpr (scalar_traits<S>::is_exact)
    return hp_eval(c.f, p).is_zero();
  else
    return on_curve_residual(c, p) <= tol.eq;
}

template <class S>
bool is_singular_point(const Cubic<S>& c, const Point<S>& p, const Tol& tol = {}) {
  auto g = hp_gradient_at(c.f, p);
  if constexpr (scalar_traits<S>::is_exact) {
    return g[0].is_zero() && g[1].is_zero() && g[2].is_zero();
  } else {
    double scale = std::max(1e-300, detail::hp_mass(c.f));
    for (const auto& v : g)
      if (scalar_traits<S>::abs(v) / scale > tol.rank) return false;
    return true;
  }
}

template <class S>
bool is_regular_point(const Cubic<S>& c, const Point<S>& p, const Tol& tol = {}) {
  return is_on_curve(c, p, tol) && !is_singular_point(c, p, tol);
}

/// Basis of the space of cubics through all the given points: nullspace of
/// the point-evaluation matrix on the 10 cubic monomials.
template <class S>
std::vector<HomPoly<S>> fit_cubics(const std::vector<Point<S>>& pts, const Tol& tol = {}) {
  if (pts.empty()) throw DomainError("fit_cubics needs at least one point");
  Mat<S> rows;
  for (const auto& p : pts) {
    const S one = scalar_traits<S>::one_like(p.c[0]);
    std::array<std::vector<S>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      pw[v].assign(4, one);
      for (int e = 1; e <= 3; ++e) pw[v][e] = pw[v][e - 1] * p.c[v];
    }
    Vec<S> row;
    for (int ax = 3; ax >= 0; --ax)
      for (int ay = 3 - ax; ay >= 0; --ay) row.push_back(pw[0][ax] * pw[1][ay] * pw[2][3 - ax - ay]);
    rows.push_back(std::move(row));
  }
  std::vector<HomPoly<S>> basis;
  for (auto& v : mat_nullspace(rows, tol)) {
    HomPoly<S> g;
    g.d = 3;
    g.c = std::move(v);
    basis.push_back(std::move(g));
  }
  return basis;
}

/// f composed with the linear substitution v -> M v.
template <class S>
HomPoly<S> hp_substitute_linear(const HomPoly<S>& f, const std::array<std::array<S, 3>, 3>& m) {
  std::array<HomPoly<S>, 3> lin = {hp_linear(m[0][0], m[0][1], m[0][2]),
                                   hp_linear(m[1][0], m[1][1], m[1][2]),
                                   hp_linear(m[2][0], m[2][1], m[2][2])};
  // Powers of each substituted variable up to the degree.
  std::array<std::vector<HomPoly<S>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(hp_zero(0, f.c[0]));
    pw[v][0].c[0] = scalar_traits<S>::one_like(f.c[0]);
    for (int e = 1; e <= f.d; ++e) pw[v].push_back(pw[v][e - 1] * lin[v]);
  }
  HomPoly<S> out = hp_zero(f.d, f.c[0]);
  for (int ax = 0; ax <= f.d; ++ax)
    for (int ay = 0; ax + ay <= f.d; ++ay) {
      const S& cf = f.at(ax, ay);
      if constexpr (scalar_traits<S>::is_exact) {
        if (cf.is_zero()) continue;
      }
      HomPoly<S> term = pw[0][ax] * pw[1][ay] * pw[2][f.d - ax - ay];
      out = out + hp_scale(term, cf);
    }
  return out;
}

namespace detail {

template <class S>
Point<S> apply_matrix(const std::array<std::array<S, 3>, 3>& m, const Point<S>& p) {
  std::array<S, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * p.c[0] + m[i][1] * p.c[1] + m[i][2] * p.c[2];
  return make_point(r[0], r[1], r[2]);
}

template <class S>
std::array<std::array<S, 3>, 3> int_matrix(const S& exemplar, const std::array<std::array<int, 3>, 3>& m) {
  std::array<std::array<S, 3>, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = scalar_traits<S>::from_int_like(exemplar, m[i][j]);
  return out;
}

template <class S>
bool poly1_negligible(const Poly1<S>& p, double scale, const Tol& tol) {
  for (const auto& c : p.c)
    if (scalar_traits<S>::abs(c) > tol.rank * std::max(1e-300, scale)) return false;
  return true;
}

template <class S>
bool forms_vanish_at(const std::vector<HomPoly<S>>& forms, const Point<S>& p, const Tol& tol) {
  for (const auto& f : forms) {
    S v = hp_eval(f, p);
    if constexpr (scalar_traits<S>::is_exact) {
      if (!v.is_zero()) return false;
    } else {
      if (scalar_traits<S>::abs(v) > tol.rank * std::max(1e-300, hp_mass(f))) return false;
    }
  }
  return true;
}

// Damped Gauss-Newton on the system of forms, in the affine chart of the
// largest coordinate. Zeros of multiplicity above one only converge
// linearly, so the budget is generous. Approximate backend only.
inline Point<CD> refine_zero(const std::vector<HomPoly<CD>>& forms, Point<CD> p, const Tol&) {
  const int n = static_cast<int>(forms.size());
  std::vector<std::array<HomPoly<CD>, 3>> grads;
  for (const auto& f : forms) grads.push_back(hp_gradient(f));

  auto resid_norm = [&](const Point<CD>& q) {
    double s = 0.0;
    for (const auto& f : forms) s += std::norm(hp_eval(f, q));
    return s;
  };

  int chart = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(p.c[i]) > std::abs(p.c[chart])) chart = i;
  const int j1 = (chart + 1) % 3, j2 = (chart + 2) % 3;

  for (int it = 0; it < 60; ++it) {
    double before = resid_norm(p);
    if (before < 1e-60) break;

    // Normal equations of the n x 2 Jacobian.
    CD a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
    for (int k = 0; k < n; ++k) {
      CD r = hp_eval(forms[k], p);
      CD d1 = hp_eval(grads[k][j1], p), d2 = hp_eval(grads[k][j2], p);
      a00 += std::conj(d1) * d1;
      a01 += std::conj(d1) * d2;
      a11 += std::conj(d2) * d2;
      b0 -= std::conj(d1) * r;
      b1 -= std::conj(d2) * r;
    }
    double damp = 1e-12 * (std::abs(a00) + std::abs(a11)) + 1e-300;
    a00 += damp;
    a11 += damp;
    CD det = a00 * a11 - a01 * std::conj(a01);
    if (std::abs(det) < 1e-300) break;
    CD s1 = (b0 * a11 - a01 * b1) / det;
    CD s2 = (a00 * b1 - std::conj(a01) * b0) / det;

    double scale = 1.0;
    Point<CD> next = p;
    bool improved = false;
    for (int h = 0; h < 8 && !improved; ++h) {
      std::array<CD, 3> c = p.c;
      c[j1] += scale * s1;
      c[j2] += scale * s2;
      next = make_point(c[0], c[1], c[2]);
      improved = resid_norm(next) < before;
      scale *= 0.5;
    }
    if (!improved) break;
    p = next;
  }
  return p;
}

template <class S>
Point<S> maybe_refine(const std::vector<HomPoly<S>>& forms, const Point<S>& p, const Tol& tol) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)forms;
    (void)tol;
    return p;
  } else {
    return refine_zero(forms, p, tol);
  }
}

template <class S>
struct ZeroSearch {
  std::vector<Point<S>> points;
  bool complete = false;             // the list is provably the whole zero set
  bool positive_dimensional = false; // a curve of common zeros was detected
};

// Roots of p; exact side reports completeness, approximate side always
// enumerates. Multiplicity is not preserved.
template <class S>
std::pair<std::vector<S>, bool> scalar_roots(const Poly1<S>& p, const Tol& tol) {
  if constexpr (scalar_traits<S>::is_exact) {
    auto rep = exact_roots(p);
    std::vector<S> out;
    for (const auto& r : rep.roots) {
      bool seen = false;
      for (const auto& s : out) seen = seen || s == r;
      if (!seen) out.push_back(r);
    }
    return {out, rep.complete};
  } else {
    auto rs = poly1_roots(trimmed(p, tol), tol);
    std::vector<S> out;
    for (const auto& r : rs) {
      bool seen = false;
      for (const auto& s : out) seen = seen || scalar_eq(s, r, tol);
      if (!seen) out.push_back(r);
    }
    return {out, true};
  }
}

// Common roots of a family of univariate polynomials (not all zero).
template <class S>
std::pair<std::vector<S>, bool> family_common_roots(const std::vector<Poly1<S>>& polys,
                                                    const Tol& tol) {
  if constexpr (scalar_traits<S>::is_exact) {
    Poly1<S> g;
    for (const auto& p : polys) {
      if (p.is_zero()) continue;
      g = g.is_zero() ? p : poly1_gcd(g, p);
    }
    if (g.is_zero() || g.deg() < 1) return {{}, true};
    return scalar_roots(g, tol);
  } else {
    const Poly1<S>* first = nullptr;
    double scale = 0.0;
    for (const auto& p : polys)
      for (const auto& c : p.c) scale = std::max(scale, scalar_traits<S>::abs(c));
    for (const auto& p : polys)
      if (!poly1_negligible(p, scale, tol)) {
        first = &p;
        break;
      }
    if (!first) return {{}, true};
    auto [roots, ok] = scalar_roots(*first, tol);
    std::vector<S> out;
    for (const auto& r : roots) {
      bool all = true;
      double rm = std::max(1.0, scalar_traits<S>::abs(r));
      for (const auto& p : polys) {
        if (poly1_negligible(p, scale, tol)) continue;
        double m = scalar_traits<S>::abs(poly1_eval(p, r));
        all = all && m <= std::sqrt(tol.rank) * std::max(1.0, scale * std::pow(rm, p.deg()));
      }
      if (all) out.push_back(r);
    }
    return {out, ok};
  }
}

// All common projective zeros of the given forms (each nonzero, same degree
// not required). Works one elimination variable at a time; any single
// variable whose bookkeeping stays unambiguous proves completeness.
template <class S>
ZeroSearch<S> common_zeros(const std::vector<HomPoly<S>>& forms_in, const Tol& tol) {
  ZeroSearch<S> out;
  std::vector<HomPoly<S>> forms;
  for (const auto& f : forms_in)
    if (!f.is_zero()) forms.push_back(f);
  if (forms.empty()) throw DomainError("common_zeros needs a nonzero form");
  const S ex = forms[0].c[0];
  const S one = scalar_traits<S>::one_like(ex);
  const S zero = scalar_traits<S>::zero_like(ex);
  if (forms.size() == 1) {
    out.positive_dimensional = true;  // a single form vanishes along a curve
    return out;
  }

  // Near a zero of multiplicity above one, numeric candidates arrive as a
  // cluster. A genuine zero always has some seed that refines far below the
  // detection gate, so acceptance is much stricter than the gate; survivors
  // are still merged under a radius well above the equality tolerance but
  // far below genuine point separations, keeping the best representative.
  Tol merge = tol, accept = tol;
  if constexpr (!scalar_traits<S>::is_exact) {
    merge.eq = std::cbrt(tol.eq);
    accept.rank = std::max(std::pow(tol.rank, 1.5), 1e-13);
  }
  auto residual_of = [&](const Point<S>& p) {
    double worst = 0.0;
    if constexpr (!scalar_traits<S>::is_exact)
      for (const auto& f : forms)
        worst = std::max(worst, scalar_traits<S>::abs(hp_eval(f, p)) /
                                    std::max(1e-300, hp_mass(f)));
    return worst;
  };
  std::vector<double> resids;
  auto consider = [&](const Point<S>& cand) {
    Point<S> p = maybe_refine(forms, cand, tol);
    if (!forms_vanish_at(forms, p, accept)) return;
    double r = residual_of(p);
    for (size_t i = 0; i < out.points.size(); ++i)
      if (points_equal(p, out.points[i], merge)) {
        if (r < resids[i]) {
          out.points[i] = p;
          resids[i] = r;
        }
        return;
      }
    out.points.push_back(p);
    resids.push_back(r);
  };

  // Unit points are easy to miss in every chart; test them outright.
  for (int i = 0; i < 3; ++i) {
    std::array<S, 3> c = {zero, zero, zero};
    c[i] = one;
    consider(make_point(c[0], c[1], c[2]));
  }

  double form_scale = 0.0;
  for (const auto& f : forms) form_scale = std::max(form_scale, hp_mass(f));

  for (int var = 0; var < 3 && !out.positive_dimensional; ++var) {
    bool var_clean = true;
    const int u = (var + 1) % 3, w = (var + 2) % 3;

    std::vector<std::vector<Poly1<S>>> cv;
    for (const auto& f : forms) cv.push_back(hp_coeffs_in_var(f, var));

    // Pairwise resultants in this variable; a common zero in the chart
    // u != 0 forces every one of them to vanish at its direction.
    std::vector<double> cv_mass(forms.size(), 0.0);
    for (size_t i = 0; i < forms.size(); ++i)
      for (const auto& p : cv[i])
        for (const auto& c : p.c) cv_mass[i] = std::max(cv_mass[i], scalar_traits<S>::abs(c));

    std::vector<Poly1<S>> res;
    bool any_nonzero = false;
    for (size_t i = 0; i < forms.size(); ++i)
      for (size_t j = i + 1; j < forms.size(); ++j) {
        Poly1<S> r = sylvester_resultant(cv[i], cv[j]);
        bool zero_res;
        if constexpr (scalar_traits<S>::is_exact) {
          zero_res = r.is_zero();
        } else {
          // Resultant entries scale like products of the two coefficient
          // masses, one factor per Sylvester row.
          double rs = std::pow(std::max(1e-12, cv_mass[i]), double(cv[j].size() - 1)) *
                      std::pow(std::max(1e-12, cv_mass[j]), double(cv[i].size() - 1));
          zero_res = r.is_zero() || poly1_negligible(r, rs, tol);
        }
        if (!zero_res) {
          res.push_back(std::move(r));
          any_nonzero = true;
        }
      }
    if (!any_nonzero) {
      var_clean = false;  // every pair shares structure; no direction info
    } else {
      std::vector<S> dirs;
      if constexpr (scalar_traits<S>::is_exact) {
        Poly1<S> g = res[0];
        for (size_t i = 1; i < res.size(); ++i) g = poly1_gcd(g, res[i]);
        auto [roots, ok] = scalar_roots(g, tol);
        dirs = roots;
        var_clean = var_clean && ok;
      } else {
        for (const auto& r : res) {
          auto [roots, ok] = scalar_roots(r, tol);
          var_clean = var_clean && ok;
          for (const auto& t0 : roots) {
            bool seen = false;
            for (const auto& s : dirs) seen = seen || scalar_eq(s, t0, tol);
            if (!seen) dirs.push_back(t0);
          }
        }
      }

      for (const auto& t0 : dirs) {
        // Points (v : u : w) with u = 1, w = t0 in this chart.
        std::vector<Poly1<S>> spec;
        bool all_zero = true;
        for (size_t fi = 0; fi < cv.size(); ++fi) {
          Poly1<S> p;
          for (const auto& coeff : cv[fi]) p.c.push_back(poly1_eval(coeff, t0));
          p.trim();
          if constexpr (!scalar_traits<S>::is_exact) {
            double ts = std::pow(std::max(1.0, scalar_traits<S>::abs(t0)), forms[fi].d);
            if (poly1_negligible(p, 4.0 * cv_mass[fi] * ts, tol)) p = Poly1<S>{};
          }
          all_zero = all_zero && p.is_zero();
          spec.push_back(std::move(p));
        }
        if (all_zero) {
          out.positive_dimensional = true;
          break;
        }
        auto [roots, ok] = family_common_roots(spec, tol);
        var_clean = var_clean && ok;
        for (const auto& v0 : roots) {
          std::array<S, 3> c;
          c[var] = v0;
          c[u] = one;
          c[w] = t0;
          consider(make_point(c[0], c[1], c[2]));
        }
      }
    }
    if (out.positive_dimensional) break;

    // The chart u = 0: restrict every form to that line and intersect.
    std::array<S, 3> eu{zero, zero, zero}, ew{zero, zero, zero};
    ew[w] = one;
    eu[var] = one;
    Point<S> base = make_point(ew[0], ew[1], ew[2]);
    Point<S> dir = make_point(eu[0], eu[1], eu[2]);
    std::vector<Poly1<S>> restricted;
    bool all_zero = true;
    for (const auto& f : forms) {
      Poly1<S> r = hp_restrict(f, base, dir);
      r.trim();
      if constexpr (!scalar_traits<S>::is_exact) {
        if (poly1_negligible(r, form_scale, tol)) r = Poly1<S>{};
      }
      all_zero = all_zero && r.is_zero();
      restricted.push_back(std::move(r));
    }
    if (all_zero) {
      out.positive_dimensional = true;
      break;
    }
    auto [roots, ok] = family_common_roots(restricted, tol);
    var_clean = var_clean && ok;
    for (const auto& t0 : roots) {
      std::array<S, 3> c;
      c[w] = one;
      c[var] = t0;
      c[u] = zero;
      consider(make_point(c[0], c[1], c[2]));
    }

    out.complete = out.complete || var_clean;
  }
  if (out.positive_dimensional) out.complete = true;
  return out;
}

}  // namespace detail

enum class CubicTag {
  smooth,
  nodal,
  cuspidal,
  conic_line_transverse,
  conic_line_tangent,
  triangle,
  concurrent_lines,
  non_reduced
};

inline const char* cubic_tag_name(CubicTag t) {
  switch (t) {
    case CubicTag::smooth: return "smooth";
    case CubicTag::nodal: return "nodal";
    case CubicTag::cuspidal: return "cuspidal";
    case CubicTag::conic_line_transverse: return "conic+line transverse";
    case CubicTag::conic_line_tangent: return "conic+line tangent";
    case CubicTag::triangle: return "triangle";
    case CubicTag::concurrent_lines: return "concurrent-lines";
    case CubicTag::non_reduced: return "non-reduced/other";
  }
  return "?";
}

template <class S>
struct CubicClass {
  CubicTag tag = CubicTag::smooth;
  std::vector<Point<S>> singular_points;
  std::vector<HomPoly<S>> components;  // linear/quadratic factors when split
};

namespace detail {

// Intersections of a line (spanned by two points of it) with a form,
// including the intersection at the second spanning point when the
// restriction drops degree. Returns representative points and whether all
// roots were distinct.
template <class S>
std::pair<std::vector<Point<S>>, bool> line_form_intersections(const HomPoly<S>& f,
                                                               const Point<S>& a,
                                                               const Point<S>& b,
                                                               const Tol& tol) {
  Poly1<S> r = hp_restrict(f, a, b);
  if constexpr (!scalar_traits<S>::is_exact) r = trimmed(r, tol);
  r.trim();
  if (r.is_zero()) throw DegenerateInputError("line lies inside the form");
  int infinity_mult = f.d - r.deg();

  std::vector<S> roots;
  bool distinct = true;
  if constexpr (scalar_traits<S>::is_exact) {
    auto rep = exact_roots(r);
    if (!rep.complete)
      throw NumericError("component splitting needs roots outside the session field");
    for (const auto& t0 : rep.roots) {
      for (const auto& s : roots) distinct = distinct && !(s == t0);
      roots.push_back(t0);
    }
  } else {
    auto rs = poly1_roots(r, tol);
    for (const auto& t0 : rs) {
      for (const auto& s : roots) distinct = distinct && !scalar_eq(s, t0, Tol{1e-6, tol.rank, tol.series});
      roots.push_back(t0);
    }
  }
  if (infinity_mult > 1) distinct = false;

  std::vector<Point<S>> pts;
  for (const auto& t0 : roots)
    pts.push_back(make_point(a.c[0] + t0 * b.c[0], a.c[1] + t0 * b.c[1], a.c[2] + t0 * b.c[2]));
  if (infinity_mult > 0) {
    for (const auto& q : pts) distinct = distinct && !points_equal(q, b, tol);
    pts.push_back(b);
  }
  // Collapse coincident representatives.
  std::vector<Point<S>> uniq;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& q : uniq) seen = seen || points_equal(p, q, tol);
    if (!seen) uniq.push_back(p);
  }
  if (uniq.size() < pts.size()) distinct = false;
  return {uniq, distinct};
}

// Two distinct points spanning a line, taken from its cross products with
// the coordinate directions.
template <class S>
std::pair<Point<S>, Point<S>> two_points_on(const Line<S>& l, const Tol& tol) {
  const S zero = scalar_traits<S>::zero_like(l.c[0]);
  double lm = 0.0;
  for (const auto& c : l.c) lm = std::max(lm, scalar_traits<S>::abs(c));
  std::vector<Point<S>> pts;
  const std::array<std::array<S, 3>, 3> raw = {{{zero, l.c[2], -l.c[1]},
                                                {-l.c[2], zero, l.c[0]},
                                                {l.c[1], -l.c[0], zero}}};
  for (const auto& c : raw) {
    bool nonzero;
    if constexpr (scalar_traits<S>::is_exact)
      nonzero = !(c[0].is_zero() && c[1].is_zero() && c[2].is_zero());
    else
      nonzero = std::max({scalar_traits<S>::abs(c[0]), scalar_traits<S>::abs(c[1]),
                          scalar_traits<S>::abs(c[2])}) > 1e-3 * lm;
    if (nonzero) pts.push_back(make_point(c[0], c[1], c[2]));
  }
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (!points_equal(pts[i], pts[j], tol)) return {pts[i], pts[j]};
  throw DegenerateInputError("line does not span two distinct points");
}

// A coordinate line avoiding v, as two spanning points.
template <class S>
std::pair<Point<S>, Point<S>> line_avoiding(const Point<S>& v) {
  int i = 0;
  for (int k = 1; k < 3; ++k)
    if (scalar_traits<S>::abs(v.c[k]) > scalar_traits<S>::abs(v.c[i])) i = k;
  const S one = scalar_traits<S>::one_like(v.c[0]);
  const S zero = scalar_traits<S>::zero_like(v.c[0]);
  std::array<S, 3> a{zero, zero, zero}, b{zero, zero, zero};
  a[(i + 1) % 3] = one;
  b[(i + 2) % 3] = one;
  return {make_point(a[0], a[1], a[2]), make_point(b[0], b[1], b[2])};
}

inline CD conj_s(const CD& v) { return std::conj(v); }
template <class S>
S conj_s(const S& v) {
  return v;
}

// Dense linear solve with partial pivoting; only tiny normal-equation
// systems pass through here.
template <class S>
Vec<S> solve_linear(Mat<S> a, Vec<S> b) {
  const int n = static_cast<int>(a.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (scalar_traits<S>::abs(a[r][k]) > scalar_traits<S>::abs(a[piv][k])) piv = r;
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    for (int r = k + 1; r < n; ++r) {
      S m = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] = a[r][c] - m * a[k][c];
      b[r] = b[r] - m * b[k];
    }
  }
  Vec<S> x(n, scalar_traits<S>::zero_like(b[0]));
  for (int k = n - 1; k >= 0; --k) {
    S s = b[k];
    for (int c = k + 1; c < n; ++c) s = s - a[k][c] * x[c];
    x[k] = s / a[k][k];
  }
  return x;
}

// Quotient of f by the linear form of the given line, if it divides. The
// approximate branch polishes line and quotient together by alternating
// least squares before judging the division residual: a candidate line is
// only known to the accuracy of the singular point it came from, while a
// genuine factorization supports far more precision than that. The line is
// updated in place on success.
template <class S>
std::optional<HomPoly<S>> divide_linear(const HomPoly<S>& f, Line<S>& l, const Tol& tol) {
  const S one = scalar_traits<S>::one_like(f.c[0]);
  const S zero = scalar_traits<S>::zero_like(f.c[0]);
  const int qd = f.d - 1;
  const int qn = HomPoly<S>::count(qd);

  if constexpr (scalar_traits<S>::is_exact) {
    HomPoly<S> lf = hp_linear(l.c[0], l.c[1], l.c[2]);
    // Columns: l * (each monomial of degree f.d - 1), then f itself.
    Mat<S> m(f.c.size(), Vec<S>(qn + 1, zero));
    int col = 0;
    for (int ax = qd; ax >= 0; --ax)
      for (int ay = qd - ax; ay >= 0; --ay) {
        HomPoly<S> mono = hp_zero(qd, f.c[0]);
        mono.at(ax, ay) = one;
        HomPoly<S> prod = lf * mono;
        for (size_t r = 0; r < prod.c.size(); ++r) m[r][col] = prod.c[r];
        ++col;
      }
    for (size_t r = 0; r < f.c.size(); ++r) m[r][qn] = f.c[r];

    for (auto& v : mat_nullspace(m, tol)) {
      if (v[qn].is_zero()) continue;
      HomPoly<S> q = hp_zero(qd, f.c[0]);
      S neg_inv = -(one / v[qn]);
      for (int k = 0; k < qn; ++k) q.c[k] = v[k] * neg_inv;
      return q;
    }
    return std::nullopt;
  } else {
    std::vector<HomPoly<S>> monos;
    for (int ax = qd; ax >= 0; --ax)
      for (int ay = qd - ax; ay >= 0; --ay) {
        HomPoly<S> mono = hp_zero(qd, f.c[0]);
        mono.at(ax, ay) = one;
        monos.push_back(std::move(mono));
      }
    auto ls_solve = [&](const std::vector<HomPoly<S>>& cols) {
      const int n = static_cast<int>(cols.size());
      Mat<S> g(n, Vec<S>(n, zero));
      Vec<S> rhs(n, zero);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
          for (size_t r = 0; r < f.c.size(); ++r)
            g[i][j] = g[i][j] + conj_s(cols[i].c[r]) * cols[j].c[r];
        for (size_t r = 0; r < f.c.size(); ++r)
          rhs[i] = rhs[i] + conj_s(cols[i].c[r]) * f.c[r];
      }
      return solve_linear(std::move(g), std::move(rhs));
    };

    const double cut = tol.rank * std::max(1e-300, hp_mass(f));
    const size_t nc = f.c.size();
    std::array<S, 3> lw = l.c;

    // Seed quotient: plain least-squares division by the initial line.
    HomPoly<S> q = hp_zero(qd, f.c[0]);
    {
      HomPoly<S> lf = hp_linear(lw[0], lw[1], lw[2]);
      std::vector<HomPoly<S>> cols;
      for (const auto& mono : monos) cols.push_back(lf * mono);
      auto qc = ls_solve(cols);
      for (int k = 0; k < qn; ++k) q.c[k] = qc[k];
    }

    auto sup_res = [&](const std::array<S, 3>& lc, const HomPoly<S>& qc) {
      HomPoly<S> prod = hp_linear(lc[0], lc[1], lc[2]) * qc;
      double res = 0.0;
      for (size_t r = 0; r < nc; ++r)
        res = std::max(res, scalar_traits<S>::abs(f.c[r] - prod.c[r]));
      return res;
    };

    // Gauss-Newton on the bilinear system l*q = f, jointly in both factors:
    // a genuine factorization is a zero-residual solution and converges
    // quadratically however ill-conditioned the contact is, while anything
    // else bottoms out at its distance from the reducible cubics.
    std::array<S, 3> best_l = lw;
    HomPoly<S> best_q = q;
    double best_res = sup_res(lw, q);
    for (int it = 0; it < 15; ++it) {
      HomPoly<S> lf = hp_linear(lw[0], lw[1], lw[2]);
      std::vector<HomPoly<S>> cols;
      for (int i = 0; i < 3; ++i) {
        std::array<S, 3> e{zero, zero, zero};
        e[i] = one;
        cols.push_back(hp_linear(e[0], e[1], e[2]) * q);
      }
      for (const auto& mono : monos) cols.push_back(lf * mono);

      HomPoly<S> prod = lf * q;
      const int n = static_cast<int>(cols.size());
      Mat<S> g(n, Vec<S>(n, zero));
      Vec<S> rhs(n, zero);
      double gmax = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
          for (size_t r = 0; r < nc; ++r)
            g[i][j] = g[i][j] + conj_s(cols[i].c[r]) * cols[j].c[r];
        for (size_t r = 0; r < nc; ++r)
          rhs[i] = rhs[i] + conj_s(cols[i].c[r]) * (f.c[r] - prod.c[r]);
        gmax = std::max(gmax, scalar_traits<S>::abs(g[i][i]));
      }
      // Damping also absorbs the one-dimensional scaling gauge of (l, q).
      for (int i = 0; i < n; ++i) g[i][i] = g[i][i] + S(1e-12 * gmax + 1e-300);
      auto step = solve_linear(std::move(g), std::move(rhs));

      double before = sup_res(lw, q);
      bool improved = false;
      double sc = 1.0;
      for (int h = 0; h < 6 && !improved; ++h) {
        std::array<S, 3> lt = lw;
        HomPoly<S> qt = q;
        for (int i = 0; i < 3; ++i) lt[i] = lt[i] + step[i] * S(sc);
        for (int k = 0; k < qn; ++k) qt.c[k] = qt.c[k] + step[3 + k] * S(sc);
        double after = sup_res(lt, qt);
        if (after < before) {
          lw = lt;
          q = qt;
          improved = true;
          if (after < best_res) {
            best_res = after;
            best_l = lw;
            best_q = q;
          }
        }
        sc *= 0.5;
      }
      if (!improved || best_res <= 0.001 * cut) break;
    }

    if (best_res > cut) return std::nullopt;
    l = make_line(best_l[0], best_l[1], best_l[2]);
    return best_q;
  }
}

// 3x3 symmetric matrix of a quadratic form.
template <class S>
Mat<S> quadratic_matrix(const HomPoly<S>& q) {
  const S half = scalar_traits<S>::one_like(q.c[0]) /
                 scalar_traits<S>::from_int_like(q.c[0], 2);
  Mat<S> m(3, Vec<S>(3));
  m[0][0] = q.at(2, 0);
  m[1][1] = q.at(0, 2);
  m[2][2] = q.at(0, 0);
  m[0][1] = m[1][0] = q.at(1, 1) * half;
  m[0][2] = m[2][0] = q.at(1, 0) * half;
  m[1][2] = m[2][1] = q.at(0, 1) * half;
  return m;
}

// Second-derivative (Hessian) matrix of f evaluated at p.
template <class S>
Mat<S> hessian_at(const HomPoly<S>& f, const Point<S>& p) {
  auto g = hp_gradient(f);
  Mat<S> h(3, Vec<S>(3));
  for (int i = 0; i < 3; ++i) {
    auto gi = hp_gradient(g[i]);
    for (int j = 0; j < 3; ++j) h[i][j] = hp_eval(gi[j], p);
  }
  return h;
}

// Rank with an absolute floor: a matrix whose entries are all negligible
// against the given scale counts as zero. The relative SVD cutoff alone
// cannot see that case.
template <class S>
int rank_with_floor(const Mat<S>& m, double floor_scale, const Tol& tol) {
  if constexpr (!scalar_traits<S>::is_exact) {
    double mx = 0.0;
    for (const auto& row : m)
      for (const auto& v : row) mx = std::max(mx, scalar_traits<S>::abs(v));
    if (mx <= tol.rank * std::max(1e-300, floor_scale)) return 0;
  }
  return mat_rank(m, tol);
}

template <class S>
HomPoly<S> line_form(const Line<S>& l) {
  return hp_linear(l.c[0], l.c[1], l.c[2]);
}

}  // namespace detail

/// Classification of a cubic into smooth, the two irreducible singular
/// types, the conic-plus-line pairs, the split three-line shapes, or the
/// non-reduced leftovers. Deterministic; a couple of fixed coordinate
/// changes retry the singular-point search when an elimination degenerates.
template <class S>
CubicClass<S> classify(const Cubic<S>& cu, const Tol& tol = {}) {
  const std::array<std::array<int, 3>, 3> retry1 = {{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}};
  const std::array<std::array<int, 3>, 3> retry2 = {{{2, 1, 1}, {1, 3, 1}, {1, 1, 4}}};

  // A repeated factor shows up as an identically vanishing resultant of f
  // with its partial in any variable the factor depends on.
  {
    auto grads = hp_gradient(cu.f);
    for (int v = 0; v < 3; ++v) {
      auto cf = hp_coeffs_in_var(cu.f, v);
      if (cf.size() < 2 || grads[v].is_zero()) continue;
      auto cg = hp_coeffs_in_var(grads[v], v);
      Poly1<S> r = sylvester_resultant(cf, cg);
      bool vanishes;
      if constexpr (scalar_traits<S>::is_exact) {
        vanishes = r.is_zero();
      } else {
        double mf = 0.0, mg = 0.0;
        for (const auto& p : cf)
          for (const auto& c : p.c) mf = std::max(mf, scalar_traits<S>::abs(c));
        for (const auto& p : cg)
          for (const auto& c : p.c) mg = std::max(mg, scalar_traits<S>::abs(c));
        double rs = std::pow(std::max(1e-12, mf), double(cg.size() - 1)) *
                    std::pow(std::max(1e-12, mg), double(cf.size() - 1));
        vanishes = r.is_zero() || detail::poly1_negligible(r, rs, tol);
      }
      if (vanishes) {
        CubicClass<S> out;
        out.tag = CubicTag::non_reduced;
        return out;
      }
    }
  }

  std::vector<Point<S>> sing;
  bool resolved = false;
  for (int attempt = 0; attempt < 3 && !resolved; ++attempt) {
    HomPoly<S> g = cu.f;
    std::array<std::array<S, 3>, 3> m{};
    bool transformed = attempt > 0;
    if (transformed) {
      m = detail::int_matrix(cu.f.c[0], attempt == 1 ? retry1 : retry2);
      g = hp_substitute_linear(cu.f, m);
    }
    auto grads = hp_gradient(g);
    auto zr = detail::common_zeros<S>({grads[0], grads[1], grads[2]}, tol);
    if (zr.positive_dimensional) {
      CubicClass<S> out;
      out.tag = CubicTag::non_reduced;
      return out;
    }
    if (!zr.complete) continue;
    resolved = true;
    for (const auto& p : zr.points) sing.push_back(transformed ? detail::apply_matrix(m, p) : p);
  }
  if (!resolved)
    throw NumericError("singular-point search is not resolvable over this backend");

  CubicClass<S> out;
  out.singular_points = sing;
  if (sing.empty()) {
    out.tag = CubicTag::smooth;
    return out;
  }

  // Where the zero has multiplicity above one, the point itself is only
  // locatable to roughly the square root of the working precision, and the
  // second derivatives inherit that error. Every rank decision on data
  // evaluated at a singular point therefore runs at a relaxed cutoff.
  Tol hess_tol = tol;
  if constexpr (!scalar_traits<S>::is_exact) hess_tol.rank = std::sqrt(tol.rank);

  // A point where the second derivatives also vanish makes the curve a cone
  // of three lines through it.
  const double fmass = detail::hp_mass(cu.f);
  for (const auto& p : sing) {
    Mat<S> h = detail::hessian_at(cu.f, p);
    if (detail::rank_with_floor(h, fmass, hess_tol) == 0) {
      auto [a, b] = detail::line_avoiding(p);
      auto [pts, distinct] = detail::line_form_intersections(cu.f, a, b, tol);
      if (!distinct || pts.size() != 3) {
        out.tag = CubicTag::non_reduced;
        return out;
      }
      out.singular_points = {p};
      out.tag = CubicTag::concurrent_lines;
      for (const auto& w : pts) out.components.push_back(detail::line_form(join(p, w, tol)));
      return out;
    }
  }

  // Candidate line components: joins of singular pairs and tangent-cone
  // factors at each singular point.
  std::vector<Line<S>> candidates;
  auto add_candidate = [&](const Line<S>& l) {
    for (const auto& k : candidates)
      if (lines_equal(k, l, tol)) return;
    candidates.push_back(l);
  };
  for (size_t i = 0; i < sing.size(); ++i)
    for (size_t j = i + 1; j < sing.size(); ++j) add_candidate(join(sing[i], sing[j], tol));
  for (const auto& p : sing) {
    Mat<S> h = detail::hessian_at(cu.f, p);
    if (detail::rank_with_floor(h, fmass, hess_tol) == 1) {
      // Rank-one tangent cone: a repeated tangent line, read directly off
      // the dominant row of the symmetric second-derivative matrix. Going
      // through the double root of the cone restriction instead would
      // amplify the point's own location error by a square root.
      int best = 0;
      double bm = -1.0;
      for (int i = 0; i < 3; ++i) {
        double rm = 0.0;
        for (int j = 0; j < 3; ++j) rm = std::max(rm, scalar_traits<S>::abs(h[i][j]));
        if (rm > bm) {
          bm = rm;
          best = i;
        }
      }
      add_candidate(make_line(h[best][0], h[best][1], h[best][2]));
      continue;
    }
    HomPoly<S> cone = hp_zero(2, cu.f.c[0]);
    // Quadratic form u^T h u as a ternary quadratic.
    cone.at(2, 0) = h[0][0];
    cone.at(0, 2) = h[1][1];
    cone.at(0, 0) = h[2][2];
    cone.at(1, 1) = h[0][1] + h[1][0];
    cone.at(1, 0) = h[0][2] + h[2][0];
    cone.at(0, 1) = h[1][2] + h[2][1];
    auto [a, b] = detail::line_avoiding(p);
    try {
      auto [pts, distinct] = detail::line_form_intersections(cone, a, b, tol);
      (void)distinct;
      for (const auto& w : pts)
        if (!points_equal(w, p, tol)) add_candidate(join(p, w, tol));
    } catch (const NumericError&) {
      // Tangent directions outside the session field only matter when the
      // cone line divides f; those splittings are caught via joins instead.
    }
  }

  for (const auto& cand : candidates) {
    Line<S> l = cand;
    auto q = detail::divide_linear(cu.f, l, tol);
    if (!q) continue;
    auto [p1, p2] = detail::two_points_on(l, tol);

    Poly1<S> on_l = hp_restrict(*q, p1, p2);
    bool repeated;
    if constexpr (scalar_traits<S>::is_exact)
      repeated = on_l.is_zero();
    else
      repeated = detail::poly1_negligible(on_l, detail::hp_mass(*q), tol);
    if (repeated) {
      out.tag = CubicTag::non_reduced;
      return out;
    }

    int rk = mat_rank(detail::quadratic_matrix(*q), tol);
    if (rk == 3) {
      // The line is tangent to the conic exactly when it lies on the dual
      // conic. That criterion has no parametrization in it; counting roots
      // of the restriction instead would split a near-double root at this
      // data accuracy.
      auto M = detail::quadratic_matrix(*q);
      S v = scalar_traits<S>::zero_like(cu.f.c[0]);
      double am = 0.0, lm = 0.0;
      for (int i = 0; i < 3; ++i) {
        lm = std::max(lm, scalar_traits<S>::abs(l.c[i]));
        for (int j = 0; j < 3; ++j) {
          const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
          const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
          S adj = M[i1][j1] * M[i2][j2] - M[i1][j2] * M[i2][j1];
          am = std::max(am, scalar_traits<S>::abs(adj));
          v = v + adj * l.c[j] * l.c[i];
        }
      }
      bool tangent;
      if constexpr (scalar_traits<S>::is_exact)
        tangent = v.is_zero();
      else
        tangent = scalar_traits<S>::abs(v) <= 100.0 * tol.rank * std::max(1e-300, am * lm * lm);
      out.tag = tangent ? CubicTag::conic_line_tangent : CubicTag::conic_line_transverse;
      out.components = {detail::line_form(l), *q};
      return out;
    }
    if (rk == 2) {
      auto kern = mat_nullspace(detail::quadratic_matrix(*q), tol);
      Point<S> v = make_point(kern[0][0], kern[0][1], kern[0][2]);
      auto [a, b] = detail::line_avoiding(v);
      auto [pts, distinct] = detail::line_form_intersections(*q, a, b, tol);
      if (!distinct || pts.size() != 2) {
        out.tag = CubicTag::non_reduced;  // quotient degenerated after all
        return out;
      }
      out.tag = incident(v, l, tol) ? CubicTag::concurrent_lines : CubicTag::triangle;
      out.components = {detail::line_form(l)};
      for (const auto& w : pts) out.components.push_back(detail::line_form(join(v, w, tol)));
      return out;
    }
    out.tag = CubicTag::non_reduced;  // quotient is a repeated line
    return out;
  }

  // No line component: an irreducible cubic with one node or one cusp.
  if (sing.size() != 1) throw NumericError("inconsistent singular structure");
  int rk = detail::rank_with_floor(detail::hessian_at(cu.f, sing[0]), fmass, hess_tol);
  out.tag = rk == 2 ? CubicTag::nodal : CubicTag::cuspidal;
  return out;
}

/// Third intersection of the curve with the line through p and q (tangent
/// line at p when the arguments coincide). Both points must be regular
/// points of the curve.
template <class S>
Point<S> chord(const Cubic<S>& cu, const Point<S>& p, const Point<S>& q, const Tol& tol = {}) {
  if (!is_regular_point(cu, p, tol) || !is_regular_point(cu, q, tol))
    throw DomainError("chord endpoints must be regular points of the cubic");

  const double scale = std::max(1e-300, detail::hp_mass(cu.f));
  auto negligible = [&](const S& c) {
    if constexpr (scalar_traits<S>::is_exact)
      return c.is_zero();
    else
      return scalar_traits<S>::abs(c) <= tol.eq * scale;
  };

  if (!points_equal(p, q, tol)) {
    // f(p + t q) vanishes at t = 0 and t = infinity by construction, so the
    // third intersection sits on the middle coefficients alone.
    Poly1<S> r = hp_restrict(cu.f, p, q);
    r.c.resize(4, scalar_traits<S>::zero_like(p.c[0]));
    const S& c1 = r.c[1];
    const S& c2 = r.c[2];
    if (negligible(c1) && negligible(c2))
      throw DegenerateInputError("chord line lies inside the cubic");
    if (negligible(c2)) return q;  // double intersection at q
    S t = -(c1 / c2);
    return make_point(p.c[0] + t * q.c[0], p.c[1] + t * q.c[1], p.c[2] + t * q.c[2]);
  }

  // Tangent case: the tangent line is cut out by the gradient.
  auto g = hp_gradient_at(cu.f, p);
  Line<S> tangent = make_line(g[0], g[1], g[2]);
  auto [w1, w2] = detail::two_points_on(tangent, tol);
  Point<S> w = points_equal(w1, p, tol) ? w2 : w1;
  // f(p + t w) has a double root at t = 0.
  Poly1<S> r = hp_restrict(cu.f, p, w);
  r.c.resize(4, scalar_traits<S>::zero_like(p.c[0]));
  const S& c2 = r.c[2];
  const S& c3 = r.c[3];
  if (negligible(c2) && negligible(c3))
    throw DegenerateInputError("tangent line lies inside the cubic");
  if (negligible(c3)) return w;
  S t = -(c2 / c3);
  return make_point(p.c[0] + t * w.c[0], p.c[1] + t * w.c[1], p.c[2] + t * w.c[2]);
}

namespace detail {

template <class S>
void require_flex_zero(const Cubic<S>& cu, const Point<S>& zero, const Tol& tol) {
  if (!points_equal(chord(cu, zero, zero, tol), zero, tol))
    throw DomainError("group zero element must be a flex of the cubic");
}

}  // namespace detail

/// Inverse for the chord-tangent group law with the given flex as zero.
template <class S>
Point<S> group_neg(const Cubic<S>& cu, const Point<S>& zero, const Point<S>& p, const Tol& tol = {}) {
  detail::require_flex_zero(cu, zero, tol);
  return chord(cu, zero, p, tol);
}

/// Chord-tangent addition with the given flex as zero element.
template <class S>
Point<S> group_add(const Cubic<S>& cu, const Point<S>& zero, const Point<S>& p, const Point<S>& q,
                   const Tol& tol = {}) {
  detail::require_flex_zero(cu, zero, tol);
  return chord(cu, zero, chord(cu, p, q, tol), tol);
}

/// Determinant of the matrix of second partials, a cubic covariant whose
/// intersection with the curve marks the flexes.
template <class S>
HomPoly<S> hessian_form(const HomPoly<S>& f) {
  auto g = hp_gradient(f);
  std::array<std::array<HomPoly<S>, 3>, 3> h;
  for (int i = 0; i < 3; ++i) {
    auto gi = hp_gradient(g[i]);
    for (int j = 0; j < 3; ++j) h[i][j] = gi[j];
  }
  auto minor = [&](int i0, int i1, int j0, int j1) {
    return h[i0][j0] * h[i1][j1] - h[i0][j1] * h[i1][j0];
  };
  return h[0][0] * minor(1, 2, 1, 2) - h[0][1] * minor(1, 2, 0, 2) + h[0][2] * minor(1, 2, 0, 1);
}

/// The nine flexes of a smooth cubic. Exact backends succeed only when all
/// flexes have coordinates inside the session field.
template <class S>
std::vector<Point<S>> flexes(const Cubic<S>& cu, const Tol& tol = {}) {
  if (classify(cu, tol).tag != CubicTag::smooth)
    throw DomainError("flexes are computed for smooth cubics only");
  HomPoly<S> h = hessian_form(cu.f);

  const std::array<std::array<int, 3>, 3> retry1 = {{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}};
  const std::array<std::array<int, 3>, 3> retry2 = {{{2, 1, 1}, {1, 3, 1}, {1, 1, 4}}};
  for (int attempt = 0; attempt < 3; ++attempt) {
    HomPoly<S> f = cu.f, hh = h;
    std::array<std::array<S, 3>, 3> m{};
    bool transformed = attempt > 0;
    if (transformed) {
      m = detail::int_matrix(cu.f.c[0], attempt == 1 ? retry1 : retry2);
      f = hp_substitute_linear(cu.f, m);
      hh = hp_substitute_linear(h, m);
    }
    auto zr = detail::common_zeros<S>({f, hh}, tol);
    if (!zr.complete) continue;
    std::vector<Point<S>> out;
    for (const auto& p : zr.points) out.push_back(transformed ? detail::apply_matrix(m, p) : p);
    if (out.size() != 9)
      throw NumericError("flex search did not resolve nine distinct points");
    return out;
  }
  throw NumericError("flex coordinates lie outside the session backend");
}

/// Whether every cubic through eight of the nine points passes through the
/// ninth as well. Fit spaces of dimension above the pencil bound make the
/// test inconclusive and raise an error.
template <class S>
bool complete_set_check(const std::vector<Point<S>>& pts, const Tol& tol = {}) {
  if (pts.size() != 9) throw DomainError("complete_set_check needs exactly nine points");
  for (size_t i = 0; i < 9; ++i)
    for (size_t j = i + 1; j < 9; ++j)
      if (points_equal(pts[i], pts[j], tol))
        throw DegenerateInputError("complete_set_check needs distinct points");

  auto pencil_dim_ok = [&](const std::vector<HomPoly<S>>& basis) { return basis.size() <= 2; };

  auto all9 = fit_cubics(pts, tol);
  if (!pencil_dim_ok(all9))
    throw DomainError("inconclusive: fit space has dimension above the pencil bound");

  for (size_t skip = 0; skip < 9; ++skip) {
    std::vector<Point<S>> octet;
    for (size_t i = 0; i < 9; ++i)
      if (i != skip) octet.push_back(pts[i]);
    auto basis = fit_cubics(octet, tol);
    if (!pencil_dim_ok(basis))
      throw DomainError("inconclusive: fit space has dimension above the pencil bound");
    for (const auto& g : basis) {
      S v = hp_eval(g, pts[skip]);
      if constexpr (scalar_traits<S>::is_exact) {
        if (!v.is_zero()) return false;
      } else {
        if (scalar_traits<S>::abs(v) > tol.eq * std::max(1.0, detail::hp_mass(g))) return false;
      }
    }
  }
  return true;
}

}  // namespace planet
