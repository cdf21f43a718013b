#pragma once

// Polynomial workhorses: dense univariate polynomials (with exact and
// floating root extraction), homogeneous ternary forms in a fixed monomial
// order, line restrictions, and Sylvester-style elimination used by the
// cubic classification code.

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "planet/cyclotomic.hpp"
#include "planet/errors.hpp"
#include "planet/projective.hpp"
#include "planet/rational.hpp"
#include "planet/scalar.hpp"

namespace planet {

// ---------------------------------------------------------------------------
// Univariate dense polynomials, c[i] * t^i. The zero polynomial is {}.

template <class S>
struct Poly1 {
  std::vector<S> c;

  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  const S& lead() const { return c.back(); }

  /// Drops exactly-zero leading coefficients (both backends).
  void trim() {
    while (!c.empty() && scalar_traits<S>::is_zero(c.back(), Tol{})) c.pop_back();
  }
};

/// Copy with leading coefficients dropped when small relative to the largest
/// coefficient magnitude (meaningful for the floating backend; exact values
/// are only dropped when they are true zeros).
template <class S>
Poly1<S> trimmed(Poly1<S> p, const Tol& tol) {
  if constexpr (scalar_traits<S>::is_exact) {
    p.trim();
  } else {
    double mass = 0.0;
    for (const S& x : p.c) mass = std::max(mass, scalar_traits<S>::abs(x));
    while (!p.c.empty() && scalar_traits<S>::abs(p.c.back()) <= tol.eq * std::max(1.0, mass))
      p.c.pop_back();
  }
  return p;
}

template <class S>
Poly1<S> poly1_from(std::vector<S> coeffs) {
  Poly1<S> p{std::move(coeffs)};
  p.trim();
  return p;
}

template <class S>
Poly1<S> operator+(const Poly1<S>& a, const Poly1<S>& b) {
  Poly1<S> r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size() && i < b.c.size())
      r.c[i] = a.c[i] + b.c[i];
    else if (i < a.c.size())
      r.c[i] = a.c[i];
    else
      r.c[i] = b.c[i];
  }
  r.trim();
  return r;
}

template <class S>
Poly1<S> operator-(const Poly1<S>& a) {
  Poly1<S> r = a;
  for (S& x : r.c) x = -x;
  return r;
}

template <class S>
Poly1<S> operator-(const Poly1<S>& a, const Poly1<S>& b) {
  return a + (-b);
}

template <class S>
Poly1<S> operator*(const Poly1<S>& a, const Poly1<S>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly1<S> r;
  S zero = scalar_traits<S>::zero_like(a.c[0]);
  r.c.assign(a.c.size() + b.c.size() - 1, zero);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

template <class S>
Poly1<S> poly1_scale(const Poly1<S>& a, const S& s) {
  Poly1<S> r = a;
  for (S& x : r.c) x *= s;
  r.trim();
  return r;
}

template <class S>
S poly1_eval(const Poly1<S>& p, const S& t) {
  S acc = scalar_traits<S>::zero_like(t);
  for (int i = p.deg(); i >= 0; --i) acc = acc * t + p.c[i];
  return acc;
}

template <class S>
Poly1<S> poly1_derivative(const Poly1<S>& p) {
  Poly1<S> r;
  if (p.deg() < 1) return r;
  r.c.reserve(p.c.size() - 1);
  for (size_t i = 1; i < p.c.size(); ++i)
    r.c.push_back(p.c[i] * scalar_traits<S>::from_int_like(p.c[i], static_cast<long>(i)));
  r.trim();
  return r;
}

/// Quotient and remainder; the divisor's leading coefficient must be usable
/// as a divisor (callers trim floating polynomials first).
template <class S>
void poly1_divmod(const Poly1<S>& a, const Poly1<S>& b, Poly1<S>& q, Poly1<S>& r) {
  if (b.is_zero()) throw DegenerateInputError("polynomial division by zero");
  q = {};
  r = a;
  if (a.is_zero() || a.deg() < b.deg()) return;
  S zero = scalar_traits<S>::zero_like(b.c[0]);
  q.c.assign(a.deg() - b.deg() + 1, zero);
  S lead_inv = scalar_traits<S>::one_like(b.c[0]) / b.lead();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    S f = r.c.back() * lead_inv;
    q.c[shift] = f;
    for (int i = 0; i <= b.deg(); ++i) r.c[shift + i] -= f * b.c[i];
    r.c.pop_back();  // the leading term cancels by construction
    r.trim();
  }
  q.trim();
}

/// Monic scaling (exact backends and well-conditioned floating input).
template <class S>
Poly1<S> poly1_monic(const Poly1<S>& p) {
  assert(!p.is_zero());
  S inv = scalar_traits<S>::one_like(p.c[0]) / p.lead();
  return poly1_scale(p, inv);
}

/// Euclidean gcd, monic result; exact backend only.
template <class S>
Poly1<S> poly1_gcd(Poly1<S> a, Poly1<S> b) {
  static_assert(scalar_traits<S>::is_exact, "gcd requires exact arithmetic");
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    Poly1<S> q, r;
    poly1_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return poly1_monic(a);
}

/// Divides out a known root: returns q with p = (t - root) q + p(root).
template <class S>
Poly1<S> poly1_deflate(const Poly1<S>& p, const S& root) {
  if (p.deg() < 1) return {};
  Poly1<S> q;
  q.c.assign(p.c.size() - 1, scalar_traits<S>::zero_like(root));
  S carry = p.c.back();
  for (int i = p.deg() - 1; i >= 0; --i) {
    q.c[i] = carry;
    carry = p.c[i] + carry * root;
  }
  q.trim();
  return q;
}

// ---------------------------------------------------------------------------
// Root extraction.

/// All complex roots via the companion matrix, polished by a few Newton
/// steps. Multiple roots come back clustered, not merged.
inline std::vector<CD> poly1_roots(const Poly1<CD>& p_in, const Tol& tol = {}) {
  Poly1<CD> p = trimmed(p_in, tol);
  std::vector<CD> out;
  int n = p.deg();
  if (n < 1) return out;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  CD lead = p.c.back();
  for (int i = 0; i < n; ++i) {
    comp(i, n - 1) = -p.c[i] / lead;
    if (i + 1 < n) comp(i + 1, i) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  Poly1<CD> dp = poly1_derivative(p);
  for (int i = 0; i < n; ++i) {
    CD r = es.eigenvalues()(i);
    for (int step = 0; step < 6; ++step) {
      CD fv = poly1_eval(p, r);
      CD dv = poly1_eval(dp, r);
      if (std::abs(dv) < 1e-300) break;
      CD next = r - fv / dv;
      if (std::abs(next - r) <= 1e-16 * std::max(1.0, std::abs(r))) {
        r = next;
        break;
      }
      r = next;
    }
    out.push_back(r);
  }
  return out;
}

template <class S>
Poly1<CD> poly1_numeric(const Poly1<S>& p) {
  Poly1<CD> r;
  r.c.reserve(p.c.size());
  for (const S& x : p.c) r.c.push_back(scalar_traits<S>::numeric(x));
  return r;
}

struct ExactRootsReport {
  std::vector<Cyclo> roots;  // with multiplicity
  bool complete = false;     // true iff the polynomial split into found roots
};

namespace detail {

/// Attempts to recognize a floating value as q * zeta_N^j with rational q,
/// verifying nothing (the caller confirms by exact evaluation).
inline std::vector<Cyclo> cyclo_candidates(const FieldPtr& field, const CD& value) {
  std::vector<Cyclo> cands;
  const int n = field->conductor();
  const double mag = std::abs(value);
  if (mag < 1e-9) return cands;  // zero roots are peeled off separately
  for (int j = 0; j < n; ++j) {
    CD rot = value / field->zeta_numeric(j);
    if (std::abs(rot.imag()) > 1e-6 * std::max(1.0, mag)) continue;
    Rational q;
    if (!rationalize(rot.real(), 1000000, 1e-7 * std::max(1.0, mag), q)) continue;
    if (q == 0) continue;
    cands.push_back(Cyclo(field, q) * Cyclo::zeta(field, j));
  }
  return cands;
}

}  // namespace detail

/// Roots of an exact polynomial that lie in the session field and have the
/// monomial shape q * zeta^j: floating roots guide the guess, exact
/// evaluation confirms, exact deflation guarantees completeness accounting.
/// `complete` is false when some root exists outside the searchable set.
inline ExactRootsReport exact_roots(const Poly1<Cyclo>& p_in) {
  ExactRootsReport rep;
  Poly1<Cyclo> p = p_in;
  p.trim();
  if (p.deg() < 1) {
    rep.complete = true;  // no roots to find (unit or zero polynomial)
    return rep;
  }
  FieldPtr field = p.c[0].field();
  Cyclo zero(field);

  // Peel t = 0 factors first.
  while (!p.c.empty() && p.c[0].is_zero()) {
    rep.roots.push_back(zero);
    p.c.erase(p.c.begin());
  }

  while (p.deg() >= 1) {
    std::vector<CD> numeric = poly1_roots(poly1_numeric(p));
    bool advanced = false;
    for (const CD& r : numeric) {
      for (const Cyclo& cand : detail::cyclo_candidates(field, r)) {
        if (!poly1_eval(p, cand).is_zero()) continue;
        rep.roots.push_back(cand);
        p = poly1_deflate(p, cand);
        advanced = true;
        break;
      }
      if (advanced) break;
    }
    if (!advanced) return rep;  // leftover factor has no recognizable root
  }
  rep.complete = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Homogeneous ternary forms. Monomials of degree d are ordered by falling
// x-exponent, then falling y-exponent; for cubics this is
// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.

template <class S>
struct HomPoly {
  int d = 0;
  std::vector<S> c;

  static int count(int d) { return (d + 1) * (d + 2) / 2; }
  static int index(int d, int ax, int by) {
    assert(ax >= 0 && by >= 0 && ax + by <= d);
    int r = d - ax;
    return r * (r + 1) / 2 + (r - by);
  }

  const S& at(int ax, int by) const { return c[index(d, ax, by)]; }
  S& at(int ax, int by) { return c[index(d, ax, by)]; }

  bool is_zero() const {
    for (const S& x : c)
      if (!scalar_traits<S>::is_zero(x, Tol{})) return false;
    return true;
  }
};

template <class S>
HomPoly<S> hp_zero(int d, const S& exemplar) {
  HomPoly<S> f;
  f.d = d;
  f.c.assign(HomPoly<S>::count(d), scalar_traits<S>::zero_like(exemplar));
  return f;
}

template <class S>
HomPoly<S> hp_linear(const S& lx, const S& ly, const S& lz) {
  HomPoly<S> f;
  f.d = 1;
  f.c = {lx, ly, lz};
  return f;
}

template <class S>
HomPoly<S> operator+(const HomPoly<S>& a, const HomPoly<S>& b) {
  assert(a.d == b.d);
  HomPoly<S> r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

template <class S>
HomPoly<S> operator-(const HomPoly<S>& a, const HomPoly<S>& b) {
  assert(a.d == b.d);
  HomPoly<S> r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

template <class S>
HomPoly<S> hp_scale(const HomPoly<S>& a, const S& s) {
  HomPoly<S> r = a;
  for (S& x : r.c) x *= s;
  return r;
}

template <class S>
HomPoly<S> operator*(const HomPoly<S>& a, const HomPoly<S>& b) {
  HomPoly<S> r = hp_zero(a.d + b.d, a.c[0]);
  for (int ax = 0; ax <= a.d; ++ax)
    for (int ay = 0; ax + ay <= a.d; ++ay) {
      const S& ca = a.at(ax, ay);
      if constexpr (scalar_traits<S>::is_exact) {
        if (ca.is_zero()) continue;
      }
      for (int bx = 0; bx <= b.d; ++bx)
        for (int by = 0; bx + by <= b.d; ++by) {
          r.at(ax + bx, ay + by) += ca * b.at(bx, by);
        }
    }
  return r;
}

template <class S>
S hp_eval(const HomPoly<S>& f, const std::array<S, 3>& p) {
  // Powers of each coordinate up to degree d.
  const S one = scalar_traits<S>::one_like(p[0]);
  std::array<std::vector<S>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].resize(f.d + 1, one);
    for (int e = 1; e <= f.d; ++e) pw[v][e] = pw[v][e - 1] * p[v];
  }
  S acc = scalar_traits<S>::zero_like(p[0]);
  for (int ax = 0; ax <= f.d; ++ax)
    for (int ay = 0; ax + ay <= f.d; ++ay)
      acc += f.at(ax, ay) * pw[0][ax] * pw[1][ay] * pw[2][f.d - ax - ay];
  return acc;
}

template <class S>
S hp_eval(const HomPoly<S>& f, const Point<S>& p) {
  return hp_eval(f, p.c);
}

/// Partial derivative, var = 0,1,2 for x,y,z.
template <class S>
HomPoly<S> hp_partial(const HomPoly<S>& f, int var) {
  assert(f.d >= 1);
  HomPoly<S> r = hp_zero(f.d - 1, f.c[0]);
  for (int ax = 0; ax <= f.d; ++ax)
    for (int ay = 0; ax + ay <= f.d; ++ay) {
      int az = f.d - ax - ay;
      int e[3] = {ax, ay, az};
      if (e[var] == 0) continue;
      S term = f.at(ax, ay) * scalar_traits<S>::from_int_like(f.c[0], e[var]);
      e[var] -= 1;
      r.at(e[0], e[1]) += term;
    }
  return r;
}

template <class S>
std::array<HomPoly<S>, 3> hp_gradient(const HomPoly<S>& f) {
  return {hp_partial(f, 0), hp_partial(f, 1), hp_partial(f, 2)};
}

template <class S>
std::array<S, 3> hp_gradient_at(const HomPoly<S>& f, const Point<S>& p) {
  auto g = hp_gradient(f);
  return {hp_eval(g[0], p), hp_eval(g[1], p), hp_eval(g[2], p)};
}

/// Product of the linear forms of the given lines.
template <class S>
HomPoly<S> hp_from_lines(const std::vector<Line<S>>& lines) {
  assert(!lines.empty());
  HomPoly<S> f = hp_linear(lines[0].c[0], lines[0].c[1], lines[0].c[2]);
  for (size_t i = 1; i < lines.size(); ++i)
    f = f * hp_linear(lines[i].c[0], lines[i].c[1], lines[i].c[2]);
  return f;
}

/// Restriction f(p + t q) as a univariate polynomial in t.
template <class S>
Poly1<S> hp_restrict(const HomPoly<S>& f, const Point<S>& p, const Point<S>& q) {
  const S zero = scalar_traits<S>::zero_like(p.c[0]);
  // (p_v + t q_v)^e as Poly1, for each coordinate and exponent.
  std::array<std::vector<Poly1<S>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].resize(f.d + 1);
    pw[v][0] = poly1_from<S>({scalar_traits<S>::one_like(p.c[0])});
    Poly1<S> lin = poly1_from<S>({p.c[v], q.c[v]});
    for (int e = 1; e <= f.d; ++e) pw[v][e] = pw[v][e - 1] * lin;
  }
  Poly1<S> acc;
  for (int ax = 0; ax <= f.d; ++ax)
    for (int ay = 0; ax + ay <= f.d; ++ay) {
      const S& cf = f.at(ax, ay);
      if constexpr (scalar_traits<S>::is_exact) {
        if (cf.is_zero()) continue;
      }
      Poly1<S> term = pw[0][ax] * pw[1][ay] * pw[2][f.d - ax - ay];
      acc = acc + poly1_scale(term, cf);
    }
  return acc;
}

/// Coefficients of f grouped by the power of one variable; entry [i] is the
/// coefficient of var^i, dehomogenized in the remaining two variables (u,v)
/// taken in cyclic order with u = 1, v = t. Identically-zero leading entries
/// are trimmed from the back.
template <class S>
std::vector<Poly1<S>> hp_coeffs_in_var(const HomPoly<S>& f, int var) {
  const S zero = scalar_traits<S>::zero_like(f.c[0]);
  std::vector<Poly1<S>> out(f.d + 1);
  for (auto& p : out) p.c.assign(f.d + 1, zero);
  for (int ax = 0; ax <= f.d; ++ax)
    for (int ay = 0; ax + ay <= f.d; ++ay) {
      int az = f.d - ax - ay;
      int e[3] = {ax, ay, az};
      int ev = e[var];
      int eu = e[(var + 1) % 3];  // the "1" variable
      int et = e[(var + 2) % 3];  // the "t" variable
      (void)eu;
      out[ev].c[et] += f.at(ax, ay);
    }
  for (auto& p : out) p.trim();
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

/// Determinant of a small square matrix of polynomials (Laplace expansion).
template <class S>
Poly1<S> poly1_mat_det(const std::vector<std::vector<Poly1<S>>>& m) {
  const size_t n = m.size();
  if (n == 0) return {};
  if (n == 1) return m[0][0];
  Poly1<S> det;
  for (size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    std::vector<std::vector<Poly1<S>>> minor;
    minor.reserve(n - 1);
    for (size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      minor.emplace_back(m[r].begin() + 1, m[r].end());
    }
    Poly1<S> term = m[i][0] * poly1_mat_det(minor);
    det = (i % 2 == 0) ? det + term : det - term;
  }
  return det;
}

/// Resultant (up to the usual leading-coefficient conventions) of two
/// polynomials in one selected variable whose coefficients are the
/// dehomogenized forms from hp_coeffs_in_var. Returns the determinant of the
/// Sylvester matrix built on the actual degrees; identically zero when the
/// two polynomials share a factor involving the eliminated variable.
template <class S>
Poly1<S> sylvester_resultant(const std::vector<Poly1<S>>& f, const std::vector<Poly1<S>>& g) {
  const int fd = static_cast<int>(f.size()) - 1;
  const int gd = static_cast<int>(g.size()) - 1;
  if (fd < 0 || gd < 0) return {};  // one input is identically zero
  if (fd == 0 && f[0].is_zero()) return {};
  if (gd == 0 && g[0].is_zero()) return {};
  if (fd == 0 && gd == 0) {
    // Neither involves the eliminated variable; by convention the resultant
    // of two degree-0 polynomials is 1 (no common root is forced).
    return poly1_from<S>({scalar_traits<S>::one_like(f[0].c[0])});
  }
  const int n = fd + gd;
  std::vector<std::vector<Poly1<S>>> syl(n, std::vector<Poly1<S>>(n));
  // gd rows of f's coefficients, then fd rows of g's, highest degree first.
  for (int r = 0; r < gd; ++r)
    for (int i = 0; i <= fd; ++i) syl[r][r + i] = f[fd - i];
  for (int r = 0; r < fd; ++r)
    for (int i = 0; i <= gd; ++i) syl[gd + r][r + i] = g[gd - i];
  return poly1_mat_det(syl);
}

}  // namespace planet
