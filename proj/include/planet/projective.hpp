#pragma once

#include <array>
#include <cmath>
#include <string>

#include "planet/scalar.hpp"

namespace planet {

namespace detail {

/// Scale a coordinate triple to its canonical representative.
/// Exact backend: last nonzero coordinate becomes 1.
/// Approx backend: the coordinate of largest modulus becomes 1 (no extra
/// phase convention; equality goes through minors anyway).
template <class S>
void normalize_triple(std::array<S, 3>& c) {
  if constexpr (scalar_traits<S>::is_exact) {
    for (int i = 2; i >= 0; --i) {
      if (!c[i].is_zero()) {
        S inv = c[i].inverse();
        for (auto& x : c) x = x * inv;
        return;
      }
    }
    throw DegenerateInputError("zero coordinate vector is not a projective object");
  } else {
    int best = 0;
    double bm = std::abs(c[0]);
    for (int i = 1; i < 3; ++i) {
      double m = std::abs(c[i]);
      if (m > bm) {
        bm = m;
        best = i;
      }
    }
    if (bm == 0.0) throw DegenerateInputError("zero coordinate vector is not a projective object");
    S inv = S{1.0, 0.0} / c[best];
    for (auto& x : c) x = x * inv;
  }
}

template <class S>
std::array<S, 3> cross(const std::array<S, 3>& a, const std::array<S, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

/// Projective equality of coordinate triples: all three 2x2 minors vanish.
/// Inputs are assumed normalized, so the approx tolerance needs no rescaling
/// beyond the spec's (max row norm)^2 factor.
template <class S>
bool triples_equal(const std::array<S, 3>& a, const std::array<S, 3>& b, const Tol& tol) {
  if constexpr (scalar_traits<S>::is_exact) {
    return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
  } else {
    double na = std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
    double nb = std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2])});
    double scale = std::max(na, nb);
    double bound = tol.eq * scale * scale;
    return std::abs(a[0] * b[1] - a[1] * b[0]) <= bound &&
           std::abs(a[0] * b[2] - a[2] * b[0]) <= bound &&
           std::abs(a[1] * b[2] - a[2] * b[1]) <= bound;
  }
}

template <class S>
std::string triple_str(const std::array<S, 3>& c) {
  return "(" + scalar_traits<S>::str(c[0]) + " : " + scalar_traits<S>::str(c[1]) + " : " +
         scalar_traits<S>::str(c[2]) + ")";
}

}  // namespace detail

template <class S>
struct Point {
  std::array<S, 3> c;
  std::string str() const { return detail::triple_str(c); }
};

template <class S>
struct Line {
  std::array<S, 3> c;
  std::string str() const { return detail::triple_str(c); }
};

template <class S>
Point<S> make_point(S x, S y, S z) {
  std::array<S, 3> c{std::move(x), std::move(y), std::move(z)};
  detail::normalize_triple(c);
  return Point<S>{std::move(c)};
}

template <class S>
Line<S> make_line(S x, S y, S z) {
  std::array<S, 3> c{std::move(x), std::move(y), std::move(z)};
  detail::normalize_triple(c);
  return Line<S>{std::move(c)};
}

template <class S>
bool points_equal(const Point<S>& a, const Point<S>& b, const Tol& tol = {}) {
  return detail::triples_equal(a.c, b.c, tol);
}
template <class S>
bool lines_equal(const Line<S>& a, const Line<S>& b, const Tol& tol = {}) {
  return detail::triples_equal(a.c, b.c, tol);
}

/// Point-line incidence: the dot product vanishes.  The approx test is
/// relative to the accumulated term magnitudes.
template <class S>
bool incident(const Point<S>& p, const Line<S>& l, const Tol& tol = {}) {
  S dot = p.c[0] * l.c[0] + p.c[1] * l.c[1] + p.c[2] * l.c[2];
  if constexpr (scalar_traits<S>::is_exact) {
    return dot.is_zero();
  } else {
    double mass = std::abs(p.c[0] * l.c[0]) + std::abs(p.c[1] * l.c[1]) + std::abs(p.c[2] * l.c[2]);
    return std::abs(dot) <= tol.eq * std::max(1.0, mass);
  }
}

/// Line through two distinct points.
template <class S>
Line<S> join(const Point<S>& p, const Point<S>& q, const Tol& tol = {}) {
  if (points_equal(p, q, tol))
    throw DegenerateInputError("join of coincident points " + p.str() + " and " + q.str());
  std::array<S, 3> c = detail::cross(p.c, q.c);
  detail::normalize_triple(c);
  return Line<S>{std::move(c)};
}

/// Intersection point of two distinct lines.
template <class S>
Point<S> meet(const Line<S>& l, const Line<S>& m, const Tol& tol = {}) {
  if (lines_equal(l, m, tol))
    throw DegenerateInputError("meet of coincident lines " + l.str() + " and " + m.str());
  std::array<S, 3> c = detail::cross(l.c, m.c);
  detail::normalize_triple(c);
  return Point<S>{std::move(c)};
}

template <class S>
Line<S> dual(const Point<S>& p) {
  return Line<S>{p.c};
}
template <class S>
Point<S> dual(const Line<S>& l) {
  return Point<S>{l.c};
}

namespace detail {
/// 3x3 determinant together with the magnitude mass of its expansion terms,
/// used to scale vanishing decisions and to report residuals.
template <class S>
std::pair<S, double> det3_with_mass(const std::array<S, 3>& a, const std::array<S, 3>& b,
                                    const std::array<S, 3>& c) {
  S t0 = a[0] * (b[1] * c[2] - b[2] * c[1]);
  S t1 = a[1] * (b[2] * c[0] - b[0] * c[2]);
  S t2 = a[2] * (b[0] * c[1] - b[1] * c[0]);
  double mass =
      scalar_traits<S>::abs(t0) + scalar_traits<S>::abs(t1) + scalar_traits<S>::abs(t2);
  return {t0 + t1 + t2, mass};
}

template <class S>
bool det3_vanishes(const std::array<S, 3>& a, const std::array<S, 3>& b,
                   const std::array<S, 3>& c, const Tol& tol) {
  auto [det, mass] = det3_with_mass(a, b, c);
  if constexpr (scalar_traits<S>::is_exact) {
    return det.is_zero();
  } else {
    return std::abs(det) <= tol.eq * std::max(1.0, mass);
  }
}
}  // namespace detail

template <class S>
bool collinear(const Point<S>& p, const Point<S>& q, const Point<S>& r, const Tol& tol = {}) {
  return detail::det3_vanishes(p.c, q.c, r.c, tol);
}

template <class S>
bool concurrent(const Line<S>& l, const Line<S>& m, const Line<S>& n, const Tol& tol = {}) {
  return detail::det3_vanishes(l.c, m.c, n.c, tol);
}

/// Relative size of the collinearity determinant; exactly 0 for a true
/// incidence in the exact backend.
template <class S>
double collinearity_residual(const Point<S>& p, const Point<S>& q, const Point<S>& r) {
  auto [det, mass] = detail::det3_with_mass(p.c, q.c, r.c);
  return scalar_traits<S>::abs(det) / std::max(1.0, mass);
}

template <class S>
double concurrency_residual(const Line<S>& l, const Line<S>& m, const Line<S>& n) {
  auto [det, mass] = detail::det3_with_mass(l.c, m.c, n.c);
  return scalar_traits<S>::abs(det) / std::max(1.0, mass);
}

/// Cross-ratio of four collinear points, normalized so that parameters
/// (0, infinity, 1, t) give t.  The value is a scalar of the session backend;
/// configurations whose cross-ratio is infinite raise an error.
template <class S>
S cross_ratio(const Point<S>& p1, const Point<S>& p2, const Point<S>& p3, const Point<S>& p4,
              const Tol& tol = {}) {
  const Point<S>* ps[4] = {&p1, &p2, &p3, &p4};
  if (points_equal(p1, p2, tol))
    throw DegenerateInputError("cross-ratio needs distinct first and second points");
  int distinct = 0;
  for (int i = 0; i < 4; ++i) {
    bool fresh = true;
    for (int j = 0; j < i; ++j)
      if (points_equal(*ps[i], *ps[j], tol)) fresh = false;
    if (fresh) ++distinct;
  }
  if (distinct < 3) throw DomainError("cross-ratio needs at least 3 distinct points");
  if (!collinear(p1, p2, p3, tol) || !collinear(p1, p2, p4, tol))
    throw DomainError("cross-ratio of non-collinear points");

  // Work in a coordinate pair where p1, p2 stay independent.
  int r = 0, s = 1;
  if constexpr (scalar_traits<S>::is_exact) {
    bool found = false;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto& pr : pairs) {
      S d = p1.c[pr[0]] * p2.c[pr[1]] - p1.c[pr[1]] * p2.c[pr[0]];
      if (!d.is_zero()) {
        r = pr[0];
        s = pr[1];
        found = true;
        break;
      }
    }
    if (!found) throw DegenerateInputError("cross-ratio basis degenerate");
  } else {
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    double best = -1.0;
    for (auto& pr : pairs) {
      double m = std::abs(p1.c[pr[0]] * p2.c[pr[1]] - p1.c[pr[1]] * p2.c[pr[0]]);
      if (m > best) {
        best = m;
        r = pr[0];
        s = pr[1];
      }
    }
  }

  auto det2 = [&](const Point<S>& a, const Point<S>& b) {
    return a.c[r] * b.c[s] - a.c[s] * b.c[r];
  };
  S num = det2(p1, p4) * det2(p2, p3);
  S den = det2(p2, p4) * det2(p1, p3);
  if (scalar_is_zero(den, tol)) throw DegenerateInputError("infinite cross-ratio");
  return num / den;
}

}  // namespace planet
