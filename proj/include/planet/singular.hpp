#pragma once

// Reference curves for the six singular cubic degenerations, each with a
// rational parametrization of its smooth locus by C or C*.  Under these
// parametrizations collinearity of three smooth points turns into a plain
// product or sum relation on the parameters, which is what makes the
// singular cases usable as group-law backends.

#include <string>
#include <vector>

#include "planet/cubic.hpp"
#include "planet/errors.hpp"
#include "planet/projective.hpp"
#include "planet/scalar.hpp"

namespace planet {

/// The degenerations of a plane cubic that still carry a one-dimensional
/// group structure on the smooth locus.
enum class SingularCase {
  nodal,             // irreducible with a node; C* parameter
  cuspidal,          // irreducible with a cusp; C parameter
  conic_transverse,  // conic plus a secant line; C* parameter
  conic_tangent,     // conic plus a tangent line; C parameter
  triangle,          // three lines in general position; C* parameter
  concurrent         // three concurrent lines; C parameter
};

inline const char* singular_case_name(SingularCase c) {
  switch (c) {
    case SingularCase::nodal: return "nodal";
    case SingularCase::cuspidal: return "cuspidal";
    case SingularCase::conic_transverse: return "conic-transverse";
    case SingularCase::conic_tangent: return "conic-tangent";
    case SingularCase::triangle: return "triangle";
    case SingularCase::concurrent: return "concurrent";
  }
  return "?";
}

/// Number of irreducible components of the reference curve.  The
/// `component` argument of singular_param indexes them: 0 is the conic in
/// the conic+line cases, lines follow in order.
inline int singular_component_count(SingularCase c) {
  switch (c) {
    case SingularCase::nodal:
    case SingularCase::cuspidal: return 1;
    case SingularCase::conic_transverse:
    case SingularCase::conic_tangent: return 2;
    case SingularCase::triangle:
    case SingularCase::concurrent: return 3;
  }
  return 0;
}

/// Whether the parameter ranges over C* (true) or over all of C (false).
inline bool singular_case_multiplicative(SingularCase c) {
  switch (c) {
    case SingularCase::nodal:
    case SingularCase::conic_transverse:
    case SingularCase::triangle: return true;
    default: return false;
  }
}

/// Tag that classify() must assign to the reference curve of the case.
inline CubicTag singular_case_tag(SingularCase c) {
  switch (c) {
    case SingularCase::nodal: return CubicTag::nodal;
    case SingularCase::cuspidal: return CubicTag::cuspidal;
    case SingularCase::conic_transverse: return CubicTag::conic_line_transverse;
    case SingularCase::conic_tangent: return CubicTag::conic_line_tangent;
    case SingularCase::triangle: return CubicTag::triangle;
    case SingularCase::concurrent: return CubicTag::concurrent_lines;
  }
  return CubicTag::non_reduced;
}

namespace detail {

// Strict zero test: the excluded parameter values are the literal zeroes,
// not a tolerance ball around them.
template <class S>
bool is_strict_zero(const S& s) {
  if constexpr (scalar_traits<S>::is_exact)
    return s.is_zero();
  else
    return s == S{0.0, 0.0};
}

template <class S>
S imag_unit(const S& exemplar) {
  if constexpr (scalar_traits<S>::is_exact) {
    long n = exemplar.field()->conductor();
    if (n % 4 != 0)
      throw DomainError("conic parametrization needs 4 to divide the conductor");
    return S::zeta(exemplar.field(), n / 4);
  } else {
    (void)exemplar;
    return S{0.0, 1.0};
  }
}

}  // namespace detail

/// Reference curve of the given degeneration class, built over the backend
/// of `exemplar`: nodal x^3+x^2z-y^2z, cuspidal x^3-y^2z, conic+line
/// (x^2+y^2-z^2)z and (x^2-yz)z, triangle xyz, concurrent xy(x-y).
template <class S>
Cubic<S> singular_curve(SingularCase c, const S& exemplar) {
  std::vector<S> v(10, scalar_traits<S>::zero_like(exemplar));
  auto set = [&](int i, long k) { v[i] = scalar_traits<S>::from_int_like(exemplar, k); };
  switch (c) {
    case SingularCase::nodal:  // x^3 + x^2 z - y^2 z
      set(0, 1); set(2, 1); set(7, -1);
      break;
    case SingularCase::cuspidal:  // x^3 - y^2 z
      set(0, 1); set(7, -1);
      break;
    case SingularCase::conic_transverse:  // x^2 z + y^2 z - z^3
      set(2, 1); set(7, 1); set(9, -1);
      break;
    case SingularCase::conic_tangent:  // x^2 z - y z^2
      set(2, 1); set(8, -1);
      break;
    case SingularCase::triangle:  // x y z
      set(4, 1);
      break;
    case SingularCase::concurrent:  // x^2 y - x y^2
      set(1, 1); set(3, -1);
      break;
  }
  return make_cubic(std::move(v));
}

/// Point of the reference curve at parameter `s` on the given component.
/// The parameter value 0 is excluded on multiplicative components, where it
/// would land on a singular point of the curve.
template <class S>
Point<S> singular_param(SingularCase c, int component, const S& s) {
  if (component < 0 || component >= singular_component_count(c))
    throw DomainError("component index out of range for this curve");
  if (singular_case_multiplicative(c) && detail::is_strict_zero(s))
    throw DomainError("parameter 0 lands on a singular point of the curve");

  const S one = scalar_traits<S>::one_like(s);
  auto num = [&](long k) { return scalar_traits<S>::from_int_like(s, k); };

  switch (c) {
    case SingularCase::nodal: {
      // (4t(1-t) : 4t(1+t) : (1-t)^3), neutral at t = 1, node at t = 0.
      S u = one - s;
      return make_point(num(4) * s * u, num(4) * s * (one + s), u * u * u);
    }
    case SingularCase::cuspidal:
      // (s : 1 : s^3), neutral at s = 0, cusp out of range.
      return make_point(s, one, s * s * s);
    case SingularCase::conic_transverse: {
      S i = detail::imag_unit(s);
      if (component == 0) return make_point(one + s * s, i * (one - s * s), num(2) * s);
      return make_point(one - s, i * (one + s), scalar_traits<S>::zero_like(s));
    }
    case SingularCase::conic_tangent:
      if (component == 0) return make_point(s, s * s, one);
      return make_point(one, s, scalar_traits<S>::zero_like(s));
    case SingularCase::triangle:
      if (component == 0) return make_point(scalar_traits<S>::zero_like(s), s, one);
      if (component == 1) return make_point(one, scalar_traits<S>::zero_like(s), s);
      return make_point(one, scalar_traits<S>::zero_like(s) - s, scalar_traits<S>::zero_like(s));
    case SingularCase::concurrent:
      if (component == 0) return make_point(scalar_traits<S>::zero_like(s), one, s);
      if (component == 1) return make_point(one, scalar_traits<S>::zero_like(s), s);
      return make_point(one, one, s);
  }
  throw DomainError("unknown singular case");
}

/// Parameter of the third point collinear with the points at s1 and s2.
/// For the one-component cases s1, s2 sit on the curve itself; for
/// conic+line both sit on the conic and the result lives on the line; for
/// three lines s1 sits on component 0, s2 on component 1, the result on
/// component 2.
template <class S>
S singular_pairing_third(SingularCase c, const S& s1, const S& s2) {
  const S one = scalar_traits<S>::one_like(s1);
  switch (c) {
    case SingularCase::nodal:
      if (detail::is_strict_zero(s1) || detail::is_strict_zero(s2))
        throw DomainError("parameter 0 lands on a singular point of the curve");
      return one / (s1 * s2);
    case SingularCase::cuspidal:
      return scalar_traits<S>::zero_like(s1) - s1 - s2;
    case SingularCase::conic_transverse:
    case SingularCase::triangle:
      if (detail::is_strict_zero(s1) || detail::is_strict_zero(s2))
        throw DomainError("parameter 0 lands on a singular point of the curve");
      return s1 * s2;
    case SingularCase::conic_tangent:
    case SingularCase::concurrent:
      return s1 + s2;
  }
  throw DomainError("unknown singular case");
}

/// Whether the three parameters satisfy the collinearity relation of the
/// case: product 1 on the nodal curve, sum 0 on the cuspidal one, and the
/// cross-component relations t = s1 s2 resp. t = s1 + s2 otherwise.
template <class S>
bool singular_pairing_check(SingularCase c, const S& s1, const S& s2, const S& s3,
                            const Tol& tol = {}) {
  return scalar_eq(s3, singular_pairing_third(c, s1, s2), tol);
}

}  // namespace planet
