#pragma once

// Canonical net constructions: the triple-pencil net of the Fermat-type
// pencil, the six-line braid arrangement, the Hesse configuration of
// inflection lines, and the dual nets cut out by finite subgroups on the
// smooth locus of a plane cubic, smooth or singular. Exact over a
// cyclotomic field where the coordinates allow it, with approximate
// doubles as an alternative.

#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "planet/cyclotomic.hpp"
#include "planet/elliptic.hpp"
#include "planet/errors.hpp"
#include "planet/net.hpp"
#include "planet/projective.hpp"
#include "planet/scalar.hpp"
#include "planet/singular.hpp"

namespace planet {

namespace detail {

// Classes {x - z^i y}, {x - z^i z}, {y - z^i z} for z a primitive m-th root
// of unity supplied by the caller.
template <class S, class ZetaFn>
Net<S> pencil_net_build(int m, const S& one, const S& zero, ZetaFn zeta) {
  Net<S> net;
  net.classes.resize(3);
  for (int i = 0; i < m; ++i) {
    S zi = zeta(i);
    net.classes[0].push_back(make_line(one, -zi, zero));
    net.classes[1].push_back(make_line(one, zero, -zi));
    net.classes[2].push_back(make_line(zero, one, -zi));
  }
  return net;
}

}  // namespace detail

/// The (3, m)-net whose classes split x^m - y^m, x^m - z^m, y^m - z^m.
/// Built over Q(zeta_N) with m | N; by default N = m.
inline Net<Cyclo> pencil_net(int m, FieldPtr field = nullptr) {
  if (m < 2) throw DomainError("pencil_net needs m >= 2");
  FieldPtr F = field ? field : CyclotomicField::make(m);
  if (F->conductor() % m != 0) throw DomainError("pencil_net needs m to divide the conductor");
  const long step = F->conductor() / m;
  Cyclo one(F, Rational(1)), zero(F);
  return detail::pencil_net_build(m, one, zero,
                                  [&](int i) { return Cyclo::zeta(F, step * i); });
}

inline Net<CD> pencil_net_approx(int m) {
  if (m < 2) throw DomainError("pencil_net needs m >= 2");
  const double pi = std::acos(-1.0);
  return detail::pencil_net_build<CD>(m, CD(1.0), CD(0.0), [&](int i) {
    double a = 2.0 * pi * i / m;
    return CD(std::cos(a), std::sin(a));
  });
}

/// The (3, 2)-net on the six lines x, y, z, x-y, x-z, y-z, partitioned as
/// {x, y-z}, {y, x-z}, {z, x-y}; its four points are the triple points of
/// the arrangement.
inline Net<Cyclo> braid_net() {
  FieldPtr F = CyclotomicField::make(1);
  Cyclo one(F, Rational(1)), zero(F);
  Net<Cyclo> net;
  net.classes = {
      {make_line(one, zero, zero), make_line(zero, one, -one)},
      {make_line(zero, one, zero), make_line(one, zero, -one)},
      {make_line(zero, zero, one), make_line(one, -one, zero)},
  };
  return net;
}

namespace detail {

// The four triangles of the pencil spanned by x^3 + y^3 + z^3 and xyz, for
// w a primitive cube root of unity: xyz itself and the three factorizations
// of x^3 + y^3 + z^3 - 3 w^e xyz.
template <class S>
Net<S> hessian_net_build(const S& one, const S& zero, const S& w) {
  S w2 = w * w;
  Net<S> net;
  net.classes = {
      {make_line(one, zero, zero), make_line(zero, one, zero), make_line(zero, zero, one)},
      {make_line(one, one, one), make_line(one, w, w2), make_line(one, w2, w)},
      {make_line(one, w, one), make_line(one, w2, w2), make_line(one, one, w)},
      {make_line(one, w2, one), make_line(one, one, w2), make_line(one, w, w)},
  };
  return net;
}

}  // namespace detail

/// The (4, 3)-net of the Hesse configuration: the nine inflection points of
/// x^3 + y^3 + z^3 and the twelve lines through triples of them, one class
/// per triangle of the pencil it spans with xyz.
inline Net<Cyclo> hessian_net(FieldPtr field = nullptr) {
  FieldPtr F = field ? field : CyclotomicField::make(3);
  if (F->conductor() % 3 != 0) throw DomainError("hessian_net needs 3 to divide the conductor");
  Cyclo one(F, Rational(1)), zero(F);
  Cyclo w = Cyclo::zeta(F, F->conductor() / 3);
  return detail::hessian_net_build(one, zero, w);
}

inline Net<CD> hessian_net_approx() {
  const double pi = std::acos(-1.0);
  CD w(std::cos(2.0 * pi / 3.0), std::sin(2.0 * pi / 3.0));
  return detail::hessian_net_build<CD>(CD(1.0), CD(0.0), w);
}

namespace detail {

// True when z lies in the subgroup generated by 1 / m2 and tau / m1 on the
// torus, i.e. when its lattice coordinates scaled by (m2, m1) are integral.
inline bool in_torus_subgroup(const EllipticData& e, CD z, int m1, int m2) {
  auto ab = lattice_coordinates(e, z);
  double x = ab[0] * m2, y = ab[1] * m1;
  return std::abs(x - std::round(x)) < 1e-9 && std::abs(y - std::round(y)) < 1e-9;
}

}  // namespace detail

/// The (3, m1 m2)-net cut out by an order m1 m2 subgroup of a smooth plane
/// cubic. Three cosets of the subgroup generated by 1 / m2 and tau / m1,
/// chosen so the offsets sum to zero, are mapped onto the curve and the
/// resulting points are dualized, one line class per coset. Three lines are
/// concurrent exactly when their subgroup elements sum to zero, so the net
/// multiplies like Z_m1 x Z_m2. Requires m1 | m2; offsets landing in a
/// common coset are an error, never silently perturbed.
inline Net<CD> torus_net(int m1, int m2, CD tau = default_tau,
                         std::optional<CD> alpha = std::nullopt,
                         std::optional<CD> beta = std::nullopt) {
  if (m1 < 1 || m2 < 1) throw DomainError("torus_net needs positive invariant factors");
  if (m2 % m1 != 0) throw DomainError("torus_net needs m1 to divide m2");
  if (m1 * m2 < 2) throw DomainError("torus_net needs a subgroup of order at least 2");
  EllipticData e = weierstrass(tau);
  CD a = alpha ? *alpha : CD(1.0 / (7.0 * m2), 0.0);
  CD b = beta ? *beta : tau / (7.0 * m2) + CD(1.0 / (11.0 * m2), 0.0);
  CD off[3] = {a, b, -a - b};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (detail::in_torus_subgroup(e, off[i] - off[j], m1, m2))
        throw DomainError("torus_net offsets must lie in distinct subgroup cosets");
  Net<CD> net;
  net.classes.resize(3);
  for (int t = 0; t < 3; ++t)
    for (int bi = 0; bi < m1; ++bi)
      for (int ai = 0; ai < m2; ++ai) {
        CD z = off[t] + CD(double(ai) / m2, 0.0) + tau * (double(bi) / m1);
        net.classes[t].push_back(dual(pe_map(e, z)));
      }
  if (detail::duplicate_line_pair(net, Tol{}))
    throw NumericError("torus_net lines collide numerically; move the offsets");
  return net;
}

/// Invariant-factor form: torus_net({d}) and torus_net({d1, d2}) build the
/// nets above, factors of one are dropped. A net of lines multiplies like a
/// group with at most two invariant factors, so longer lists are rejected
/// here rather than producing a net that cannot exist.
inline Net<CD> torus_net(const std::vector<int>& factors, CD tau = default_tau) {
  std::vector<int> f;
  for (int d : factors) {
    if (d < 1) throw DomainError("torus_net needs positive invariant factors");
    if (d > 1) f.push_back(d);
  }
  if (f.size() > 2)
    throw DomainError("torus_net realizes at most two invariant factors; got " +
                      std::to_string(f.size()));
  if (f.empty()) throw DomainError("torus_net needs a subgroup of order at least 2");
  int m1 = f.size() == 2 ? f[0] : 1;
  return torus_net(m1, f.back(), tau);
}

namespace detail {

// Shared coset layout for the multiplicative singular cases: reference
// cosets u mu_m and v mu_m, with the third coset and the component of each
// class dictated by the collinearity pairing of the curve.
template <class S, class ZetaFn>
Net<S> singular_cubic_net_build(SingularCase c, int m, const S& u, const S& v,
                                ZetaFn zeta) {
  S one = scalar_traits<S>::one_like(u);
  S reps[3] = {u, v, c == SingularCase::nodal ? one / (u * v) : u * v};
  int comps[3] = {0, 0, 0};
  if (c == SingularCase::conic_transverse) comps[2] = 1;
  if (c == SingularCase::triangle) {
    comps[1] = 1;
    comps[2] = 2;
  }
  auto collide = [&](const S& x, const S& y) {
    S p = one, r = x / y;
    for (int i = 0; i < m; ++i) p = p * r;
    return scalar_is_zero(p - one);
  };
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (comps[i] == comps[j] && collide(reps[i], reps[j]))
        throw DomainError("singular_cubic_net cosets collide on the curve");
  Net<S> net;
  net.classes.resize(3);
  for (int t = 0; t < 3; ++t)
    for (int j = 0; j < m; ++j)
      net.classes[t].push_back(dual(singular_param(c, comps[t], reps[t] * zeta(j))));
  return net;
}

inline void check_singular_net_request(SingularCase c, int m) {
  if (!singular_case_multiplicative(c) && m > 1)
    throw DomainError(std::string("singular_cubic_net: the ") + singular_case_name(c) +
                      " case pairs additively and has no finite subgroup of order " +
                      std::to_string(m));
  if (m < 2) throw DomainError("singular_cubic_net needs m >= 2");
}

}  // namespace detail

/// The (3, m)-net cut out by the m-th roots of unity on the smooth locus of
/// a singular cubic, for the cases whose smooth locus pairs multiplicatively
/// (nodal, conic-transverse, triangle). Classes are the duals of the cosets
/// 2 mu_m, 3 mu_m and the coset completing the collinearity pairing, spread
/// over the components of the curve; the net multiplies like Z_m. The cases
/// that pair additively (cuspidal, conic-tangent, concurrent) have no finite
/// subgroup to quotient by and are rejected.
inline Net<Cyclo> singular_cubic_net(SingularCase c, int m, FieldPtr field = nullptr) {
  detail::check_singular_net_request(c, m);
  long need = c == SingularCase::conic_transverse ? std::lcm<long>(4, m) : m;
  FieldPtr F = field ? field : CyclotomicField::make(need);
  if (F->conductor() % m != 0)
    throw DomainError("singular_cubic_net needs m to divide the conductor");
  if (c == SingularCase::conic_transverse && F->conductor() % 4 != 0)
    throw DomainError("conic parametrization needs 4 to divide the conductor");
  const long step = F->conductor() / m;
  Cyclo u(F, Rational(2)), v(F, Rational(3));
  return detail::singular_cubic_net_build(c, m, u, v,
                                          [&](int j) { return Cyclo::zeta(F, step * j); });
}

inline Net<CD> singular_cubic_net_approx(SingularCase c, int m) {
  detail::check_singular_net_request(c, m);
  const double pi = std::acos(-1.0);
  return detail::singular_cubic_net_build<CD>(c, m, CD(2.0), CD(3.0), [&](int j) {
    double t = 2.0 * pi * j / m;
    return CD(std::cos(t), std::sin(t));
  });
}

}  // namespace planet
