#pragma once

// Numerical Weierstrass uniformization of the complex torus C/(Z + tau Z):
// lattice invariants from Eisenstein q-series, the p-function and its
// derivative, and the embedding z -> (p(z) : p'(z) : 1) onto a smooth cubic.
// Evaluation always runs at an SL2(Z)-reduced tau and is pulled back through
// the homogeneity of the lattice functions, so the series stay fast and
// stable for every tau in the upper half-plane.

#include <array>
#include <cmath>
#include <complex>

#include "planet/cubic.hpp"
#include "planet/errors.hpp"
#include "planet/projective.hpp"
#include "planet/scalar.hpp"

namespace planet {

/// Default lattice parameter: generic, no extra automorphisms.
inline constexpr CD default_tau{0.23, 1.11};

/// Invariants of the lattice Z + tau Z together with its cubic model
/// y^2 z = 4x^3 - g2 x z^2 - g3 z^3.
struct EllipticData {
  CD tau;        // lattice parameter as given
  CD g2, g3;     // invariants of Z + tau Z
  Cubic<CD> curve;

  CD tau_reduced;      // fundamental-domain representative
  CD scale;            // mu with Z + tau Z = mu (Z + tau_reduced Z)
  double series_eps;   // q-series truncation threshold
};

namespace detail {

constexpr double kTwoPi = 6.2831853071795864769;

// tau -> fundamental domain; returns {tau_reduced, mu = c tau + d}.
inline std::pair<CD, CD> reduce_tau(CD tau) {
  long a = 1, b = 0, c = 0, d = 1;
  for (int it = 0; it < 200; ++it) {
    double shift = std::round(tau.real());
    tau -= shift;
    long k = static_cast<long>(shift);
    a -= k * c;
    b -= k * d;
    if (std::norm(tau) >= 1.0 - 1e-15) break;
    tau = -1.0 / tau;
    long na = -c, nb = -d;
    c = a;
    d = b;
    a = na;
    b = nb;
  }
  // tau_reduced = (a tau0 + b)/(c tau0 + d); recover mu from the inverse:
  // tau0 = (d tau_red - b)/(-c tau_red + a), so c tau0 + d = 1/(a - c tau_red).
  CD mu = 1.0 / (static_cast<double>(a) - static_cast<double>(c) * tau);
  return {tau, mu};
}

// sigma_k(n) as a double
inline double divisor_power_sum(long n, int k) {
  double s = 0.0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += std::pow(static_cast<double>(d), k);
    long e = n / d;
    if (e != d) s += std::pow(static_cast<double>(e), k);
  }
  return s;
}

}  // namespace detail

/// Lattice invariants and cubic model for Z + tau Z.  Series terms below
/// `eps` are dropped.
inline EllipticData weierstrass(CD tau, double eps = 1e-14) {
  if (!(tau.imag() > 0.0))
    throw DomainError("weierstrass needs tau in the upper half-plane");

  auto [tr, mu] = detail::reduce_tau(tau);
  CD q = std::exp(CD{0.0, detail::kTwoPi} * tr);

  // E4 = 1 + 240 sum sigma3(n) q^n,  E6 = 1 - 504 sum sigma5(n) q^n
  CD e4{1.0, 0.0}, e6{1.0, 0.0};
  CD qn{1.0, 0.0};
  for (long n = 1; n < 4000; ++n) {
    qn *= q;
    CD t4 = 240.0 * detail::divisor_power_sum(n, 3) * qn;
    CD t6 = 504.0 * detail::divisor_power_sum(n, 5) * qn;
    e4 += t4;
    e6 -= t6;
    if (std::abs(t4) < eps && std::abs(t6) < eps) break;
  }

  const double pi = detail::kTwoPi / 2.0;
  CD g2r = (4.0 * std::pow(pi, 4) / 3.0) * e4;
  CD g3r = (8.0 * std::pow(pi, 6) / 27.0) * e6;

  CD mi2 = 1.0 / (mu * mu);
  CD g2 = g2r * mi2 * mi2;
  CD g3 = g3r * mi2 * mi2 * mi2;

  // 4x^3 - g2 x z^2 - g3 z^3 - y^2 z
  std::vector<CD> cf(10, CD{0.0, 0.0});
  cf[0] = CD{4.0, 0.0};
  cf[5] = -g2;
  cf[7] = CD{-1.0, 0.0};
  cf[9] = -g3;
  EllipticData e{tau, g2, g3, make_cubic(std::move(cf)), tr, mu, eps};
  return e;
}

/// Coordinates (alpha, beta) of z in the lattice basis, z = alpha + beta tau.
inline std::array<double, 2> lattice_coordinates(const EllipticData& e, CD z) {
  double beta = z.imag() / e.tau.imag();
  double alpha = z.real() - beta * e.tau.real();
  return {alpha, beta};
}

/// Whether z lies on the lattice Z + tau Z, up to eps in basis coordinates.
inline bool lattice_member(const EllipticData& e, CD z, double eps = 1e-9) {
  auto [a, b] = lattice_coordinates(e, z);
  return std::abs(a - std::round(a)) <= eps && std::abs(b - std::round(b)) <= eps;
}

/// The uniformizing map z -> (p(z) : p'(z) : 1); lattice points go to the
/// flex at infinity (0 : 1 : 0).
inline Point<CD> pe_map(const EllipticData& e, CD z) {
  if (lattice_member(e, z, 1e-12))
    return make_point(CD{0.0, 0.0}, CD{1.0, 0.0}, CD{0.0, 0.0});

  // Pass to the reduced lattice and center the argument in its cell, so
  // that |q|^(1/2) <= |u| <= |q|^(-1/2) and the series converge fast.
  CD w = z / e.scale;
  CD tr = e.tau_reduced;
  double beta = w.imag() / tr.imag();
  double alpha = w.real() - beta * tr.real();
  w -= std::round(alpha) + std::round(beta) * tr;

  CD q = std::exp(CD{0.0, detail::kTwoPi} * tr);
  CD u = std::exp(CD{0.0, detail::kTwoPi} * w);

  auto sq = [](CD v) { return v * v; };
  auto cube = [](CD v) { return v * v * v; };

  // p  = (2 pi i)^2 [ 1/12 + u/(1-u)^2 + sum_{n>=1} ( f(q^n u) + f(q^n/u) - 2 f(q^n) ) ]
  // p' = (2 pi i)^3 [ g(u) + sum_{n>=1} ( g(q^n u) - g(q^n/u) ) ]
  // with f(w) = w/(1-w)^2 and g(w) = w(1+w)/(1-w)^3.
  CD p = CD{1.0 / 12.0, 0.0} + u / sq(1.0 - u);
  CD dp = u * (1.0 + u) / cube(1.0 - u);
  CD qn{1.0, 0.0};
  for (long n = 1; n < 4000; ++n) {
    qn *= q;
    CD wp = qn * u, wm = qn / u;
    CD tp = wp / sq(1.0 - wp) + wm / sq(1.0 - wm) - 2.0 * qn / sq(1.0 - qn);
    CD td = wp * (1.0 + wp) / cube(1.0 - wp) - wm * (1.0 + wm) / cube(1.0 - wm);
    p += tp;
    dp += td;
    if (std::abs(wp) < e.series_eps && std::abs(wm) < e.series_eps) break;
  }

  const CD tpi{0.0, detail::kTwoPi};
  p *= tpi * tpi;
  dp *= tpi * tpi * tpi;

  CD mi = 1.0 / e.scale;
  return make_point(p * mi * mi, dp * mi * mi * mi, CD{1.0, 0.0});
}

}  // namespace planet
