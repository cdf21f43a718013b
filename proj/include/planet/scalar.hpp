#pragma once

#include <complex>
#include <cstdint>
#include <sstream>

#include "planet/cyclotomic.hpp"
#include "planet/errors.hpp"
#include "planet/rational.hpp"

namespace planet {

using CD = std::complex<double>;

/// Session tolerances for the approximate backend.  Exact-mode code paths
/// ignore them.
struct Tol {
  double eq = 1e-9;      // scalar / projective equality
  double rank = 1e-8;    // relative singular-value cutoff for rank decisions
  double series = 1e-14; // series truncation threshold
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<CD> {
  static constexpr bool is_exact = false;

  static CD zero_like(const CD&) { return {0.0, 0.0}; }
  static CD one_like(const CD&) { return {1.0, 0.0}; }
  static CD from_int_like(const CD&, long v) { return {static_cast<double>(v), 0.0}; }
  static CD from_rational_like(const CD&, const Rational& r) { return {to_double(r), 0.0}; }

  static double abs(const CD& a) { return std::abs(a); }
  static std::complex<double> numeric(const CD& a) { return a; }

  /// |a-b| <= eps * max(1, |a|, |b|)
  static bool eq(const CD& a, const CD& b, const Tol& tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol.eq * scale;
  }
  static bool is_zero(const CD& a, const Tol& tol) { return eq(a, CD{0.0, 0.0}, tol); }

  static std::string str(const CD& a) {
    std::ostringstream os;
    os << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
    return os.str();
  }
};

template <>
struct scalar_traits<Cyclo> {
  static constexpr bool is_exact = true;

  static Cyclo zero_like(const Cyclo& a) { return Cyclo(a.field()); }
  static Cyclo one_like(const Cyclo& a) { return Cyclo(a.field(), Rational(1)); }
  static Cyclo from_int_like(const Cyclo& a, long v) { return Cyclo(a.field(), Rational(v)); }
  static Cyclo from_rational_like(const Cyclo& a, const Rational& r) { return Cyclo(a.field(), r); }

  static double abs(const Cyclo& a) { return std::abs(a.numeric()); }
  static std::complex<double> numeric(const Cyclo& a) { return a.numeric(); }

  static bool eq(const Cyclo& a, const Cyclo& b, const Tol&) { return a == b; }
  static bool is_zero(const Cyclo& a, const Tol&) { return a.is_zero(); }

  static std::string str(const Cyclo& a) { return a.str(); }
};

template <class S>
bool scalar_eq(const S& a, const S& b, const Tol& tol = {}) {
  return scalar_traits<S>::eq(a, b, tol);
}
template <class S>
bool scalar_is_zero(const S& a, const Tol& tol = {}) {
  return scalar_traits<S>::is_zero(a, tol);
}

}  // namespace planet
