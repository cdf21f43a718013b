#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace planet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Best rational approximation p/q of x with q <= max_den (continued fractions).
/// Returns false if the expansion fails to land within tol of x.
inline bool rationalize(double x, std::int64_t max_den, double tol, Rational& out) {
  if (!(x == x) || x > 9e15 || x < -9e15) return false;
  double a = x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int step = 0; step < 64; ++step) {
    double fl = std::floor(a);
    if (fl > 9e15 || fl < -9e15) return false;
    std::int64_t ai = static_cast<std::int64_t>(fl);
    std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = a - fl;
    if (rem < 1e-15) break;
    a = 1.0 / rem;
  }
  if (q1 == 0) return false;
  Rational cand(p1, q1);
  double err = std::abs(to_double(cand) - x);
  if (err > tol) return false;
  out = cand;
  return true;
}

}  // namespace planet
