#pragma once

#include <random>

#include "planet/projective.hpp"
#include "planet/scalar.hpp"

namespace planet {

using Rng = std::mt19937_64;

/// Small random rational with numerator in [-9, 9] and denominator in [1, 4].
inline Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  return Rational(num(rng), den(rng));
}

inline Rational random_rational_nonzero(Rng& rng) {
  for (;;) {
    Rational r = random_rational(rng);
    if (r != 0) return r;
  }
}

template <class S>
S random_scalar(Rng& rng, const S& exemplar) {
  if constexpr (scalar_traits<S>::is_exact) {
    // Rational combination of two power-basis elements keeps values small but
    // exercises the non-rational part of the field.
    const auto& f = exemplar.field();
    S v = scalar_traits<S>::from_rational_like(exemplar, random_rational(rng));
    if (f->conductor() > 1) {
      std::uniform_int_distribution<int> pw(0, f->conductor() - 1);
      v += Cyclo::zeta(f, pw(rng)) * Cyclo(f, random_rational(rng));
    }
    return v;
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return S{u(rng), u(rng)};
  }
}

template <class S>
Point<S> random_point(Rng& rng, const S& exemplar) {
  for (;;) {
    S x = random_scalar(rng, exemplar);
    S y = random_scalar(rng, exemplar);
    S z = random_scalar(rng, exemplar);
    bool all_zero;
    if constexpr (scalar_traits<S>::is_exact) {
      all_zero = x.is_zero() && y.is_zero() && z.is_zero();
    } else {
      all_zero = std::abs(x) + std::abs(y) + std::abs(z) < 1e-3;
    }
    if (!all_zero) return make_point(std::move(x), std::move(y), std::move(z));
  }
}

template <class S>
Line<S> random_line(Rng& rng, const S& exemplar) {
  return dual(random_point(rng, exemplar));
}

}  // namespace planet
