#pragma once

// Decides whether a 3-net is cut out by a plane cubic: the lines are
// dualized and the space of cubics through the dual points is searched for
// a member containing every dual point as a regular point. Candidates built
// from the class geometry are tried before generic fits, so a split witness
// is preferred whenever the classes supply one: a class of concurrent lines
// dualizes into a line factor, two classes whose duals share a conic into a
// conic factor.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "planet/cubic.hpp"
#include "planet/errors.hpp"
#include "planet/net.hpp"
#include "planet/projective.hpp"
#include "planet/random.hpp"
#include "planet/scalar.hpp"

namespace planet {

template <class S>
struct AlgebraicReport {
  bool algebraic = false;
  std::optional<Cubic<S>> cubic;             // witness, when algebraic
  std::optional<CubicClass<S>> cubic_class;  // its classification
  double max_residual = 0.0;                 // worst on-curve residual over the duals
  std::string diagnostic;                    // reason, when not algebraic
};

namespace detail {

// Basis of the space of conics through all the given points, as the
// nullspace of the evaluation matrix on the 6 quadratic monomials.
template <class S>
std::vector<HomPoly<S>> fit_conics(const std::vector<Point<S>>& pts, const Tol& tol) {
  Mat<S> rows;
  for (const auto& p : pts) {
    Vec<S> row;
    for (int ax = 2; ax >= 0; --ax)
      for (int ay = 2 - ax; ay >= 0; --ay) {
        S m = scalar_traits<S>::one_like(p.c[0]);
        for (int i = 0; i < ax; ++i) m = m * p.c[0];
        for (int i = 0; i < ay; ++i) m = m * p.c[1];
        for (int i = 0; i < 2 - ax - ay; ++i) m = m * p.c[2];
        row.push_back(m);
      }
    rows.push_back(std::move(row));
  }
  std::vector<HomPoly<S>> basis;
  for (auto& v : mat_nullspace(rows, tol)) {
    HomPoly<S> g;
    g.d = 2;
    g.c = std::move(v);
    basis.push_back(std::move(g));
  }
  return basis;
}

template <class S>
bool hp_is_trivial(const HomPoly<S>& f, const Tol& tol) {
  for (const auto& c : f.c)
    if (!scalar_is_zero(c, tol)) return false;
  return true;
}

// Split candidates read off the class geometry: the product of the three
// dual lines when every class is concurrent, and conic times dual line when
// one class is concurrent and the other two share a conic.
template <class S>
std::vector<HomPoly<S>> split_candidates(const Net<S>& net, const Tol& tol) {
  std::array<std::optional<Point<S>>, 3> base;
  for (int t = 0; t < 3; ++t) {
    auto prof = class_profile(net.classes[t], tol);
    if (prof.shape == ClassShape::pencil) base[t] = *prof.base;
  }
  auto dual_line = [](const Point<S>& b) { return hp_linear(b.c[0], b.c[1], b.c[2]); };

  std::vector<HomPoly<S>> out;
  if (base[0] && base[1] && base[2])
    out.push_back(dual_line(*base[0]) * dual_line(*base[1]) * dual_line(*base[2]));
  for (int j = 0; j < 3; ++j) {
    if (!base[j]) continue;
    std::vector<Point<S>> others;
    for (int t = 0; t < 3; ++t)
      if (t != j)
        for (const auto& l : net.classes[t]) others.push_back(dual(l));
    for (auto& q : fit_conics(others, tol)) out.push_back(std::move(q) * dual_line(*base[j]));
  }
  return out;
}

template <class S>
bool regular_witness(const Cubic<S>& cu, const std::vector<Point<S>>& duals, const Tol& tol,
                     double& worst) {
  worst = 0.0;
  for (const auto& p : duals) {
    if (!is_on_curve(cu, p, tol) || is_singular_point(cu, p, tol)) return false;
    worst = std::max(worst, on_curve_residual(cu, p));
  }
  return true;
}

}  // namespace detail

/// Searches for a cubic through the duals of all net lines that is regular
/// at each of them; answers yes with the witness and its classification.
/// Split candidates from the class geometry are tried first, then the fitted
/// basis, then ten random members of the fitted family.
template <class S>
AlgebraicReport<S> is_algebraic(const Net<S>& net, const Tol& tol = {}) {
  if (net.classes.size() != 3) throw DomainError("is_algebraic needs a 3-net");
  NetReport rep = verify_net(net, tol);
  if (!rep.ok) throw DomainError("is_algebraic needs a verified net: " + rep.violations.front());

  std::vector<Point<S>> duals;
  for (const auto& cls : net.classes)
    for (const auto& l : cls) duals.push_back(dual(l));

  AlgebraicReport<S> out;
  std::vector<HomPoly<S>> basis = fit_cubics(duals, tol);
  if (basis.empty()) {
    out.diagnostic = "no cubic passes through all dual points";
    return out;
  }

  std::vector<HomPoly<S>> candidates;
  if (rep.m >= 2)
    for (auto& f : detail::split_candidates(net, tol)) candidates.push_back(std::move(f));
  for (const auto& f : basis) candidates.push_back(f);
  if (basis.size() >= 2) {
    Rng rng(911);
    for (int it = 0; it < 10; ++it) {
      HomPoly<S> mix = hp_zero(3, basis[0].c[0]);
      for (const auto& f : basis) {
        int a = static_cast<int>(rng() % 19) - 9;
        mix = mix + hp_scale(f, scalar_traits<S>::from_int_like(basis[0].c[0], a));
      }
      candidates.push_back(std::move(mix));
    }
  }

  for (auto& f : candidates) {
    if (detail::hp_is_trivial(f, tol)) continue;
    Cubic<S> cu = make_cubic(std::move(f));
    double worst = 0.0;
    if (!detail::regular_witness(cu, duals, tol, worst)) continue;
    out.algebraic = true;
    out.max_residual = worst;
    out.cubic_class = classify(cu, tol);
    out.cubic = std::move(cu);
    return out;
  }
  out.diagnostic = "every fitted cubic is singular at some dual point";
  return out;
}

}  // namespace planet
