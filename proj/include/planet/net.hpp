#pragma once

// Line arrangements split into classes, the incidence axioms that make them
// nets, the (k, m, r) feasibility bound, and pencil membership of the split
// class forms.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "planet/errors.hpp"
#include "planet/linalg.hpp"
#include "planet/polynomial.hpp"
#include "planet/projective.hpp"
#include "planet/rational.hpp"
#include "planet/scalar.hpp"

namespace planet {

/// A k-net candidate: k classes of lines plus the set of cross-class
/// intersection points. `points` may be left empty and recomputed; a
/// populated set is cross-checked during verification rather than trusted.
/// `allow_trivial` admits the order-1 arrangement (one line per class, all
/// concurrent), which is rejected by default.
template <class S>
struct Net {
  std::vector<std::vector<Line<S>>> classes;
  std::vector<Point<S>> points;
  bool allow_trivial = false;
};

struct NetReport {
  bool ok = false;
  int k = 0;
  int m = 0;
  int r = 0;  // number of classes whose lines are concurrent
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
};

namespace detail {

template <class S>
std::vector<const Line<S>*> all_lines(const Net<S>& net) {
  std::vector<const Line<S>*> out;
  for (const auto& cls : net.classes)
    for (const auto& l : cls) out.push_back(&l);
  return out;
}

template <class S>
std::optional<std::pair<int, int>> duplicate_line_pair(const Net<S>& net, const Tol& tol) {
  auto lines = all_lines(net);
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j)
      if (lines_equal(*lines[i], *lines[j], tol))
        return std::make_pair(static_cast<int>(i), static_cast<int>(j));
  return std::nullopt;
}

template <class S>
void push_unique_point(std::vector<Point<S>>& pts, const Point<S>& p, const Tol& tol) {
  for (const auto& q : pts)
    if (points_equal(p, q, tol)) return;
  pts.push_back(p);
}

}  // namespace detail

/// All intersection points between lines of distinct classes, deduplicated.
/// Within-class intersections are excluded by construction.
template <class S>
std::vector<Point<S>> compute_points(const Net<S>& net, const Tol& tol = {}) {
  if (auto dup = detail::duplicate_line_pair(net, tol))
    throw DegenerateInputError("duplicate line in arrangement (flat indices " +
                               std::to_string(dup->first) + ", " + std::to_string(dup->second) +
                               ")");
  std::vector<Point<S>> pts;
  const int k = static_cast<int>(net.classes.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (const auto& a : net.classes[i])
        for (const auto& b : net.classes[j])
          detail::push_unique_point(pts, meet(a, b, tol), tol);
  return pts;
}

enum class ClassShape { pencil, general_position, other };

template <class S>
struct ClassProfile {
  ClassShape shape = ClassShape::other;
  std::optional<Point<S>> base;  // present iff shape == pencil
};

/// Shape of one class: a pencil (all lines concurrent, with its base point),
/// general position (all pairwise intersection points distinct), or neither.
template <class S>
ClassProfile<S> class_profile(const std::vector<Line<S>>& lines, const Tol& tol = {}) {
  if (lines.size() < 2) throw DomainError("class_profile needs at least 2 lines");
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j)
      if (lines_equal(lines[i], lines[j], tol)) return {ClassShape::other, std::nullopt};

  Point<S> base = meet(lines[0], lines[1], tol);
  bool pencil = true;
  for (size_t i = 2; i < lines.size() && pencil; ++i)
    pencil = incident(base, lines[i], tol);
  if (pencil) return {ClassShape::pencil, base};

  std::vector<Point<S>> meets;
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j) {
      Point<S> p = meet(lines[i], lines[j], tol);
      for (const auto& q : meets)
        if (points_equal(p, q, tol)) return {ClassShape::other, std::nullopt};
      meets.push_back(p);
    }
  return {ClassShape::general_position, std::nullopt};
}

/// Checks the two net axioms plus the derived counting identities and fills
/// in (k, m, r). Findings are written as human-readable strings; `ok` holds
/// exactly when there are none. Coincidence of a within-class intersection
/// with a net point is reported as a warning (it always surfaces as a
/// uniqueness violation too).
template <class S>
NetReport verify_net(const Net<S>& net, const Tol& tol = {}) {
  NetReport rep;
  rep.k = static_cast<int>(net.classes.size());
  if (rep.k < 3) throw DomainError("verify_net needs at least 3 classes");
  for (int i = 0; i < rep.k; ++i)
    if (net.classes[i].empty())
      throw DomainError("verify_net: class " + std::to_string(i + 1) + " is empty");

  if (auto dup = detail::duplicate_line_pair(net, tol)) {
    rep.violations.push_back("duplicate line in arrangement (flat indices " +
                             std::to_string(dup->first) + ", " + std::to_string(dup->second) +
                             ")");
    return rep;
  }

  // Class sizes; m is the largest so that partial arrangements still get
  // their incidence findings reported against the intended order.
  rep.m = 0;
  for (const auto& cls : net.classes)
    rep.m = std::max(rep.m, static_cast<int>(cls.size()));
  for (int i = 0; i < rep.k; ++i)
    if (static_cast<int>(net.classes[i].size()) != rep.m)
      rep.violations.push_back("classes have unequal sizes: class " + std::to_string(i + 1) +
                               " has " + std::to_string(net.classes[i].size()) + " lines, expected " +
                               std::to_string(rep.m));
  if (rep.m == 1 && !net.allow_trivial)
    rep.violations.push_back("order 1 arrangement (one line per class); nontrivial nets need m > 1");

  std::vector<Point<S>> pts = compute_points(net, tol);

  // Supplied points, if any, must agree with the recomputed set.
  if (!net.points.empty()) {
    if (net.points.size() != pts.size())
      rep.violations.push_back("supplied point set has " + std::to_string(net.points.size()) +
                               " points, recomputed set has " + std::to_string(pts.size()));
    for (const auto& p : net.points) {
      bool found = false;
      for (const auto& q : pts)
        if (points_equal(p, q, tol)) {
          found = true;
          break;
        }
      if (!found)
        rep.violations.push_back("supplied point " + detail::triple_str(p.c) +
                                 " is not a cross-class intersection");
    }
  }

  // Uniqueness axiom: every point lies on exactly one line of each class.
  for (const auto& p : pts)
    for (int i = 0; i < rep.k; ++i) {
      int count = 0;
      for (const auto& l : net.classes[i])
        if (incident(p, l, tol)) ++count;
      if (count != 1)
        rep.violations.push_back("point " + detail::triple_str(p.c) + " lies on " +
                                 std::to_string(count) + " lines of class " +
                                 std::to_string(i + 1) + ", expected exactly one");
    }

  // Counting identities: |X| = m^2 and every line meets X in m points.
  if (static_cast<int>(pts.size()) != rep.m * rep.m)
    rep.violations.push_back("point set has " + std::to_string(pts.size()) +
                             " points, expected m^2 = " + std::to_string(rep.m * rep.m));
  for (int i = 0; i < rep.k; ++i)
    for (size_t j = 0; j < net.classes[i].size(); ++j) {
      int count = 0;
      for (const auto& p : pts)
        if (incident(p, net.classes[i][j], tol)) ++count;
      if (count != rep.m)
        rep.violations.push_back("line " + std::to_string(j + 1) + " of class " +
                                 std::to_string(i + 1) + " meets " + std::to_string(count) +
                                 " points, expected " + std::to_string(rep.m));
    }

  // Within-class intersections that land on a net point explain uniqueness
  // failures; flag them separately.
  for (int i = 0; i < rep.k; ++i)
    for (size_t a = 0; a < net.classes[i].size(); ++a)
      for (size_t b = a + 1; b < net.classes[i].size(); ++b) {
        Point<S> p = meet(net.classes[i][a], net.classes[i][b], tol);
        for (const auto& q : pts)
          if (points_equal(p, q, tol)) {
            rep.warnings.push_back("lines " + std::to_string(a + 1) + " and " +
                                   std::to_string(b + 1) + " of class " + std::to_string(i + 1) +
                                   " meet at net point " + detail::triple_str(p.c));
            break;
          }
      }

  rep.r = 0;
  for (const auto& cls : net.classes) {
    if (cls.size() == 1) {
      ++rep.r;  // a single line counts as a (degenerate) concurrent class
      continue;
    }
    if (class_profile(cls, tol).shape == ClassShape::pencil) ++rep.r;
  }

  rep.ok = rep.violations.empty();
  return rep;
}

struct EulerReport {
  bool feasible = false;
  Rational lhs;  // k
  Rational rhs;  // (6(m-1) - r(m-2)) / m
};

/// Feasibility bound for a (k, m)-net with r pencil classes:
/// k <= 6(m-1)/m - r(m-2)/m, evaluated exactly.
inline EulerReport euler_feasible(int k, int m, int r) {
  if (k < 3) throw DomainError("euler_feasible needs k >= 3");
  if (m < 2) throw DomainError("euler_feasible needs m >= 2");
  if (r < 0 || r > k) throw DomainError("euler_feasible needs 0 <= r <= k");
  EulerReport rep;
  rep.lhs = Rational(k);
  rep.rhs = Rational(6 * (m - 1) - r * (m - 2), m);
  rep.feasible = rep.lhs <= rep.rhs;
  return rep;
}

/// True when the expanded products of the class lines all lie in the span of
/// the first two, i.e. the classes are fibers of one pencil of degree-m
/// curves. Requires the classes to have equal sizes and distinct lines; an
/// arrangement failing only the incidence axioms is still accepted, since
/// the rank test is precisely the detector for such near-misses.
template <class S>
bool verify_split_pencil(const Net<S>& net, const Tol& tol = {}) {
  const int k = static_cast<int>(net.classes.size());
  if (k < 3) throw DomainError("verify_split_pencil needs at least 3 classes");
  size_t m = net.classes[0].size();
  if (m == 0) throw DomainError("verify_split_pencil: class 1 is empty");
  for (int i = 1; i < k; ++i)
    if (net.classes[i].size() != m)
      throw DomainError("verify_split_pencil: classes have unequal sizes");
  if (m == 1 && !net.allow_trivial)
    throw DomainError("verify_split_pencil: order 1 arrangement");
  if (detail::duplicate_line_pair(net, tol))
    throw DomainError("verify_split_pencil: duplicate line in arrangement");

  Mat<S> rows;
  for (const auto& cls : net.classes) {
    HomPoly<S> g = hp_from_lines(cls);
    rows.push_back(g.c);
  }
  return mat_rank(rows, tol) == 2;
}

}  // namespace planet
