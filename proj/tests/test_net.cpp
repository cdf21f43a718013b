#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "planet/construct.hpp"
#include "planet/cyclotomic.hpp"
#include "planet/errors.hpp"
#include "planet/net.hpp"
#include "planet/projective.hpp"

using namespace planet;

namespace {

Cyclo cy(const FieldPtr& f, long v) { return Cyclo(f, Rational(v)); }

Point<Cyclo> pt(const FieldPtr& f, long x, long y, long z) {
  return make_point(cy(f, x), cy(f, y), cy(f, z));
}
Line<Cyclo> ln(const FieldPtr& f, long x, long y, long z) {
  return make_line(cy(f, x), cy(f, y), cy(f, z));
}

template <class S>
bool contains_point(const std::vector<Point<S>>& pts, const Point<S>& p) {
  for (const auto& q : pts)
    if (points_equal(p, q)) return true;
  return false;
}

int count_matching(const std::vector<std::string>& msgs, const std::string& needle) {
  int n = 0;
  for (const auto& s : msgs)
    if (s.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST(ComputePoints, BraidTriplePoints) {
  auto net = braid_net();
  auto pts = compute_points(net);
  ASSERT_EQ(pts.size(), 4u);
  auto F = CyclotomicField::make(1);
  EXPECT_TRUE(contains_point(pts, pt(F, 0, 0, 1)));
  EXPECT_TRUE(contains_point(pts, pt(F, 0, 1, 0)));
  EXPECT_TRUE(contains_point(pts, pt(F, 1, 0, 0)));
  EXPECT_TRUE(contains_point(pts, pt(F, 1, 1, 1)));
}

TEST(ComputePoints, PencilTorusPoints) {
  // Meets of x = z^i y with y = z^b z are (z^(i+b) : z^b : 1).
  auto net = pencil_net(3);
  auto pts = compute_points(net);
  ASSERT_EQ(pts.size(), 9u);
  auto F = CyclotomicField::make(3);
  Cyclo one(F, Rational(1));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      EXPECT_TRUE(contains_point(pts, make_point(Cyclo::zeta(F, a + b), Cyclo::zeta(F, b), one)));
}

TEST(ComputePoints, SingleClassIsEmpty) {
  auto F = CyclotomicField::make(1);
  Net<Cyclo> net;
  net.classes = {{ln(F, 1, 0, 0), ln(F, 0, 1, 0)}};
  EXPECT_TRUE(compute_points(net).empty());
}

TEST(ComputePoints, DuplicateLinesRejected) {
  auto net = braid_net();
  net.classes[1].push_back(net.classes[0][0]);
  EXPECT_THROW(compute_points(net), DegenerateInputError);
}

TEST(ClassProfileT, TwoLinesFormPencil) {
  auto F = CyclotomicField::make(1);
  auto prof = class_profile<Cyclo>({ln(F, 1, 0, 0), ln(F, 0, 1, -1)});
  ASSERT_EQ(prof.shape, ClassShape::pencil);
  EXPECT_TRUE(points_equal(*prof.base, pt(F, 0, 1, 1)));
}

TEST(ClassProfileT, QuarticPencilBase) {
  auto F = CyclotomicField::make(4);
  std::vector<Line<Cyclo>> lines;
  for (int i = 0; i < 4; ++i)
    lines.push_back(make_line(Cyclo(F, Rational(1)), -Cyclo::zeta(F, i), Cyclo(F)));
  auto prof = class_profile(lines);
  ASSERT_EQ(prof.shape, ClassShape::pencil);
  EXPECT_TRUE(points_equal(*prof.base, pt(F, 0, 0, 1)));
}

TEST(ClassProfileT, TriangleIsGeneralPosition) {
  auto net = hessian_net();
  for (const auto& cls : net.classes)
    EXPECT_EQ(class_profile(cls).shape, ClassShape::general_position);
}

TEST(ClassProfileT, RepeatedMeetIsOther) {
  auto F = CyclotomicField::make(1);
  // x, y, x + y concur at (0:0:1); z breaks the pencil.
  auto prof = class_profile<Cyclo>({ln(F, 1, 0, 0), ln(F, 0, 1, 0), ln(F, 1, 1, 0), ln(F, 0, 0, 1)});
  EXPECT_EQ(prof.shape, ClassShape::other);
}

TEST(ClassProfileT, NeedsTwoLines) {
  auto F = CyclotomicField::make(1);
  EXPECT_THROW(class_profile<Cyclo>({ln(F, 1, 0, 0)}), DomainError);
}

TEST(VerifyNet, Braid) {
  auto rep = verify_net(braid_net());
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.k, 3);
  EXPECT_EQ(rep.m, 2);
  EXPECT_EQ(rep.r, 3);
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_TRUE(rep.warnings.empty());
}

TEST(VerifyNet, PencilOrders) {
  for (int m : {2, 3, 5, 12}) {
    auto net = pencil_net(m);
    auto rep = verify_net(net);
    EXPECT_TRUE(rep.ok) << "m = " << m;
    EXPECT_EQ(rep.k, 3);
    EXPECT_EQ(rep.m, m);
    EXPECT_EQ(rep.r, 3);
    EXPECT_EQ(compute_points(net).size(), static_cast<size_t>(m) * m);
  }
}

TEST(VerifyNet, PencilApprox) {
  auto rep = verify_net(pencil_net_approx(7));
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.m, 7);
  EXPECT_EQ(rep.r, 3);
}

TEST(VerifyNet, HessianFlexes) {
  auto net = hessian_net();
  auto rep = verify_net(net);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.k, 4);
  EXPECT_EQ(rep.m, 3);
  EXPECT_EQ(rep.r, 0);

  // The point set is the nine inflection points of x^3 + y^3 + z^3.
  auto F = CyclotomicField::make(3);
  auto pts = compute_points(net);
  ASSERT_EQ(pts.size(), 9u);
  Cyclo one(F, Rational(1)), zero(F);
  for (int k = 0; k < 3; ++k) {
    Cyclo wk = Cyclo::zeta(F, k);
    EXPECT_TRUE(contains_point(pts, make_point(zero, one, -wk)));
    EXPECT_TRUE(contains_point(pts, make_point(one, zero, -wk)));
    EXPECT_TRUE(contains_point(pts, make_point(one, -wk, zero)));
  }
}

TEST(VerifyNet, HessianApprox) {
  auto rep = verify_net(hessian_net_approx());
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.k, 4);
  EXPECT_EQ(rep.m, 3);
}

TEST(VerifyNet, MissingLineBreaksCoverage) {
  auto net = braid_net();
  // Drop x = 0; the points (0:0:1) and (0:1:0) lose their class-1 line.
  net.classes[0].erase(net.classes[0].begin());
  auto rep = verify_net(net);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(count_matching(rep.violations, "lies on 0 lines of class 1"), 2);
  EXPECT_EQ(count_matching(rep.violations, "unequal sizes"), 1);
}

TEST(VerifyNet, SuppliedPointsCrossChecked) {
  auto F = CyclotomicField::make(1);
  auto net = braid_net();
  net.points = compute_points(net);
  EXPECT_TRUE(verify_net(net).ok);

  net.points[0] = pt(F, 5, 3, 1);
  auto rep = verify_net(net);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(count_matching(rep.violations, "not a cross-class intersection"), 1);
}

TEST(VerifyNet, TrivialOrderNeedsFlag) {
  auto F = CyclotomicField::make(1);
  Net<Cyclo> net;
  net.classes = {{ln(F, 1, 0, 0)}, {ln(F, 0, 1, 0)}, {ln(F, 1, 1, 0)}};
  auto rep = verify_net(net);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(count_matching(rep.violations, "m > 1"), 1);

  net.allow_trivial = true;
  rep = verify_net(net);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.m, 1);
  EXPECT_EQ(rep.r, 3);
}

TEST(VerifyNet, WithinClassMeetOnNetPointWarns) {
  auto F = CyclotomicField::make(1);
  Net<Cyclo> net;
  net.classes = {{ln(F, 1, 0, 0), ln(F, 0, 1, 0)},
                 {ln(F, 1, 1, 0), ln(F, 0, 0, 1)},
                 {ln(F, 1, -1, 0), ln(F, 1, 2, 0)}};
  auto rep = verify_net(net);
  EXPECT_FALSE(rep.ok);
  EXPECT_GE(count_matching(rep.warnings, "class 1"), 1);
}

TEST(VerifyNet, NeedsThreeNonemptyClasses) {
  auto F = CyclotomicField::make(1);
  Net<Cyclo> two;
  two.classes = {{ln(F, 1, 0, 0)}, {ln(F, 0, 1, 0)}};
  EXPECT_THROW(verify_net(two), DomainError);

  auto net = braid_net();
  net.classes[2].clear();
  EXPECT_THROW(verify_net(net), DomainError);
}

namespace {

// Closed form of the feasibility table: k = 3 always; k = 4 needs m >= 3
// (r = 0) or m >= 4 (r = 1); k = 5 needs r = 0 and m >= 6.
bool euler_table(int k, int m, int r) {
  if (k == 3) return true;
  if (k == 4 && r == 0) return m >= 3;
  if (k == 4 && r == 1) return m >= 4;
  if (k == 5 && r == 0) return m >= 6;
  return false;
}

}  // namespace

TEST(Euler, MatchesClosedTable) {
  for (int k = 3; k <= 10; ++k)
    for (int m = 2; m <= 50; ++m)
      for (int r = 0; r <= 2; ++r)
        EXPECT_EQ(euler_feasible(k, m, r).feasible, euler_table(k, m, r))
            << "k=" << k << " m=" << m << " r=" << r;
}

TEST(Euler, BoundaryValues) {
  auto rep = euler_feasible(5, 6, 0);
  EXPECT_TRUE(rep.feasible);
  EXPECT_EQ(rep.lhs, rep.rhs);  // k = 5 meets the bound exactly at m = 6
  EXPECT_FALSE(euler_feasible(5, 5, 0).feasible);
  EXPECT_FALSE(euler_feasible(4, 3, 1).feasible);
  EXPECT_TRUE(euler_feasible(4, 4, 1).feasible);
  EXPECT_FALSE(euler_feasible(4, 100, 2).feasible);
  EXPECT_EQ(euler_feasible(4, 100, 2).rhs, Rational(398, 100));
}

TEST(Euler, RejectsOutOfRange) {
  EXPECT_THROW(euler_feasible(2, 5, 0), DomainError);
  EXPECT_THROW(euler_feasible(3, 1, 0), DomainError);
  EXPECT_THROW(euler_feasible(3, 5, -1), DomainError);
  EXPECT_THROW(euler_feasible(3, 5, 4), DomainError);
}

TEST(SplitPencil, PencilNets) {
  // x^m - y^m, x^m - z^m, y^m - z^m satisfy g1 - g2 + g3 = 0.
  EXPECT_TRUE(verify_split_pencil(pencil_net(2)));
  EXPECT_TRUE(verify_split_pencil(pencil_net(5)));
}

TEST(SplitPencil, Braid) { EXPECT_TRUE(verify_split_pencil(braid_net())); }

TEST(SplitPencil, HessianAllFourClasses) {
  // All four triangles lie in the pencil of x^3 + y^3 + z^3 and xyz.
  EXPECT_TRUE(verify_split_pencil(hessian_net()));
}

TEST(SplitPencil, PerturbedBraidFails) {
  Net<CD> net;
  auto l = [](double a, double b, double c) { return make_line(CD(a), CD(b), CD(c)); };
  net.classes = {{l(1, 0, 0), l(0, 1, -1)},
                 {l(0, 1, 0), l(1, 0, -1)},
                 {l(0, 0, 1), l(1, -1.001, 0)}};
  EXPECT_FALSE(verify_split_pencil(net));
}

TEST(SplitPencil, InvariantUnderLineRescaling) {
  auto F = CyclotomicField::make(3);
  auto net = pencil_net(3);
  Net<Cyclo> scaled = net;
  Cyclo w = Cyclo::zeta(F, 1);
  Cyclo seven(F, Rational(7));
  for (auto& cls : scaled.classes)
    for (auto& line : cls) line = make_line(w * line.c[0], w * line.c[1], w * line.c[2]);
  scaled.classes[1][0] =
      make_line(seven * net.classes[1][0].c[0], seven * net.classes[1][0].c[1],
                seven * net.classes[1][0].c[2]);
  EXPECT_EQ(verify_split_pencil(net), verify_split_pencil(scaled));
  EXPECT_TRUE(verify_split_pencil(scaled));
}

TEST(SplitPencil, RejectsBrokenShape) {
  auto net = braid_net();
  net.classes[0].erase(net.classes[0].begin());
  EXPECT_THROW(verify_split_pencil(net), DomainError);
}
