#include <gtest/gtest.h>

#include <complex>

#include "planet/cyclotomic.hpp"
#include "planet/errors.hpp"
#include "planet/projective.hpp"
#include "planet/random.hpp"
#include "planet/selfcheck.hpp"

using namespace planet;

namespace {

Cyclo cy(const FieldPtr& f, long v) { return Cyclo(f, Rational(v)); }

Point<Cyclo> pt(const FieldPtr& f, long x, long y, long z) {
  return make_point(cy(f, x), cy(f, y), cy(f, z));
}
Line<Cyclo> ln(const FieldPtr& f, long x, long y, long z) {
  return make_line(cy(f, x), cy(f, y), cy(f, z));
}

Point<CD> ptc(double x, double y, double z) {
  return make_point(CD{x, 0}, CD{y, 0}, CD{z, 0});
}
Line<CD> lnc(double x, double y, double z) {
  return make_line(CD{x, 0}, CD{y, 0}, CD{z, 0});
}

}  // namespace

TEST(Normalize, ExactLastNonzeroBecomesOne) {
  auto F = CyclotomicField::make(1);
  Point<Cyclo> p = pt(F, 2, 4, 2);
  EXPECT_EQ(p.c[0].rational_part(), Rational(1));
  EXPECT_EQ(p.c[1].rational_part(), Rational(2));
  EXPECT_EQ(p.c[2].rational_part(), Rational(1));

  Point<Cyclo> q = pt(F, 3, 0, 0);
  EXPECT_EQ(q.c[0].rational_part(), Rational(1));
  EXPECT_TRUE(q.c[1].is_zero());
  EXPECT_TRUE(q.c[2].is_zero());

  EXPECT_THROW(pt(F, 0, 0, 0), DegenerateInputError);
}

TEST(Normalize, ApproxLargestModulusBecomesOne) {
  Point<CD> p = ptc(0.3, -0.6, 0.3);
  EXPECT_NEAR(std::abs(p.c[1] - CD{1.0, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.c[0] - CD{-0.5, 0.0}), 0.0, 1e-15);
  EXPECT_THROW(ptc(0, 0, 0), DegenerateInputError);
}

TEST(Equality, ScaleInvariant) {
  auto F3 = CyclotomicField::make(3);
  Cyclo z = Cyclo::zeta(F3, 1);
  Point<Cyclo> p = make_point(cy(F3, 1), z, cy(F3, 2));
  Point<Cyclo> q = make_point(cy(F3, 1) * z, z * z, cy(F3, 2) * z);
  EXPECT_TRUE(points_equal(p, q));
  EXPECT_FALSE(points_equal(p, pt(F3, 1, 1, 2)));

  // Approx: equality must survive an arbitrary complex rescale.
  CD s{0.3, -0.7};
  Point<CD> a = make_point(CD{1, 0}, CD{0.25, 0.5}, CD{-2, 1});
  Point<CD> b = make_point(CD{1, 0} * s, CD{0.25, 0.5} * s, CD{-2, 1} * s);
  EXPECT_TRUE(points_equal(a, b));
  EXPECT_FALSE(points_equal(a, ptc(1, 0.25, -2)));
}

TEST(Incidence, BasicExamples) {
  auto F = CyclotomicField::make(1);
  EXPECT_FALSE(incident(pt(F, 0, 0, 1), ln(F, 0, 0, 1)));
  EXPECT_TRUE(incident(pt(F, 1, 1, 1), ln(F, 1, -1, 0)));

  EXPECT_FALSE(incident(ptc(0, 0, 1), lnc(0, 0, 1)));
  EXPECT_TRUE(incident(ptc(1, 1, 1), lnc(1, -1, 0)));
}

TEST(Incidence, RootOfUnityCoordinates) {
  auto F3 = CyclotomicField::make(3);
  Cyclo z = Cyclo::zeta(F3, 1);
  // With z a primitive cube root of unity, (1 : z : 0) lies on the line
  // z^2 x - z y = 0: the pairing evaluates to z^2 - z*z = 0.
  Point<Cyclo> p = make_point(cy(F3, 1), z, cy(F3, 0));
  Line<Cyclo> l = make_line(z * z, -z, cy(F3, 0));
  EXPECT_TRUE(incident(p, l));
  EXPECT_FALSE(incident(p, make_line(z, -z, cy(F3, 0))));
}

TEST(JoinMeet, BasicExamples) {
  auto F = CyclotomicField::make(1);
  // x = 0 and y = 0 meet at (0:0:1).
  EXPECT_TRUE(points_equal(meet(ln(F, 1, 0, 0), ln(F, 0, 1, 0)), pt(F, 0, 0, 1)));
  // The line through (1:0:0) and (0:1:0) is z = 0.
  EXPECT_TRUE(lines_equal(join(pt(F, 1, 0, 0), pt(F, 0, 1, 0)), ln(F, 0, 0, 1)));
  // x - y = 0 and x - z = 0 meet at (1:1:1).
  EXPECT_TRUE(points_equal(meet(ln(F, 1, -1, 0), ln(F, 1, 0, -1)), pt(F, 1, 1, 1)));

  EXPECT_THROW(join(pt(F, 1, 2, 3), pt(F, 2, 4, 6)), DegenerateInputError);
  EXPECT_THROW(meet(ln(F, 1, -1, 0), ln(F, -2, 2, 0)), DegenerateInputError);
}

TEST(JoinMeet, AdjunctionRandomized) {
  Rng rng(101);
  CD cex{1.0, 0.0};
  for (int trial = 0; trial < 200; ++trial) {
    Point<CD> p = random_point(rng, cex);
    Point<CD> q = random_point(rng, cex);
    if (points_equal(p, q)) continue;
    Line<CD> l = join(p, q);
    EXPECT_TRUE(incident(p, l));
    EXPECT_TRUE(incident(q, l));
  }

  auto F3 = CyclotomicField::make(3);
  Cyclo ex = Cyclo::zeta(F3, 1);
  for (int trial = 0; trial < 60; ++trial) {
    Line<Cyclo> l = random_line(rng, ex);
    Line<Cyclo> m = random_line(rng, ex);
    if (lines_equal(l, m)) continue;
    Point<Cyclo> p = meet(l, m);
    EXPECT_TRUE(incident(p, l));
    EXPECT_TRUE(incident(p, m));
  }
}

TEST(Duality, InvolutionManyRandomSamples) {
  Rng rng(2024);
  CD cex{1.0, 0.0};
  for (int trial = 0; trial < 10000; ++trial) {
    Point<CD> p = random_point(rng, cex);
    EXPECT_TRUE(points_equal(dual(dual(p)), p));
    Line<CD> l = random_line(rng, cex);
    EXPECT_TRUE(lines_equal(dual(dual(l)), l));
  }

  auto F3 = CyclotomicField::make(3);
  Cyclo ex = Cyclo::zeta(F3, 1);
  for (int trial = 0; trial < 300; ++trial) {
    Point<Cyclo> p = random_point(rng, ex);
    EXPECT_TRUE(points_equal(dual(dual(p)), p));
  }
}

TEST(Duality, IncidenceCompatibility) {
  Rng rng(5);
  auto F5 = CyclotomicField::make(5);
  Cyclo ex = Cyclo::zeta(F5, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Point<Cyclo> p = random_point(rng, ex);
    Line<Cyclo> l = random_line(rng, ex);
    EXPECT_EQ(incident(p, l), incident(dual(l), dual(p)));
    // Force some true incidences too: project p onto l via a join trick.
    Point<Cyclo> q = random_point(rng, ex);
    if (points_equal(p, q) || incident(q, l)) continue;
    Line<Cyclo> through = join(p, q);
    if (lines_equal(through, l)) continue;
    Point<Cyclo> on = meet(through, l);
    EXPECT_TRUE(incident(on, l));
    EXPECT_TRUE(incident(dual(l), dual(on)));
  }
}

TEST(Duality, PencilClassDualsAreCollinear) {
  // Duals of the lines x - zeta^i y = 0 are (1 : -zeta^i : 0); they all lie
  // on the line z = 0, which is the dual of the pencil's base point flipped
  // into the dual plane.
  for (int m : {3, 9}) {
    auto F = CyclotomicField::make(m);
    Line<Cyclo> z0 = make_line(cy(F, 0), cy(F, 0), cy(F, 1));
    for (int i = 0; i < m; ++i) {
      Line<Cyclo> li = make_line(cy(F, 1), -Cyclo::zeta(F, i), cy(F, 0));
      Point<Cyclo> d = dual(li);
      EXPECT_TRUE(incident(d, z0)) << "m=" << m << " i=" << i;
      EXPECT_TRUE(points_equal(d, make_point(cy(F, 1), -Cyclo::zeta(F, i), cy(F, 0))));
    }
  }
}

TEST(CollinearConcurrent, BasicExamples) {
  auto F = CyclotomicField::make(1);
  EXPECT_TRUE(collinear(pt(F, 1, 0, 0), pt(F, 0, 1, 0), pt(F, 1, 1, 0)));
  EXPECT_FALSE(collinear(pt(F, 1, 0, 0), pt(F, 0, 1, 0), pt(F, 0, 0, 1)));
  EXPECT_TRUE(concurrent(ln(F, 1, 0, 0), ln(F, 0, 1, 0), ln(F, 1, 1, 0)));
  EXPECT_FALSE(concurrent(ln(F, 1, 0, 0), ln(F, 0, 1, 0), ln(F, 0, 0, 1)));

  EXPECT_TRUE(collinear(ptc(1, 0, 0), ptc(0, 1, 0), ptc(1, 1, 0)));
  EXPECT_FALSE(collinear(ptc(1, 0, 0), ptc(0, 1, 0), ptc(0, 0, 1)));
}

TEST(CrossRatio, ParameterConvention) {
  // On the line z = 0 with points (1 : t : 0) and (0:1:0) playing infinity,
  // cr(0, inf; 1, lambda) = lambda.
  auto eval = [](double lambda) {
    return cross_ratio(ptc(1, 0, 0), ptc(0, 1, 0), ptc(1, 1, 0), ptc(1, lambda, 0));
  };
  EXPECT_NEAR(std::abs(eval(5.0) - CD{5.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval(-1.0) - CD{-1.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval(2.0 / 3.0) - CD{2.0 / 3.0, 0.0}), 0.0, 1e-12);

  auto F3 = CyclotomicField::make(3);
  Cyclo z = Cyclo::zeta(F3, 1);
  Cyclo cr = cross_ratio(pt(F3, 1, 0, 0), pt(F3, 0, 1, 0), pt(F3, 1, 1, 0),
                         make_point(cy(F3, 1), z, cy(F3, 0)));
  EXPECT_EQ(cr, z);
}

TEST(CrossRatio, GenericLineParameterization) {
  // Same convention on a line in general position: p(t) = a + t*b.
  auto F = CyclotomicField::make(1);
  auto at = [&](const Rational& t) {
    Cyclo tt(F, t);
    return make_point(cy(F, 1) + tt * cy(F, 2), cy(F, 2) - tt, cy(F, 3) + tt);
  };
  Point<Cyclo> inf = pt(F, 2, -1, 1);  // the t -> infinity point
  Rational lambda(7, 5);
  Cyclo cr = cross_ratio(at(Rational(0)), inf, at(Rational(1)), at(lambda));
  EXPECT_TRUE(cr.is_rational());
  EXPECT_EQ(cr.rational_part(), lambda);
}

TEST(CrossRatio, ErrorCases) {
  auto F = CyclotomicField::make(1);
  Point<Cyclo> a = pt(F, 1, 0, 0);
  Point<Cyclo> b = pt(F, 0, 1, 0);
  Point<Cyclo> c = pt(F, 1, 1, 0);
  Point<Cyclo> d = pt(F, 1, 2, 0);
  Point<Cyclo> off = pt(F, 0, 0, 1);

  EXPECT_THROW(cross_ratio(a, a, c, d), DegenerateInputError);  // base pair collapsed
  EXPECT_THROW(cross_ratio(a, b, a, a), DomainError);           // only two distinct points
  EXPECT_THROW(cross_ratio(a, b, off, c), DomainError);         // not collinear
  EXPECT_THROW(cross_ratio(a, b, c, off), DomainError);
  // Three distinct points but the ratio is infinite (p3 = p1).
  EXPECT_THROW(cross_ratio(a, b, a, d), DegenerateInputError);
}

TEST(CrossRatio, PermutationIdentity) {
  // Swapping the two pairs inverts: cr(p2,p1;p3,p4) = 1/cr(p1,p2;p3,p4).
  Rng rng(99);
  CD cex{1.0, 0.0};
  int done = 0;
  while (done < 50) {
    try {
      Point<CD> p = random_point(rng, cex);
      Point<CD> q = random_point(rng, cex);
      if (points_equal(p, q)) continue;
      // Two more points on the line through p and q.
      CD s = random_scalar(rng, cex);
      CD t = random_scalar(rng, cex);
      Point<CD> r = make_point(p.c[0] + s * q.c[0], p.c[1] + s * q.c[1], p.c[2] + s * q.c[2]);
      Point<CD> w = make_point(p.c[0] + t * q.c[0], p.c[1] + t * q.c[1], p.c[2] + t * q.c[2]);
      CD cr1 = cross_ratio(p, q, r, w);
      CD cr2 = cross_ratio(q, p, r, w);
      if (std::abs(cr1) < 1e-3) continue;
      EXPECT_NEAR(std::abs(cr1 * cr2 - CD{1.0, 0.0}), 0.0, 1e-9);
      ++done;
    } catch (const DegenerateInputError&) {
    } catch (const DomainError&) {
    }
  }
}

TEST(Closure, NinePointConcurrencyApprox) {
  Rng rng(31337);
  CD cex{1.0, 0.0};
  auto rep = run_trials<CD>([](Rng& r, const CD& ex, const Tol& tol) {
    return nine_point_trial(r, ex, tol);
  }, rng, cex, 100);
  EXPECT_EQ(rep.completed, 100);
  EXPECT_EQ(rep.passed, rep.completed);
  EXPECT_LT(rep.max_residual, 1e-8);
}

TEST(Closure, NinePointConcurrencyExact) {
  Rng rng(4242);
  auto F1 = CyclotomicField::make(1);
  Cyclo ex1 = cy(F1, 1);
  auto rep1 = run_trials<Cyclo>([](Rng& r, const Cyclo& ex, const Tol& tol) {
    return nine_point_trial(r, ex, tol);
  }, rng, ex1, 30);
  EXPECT_EQ(rep1.completed, 30);
  EXPECT_EQ(rep1.passed, rep1.completed);
  EXPECT_EQ(rep1.max_residual, 0.0);  // identities hold exactly

  auto F3 = CyclotomicField::make(3);
  Cyclo ex3 = Cyclo::zeta(F3, 1);
  auto rep3 = run_trials<Cyclo>([](Rng& r, const Cyclo& ex, const Tol& tol) {
    return nine_point_trial(r, ex, tol);
  }, rng, ex3, 12);
  EXPECT_EQ(rep3.completed, 12);
  EXPECT_EQ(rep3.passed, rep3.completed);
}

TEST(Closure, QuadrangleHarmonicApprox) {
  Rng rng(8080);
  CD cex{1.0, 0.0};
  auto rep = run_trials<CD>([](Rng& r, const CD& ex, const Tol& tol) {
    return quadrangle_trial(r, ex, tol);
  }, rng, cex, 100);
  EXPECT_EQ(rep.completed, 100);
  EXPECT_EQ(rep.passed, rep.completed);
  EXPECT_LT(rep.max_residual, 1e-8);
}

TEST(Closure, QuadrangleHarmonicExact) {
  Rng rng(777);
  auto F1 = CyclotomicField::make(1);
  Cyclo ex = cy(F1, 1);
  auto rep = run_trials<Cyclo>([](Rng& r, const Cyclo& e, const Tol& tol) {
    return quadrangle_trial(r, e, tol);
  }, rng, ex, 30);
  EXPECT_EQ(rep.completed, 30);
  EXPECT_EQ(rep.passed, rep.completed);
  EXPECT_EQ(rep.max_residual, 0.0);
}

TEST(Residuals, ExactIncidencesReportZero) {
  auto F = CyclotomicField::make(1);
  EXPECT_EQ(collinearity_residual(pt(F, 1, 0, 0), pt(F, 0, 1, 0), pt(F, 1, 1, 0)), 0.0);
  EXPECT_GT(collinearity_residual(pt(F, 1, 0, 0), pt(F, 0, 1, 0), pt(F, 0, 0, 1)), 0.1);
  EXPECT_EQ(concurrency_residual(lnc(1, 0, 0), lnc(0, 1, 0), lnc(1, 1, 0)), 0.0);
}
