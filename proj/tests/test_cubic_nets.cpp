#include <gtest/gtest.h>

#include <complex>
#include <string>
#include <vector>

#include "planet/construct.hpp"
#include "planet/cyclotomic.hpp"
#include "planet/errors.hpp"
#include "planet/net.hpp"
#include "planet/projective.hpp"
#include "planet/quasigroup.hpp"

using namespace planet;

namespace {

template <class S>
std::vector<int> net_factors(const Net<S>& net) {
  GroupId id = group_identify(normalize_to_loop(latin_from_net(net), 0, 0));
  EXPECT_EQ(id.verdict, GroupVerdict::abelian_group);
  return id.invariant_factors;
}

template <class S>
NetReport expect_verified(const Net<S>& net, int m, int r) {
  NetReport rep = verify_net(net);
  EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_EQ(rep.k, 3);
  EXPECT_EQ(rep.m, m);
  EXPECT_EQ(rep.r, r);
  return rep;
}

}  // namespace

TEST(TorusNet, VerifiedNetsAtTheStandardSizes) {
  const int pairs[6][2] = {{1, 5}, {1, 12}, {2, 2}, {2, 4}, {3, 3}, {2, 10}};
  for (auto [m1, m2] : pairs) {
    Net<CD> net = torus_net(m1, m2);
    expect_verified(net, m1 * m2, 0);
    for (const auto& cls : net.classes)
      EXPECT_EQ(class_profile(cls).shape,
                m1 * m2 == 2 ? ClassShape::pencil : ClassShape::general_position);
  }
}

TEST(TorusNet, MultipliesLikeTheExpectedGroup) {
  EXPECT_EQ(net_factors(torus_net(1, 5)), (std::vector<int>{5}));
  EXPECT_EQ(net_factors(torus_net(1, 12)), (std::vector<int>{12}));
  EXPECT_EQ(net_factors(torus_net(2, 2)), (std::vector<int>{2, 2}));
  EXPECT_EQ(net_factors(torus_net(2, 4)), (std::vector<int>{2, 4}));
  EXPECT_EQ(net_factors(torus_net(3, 3)), (std::vector<int>{3, 3}));
  EXPECT_EQ(net_factors(torus_net(2, 10)), (std::vector<int>{2, 10}));
}

TEST(TorusNet, AcceptsCustomModulusAndOffsets) {
  CD tau{-0.31, 0.77};
  Net<CD> net = torus_net(2, 4, tau, CD{0.031, 0.0}, tau * 0.017 + CD{0.011, 0.0});
  expect_verified(net, 8, 0);
  EXPECT_EQ(net_factors(net), (std::vector<int>{2, 4}));
}

TEST(TorusNet, RejectsOffsetsInACommonCoset) {
  EXPECT_THROW(torus_net(2, 2, default_tau, CD{0.03, 0.0}, CD{0.03, 0.0}), DomainError);
  // The offsets differ by the subgroup element 1/2.
  EXPECT_THROW(torus_net(1, 2, default_tau, CD{0.1, 0.0}, CD{0.6, 0.0}), DomainError);
  // Valid pairwise, but the implied third offset -a-b falls in the coset
  // of the first: -2a - b = -1/2.
  EXPECT_THROW(torus_net(1, 2, default_tau, CD{0.1, 0.0}, CD{0.3, 0.0}), DomainError);
}

TEST(TorusNet, RejectsBadFactorPairs) {
  EXPECT_THROW(torus_net(2, 3), DomainError);
  EXPECT_THROW(torus_net(0, 4), DomainError);
  EXPECT_THROW(torus_net(-2, 4), DomainError);
  EXPECT_THROW(torus_net(1, 1), DomainError);
  EXPECT_THROW(torus_net(1, 5, CD{0.2, -1.0}), DomainError);
}

TEST(TorusNet, FactorListFormMatchesThePairForm) {
  Net<CD> a = torus_net(std::vector<int>{4});
  Net<CD> b = torus_net(1, 4);
  ASSERT_EQ(a.classes.size(), b.classes.size());
  for (size_t t = 0; t < a.classes.size(); ++t) {
    ASSERT_EQ(a.classes[t].size(), b.classes[t].size());
    for (size_t i = 0; i < a.classes[t].size(); ++i)
      EXPECT_TRUE(lines_equal(a.classes[t][i], b.classes[t][i]));
  }
  // Trivial factors are dropped before counting.
  EXPECT_EQ(net_factors(torus_net(std::vector<int>{1, 2, 2})), (std::vector<int>{2, 2}));
}

TEST(TorusNet, RejectsThreeInvariantFactors) {
  for (const auto& f : {std::vector<int>{2, 2, 2}, std::vector<int>{2, 4, 8},
                        std::vector<int>{1, 3, 3, 3}}) {
    try {
      torus_net(f);
      FAIL() << "expected a rejection for " << f.size() << " factors";
    } catch (const DomainError& e) {
      EXPECT_NE(std::string(e.what()).find("at most two invariant factors"),
                std::string::npos);
    }
  }
  EXPECT_THROW(torus_net(std::vector<int>{}), DomainError);
  EXPECT_THROW(torus_net(std::vector<int>{1, 1}), DomainError);
  EXPECT_THROW(torus_net(std::vector<int>{0, 2}), DomainError);
}

TEST(SingularCubicNet, VerifiedNetsInTheMultiplicativeCases) {
  for (int m : {2, 3, 4, 5, 6}) {
    expect_verified(singular_cubic_net_approx(SingularCase::nodal, m), m,
                    m == 2 ? 3 : 0);
    expect_verified(singular_cubic_net_approx(SingularCase::conic_transverse, m), m,
                    m == 2 ? 3 : 1);
    expect_verified(singular_cubic_net_approx(SingularCase::triangle, m), m, 3);
  }
}

TEST(SingularCubicNet, ClassShapesFollowTheComponents) {
  Net<CD> nodal = singular_cubic_net_approx(SingularCase::nodal, 5);
  for (const auto& cls : nodal.classes)
    EXPECT_EQ(class_profile(cls).shape, ClassShape::general_position);

  Net<CD> conic = singular_cubic_net_approx(SingularCase::conic_transverse, 5);
  EXPECT_EQ(class_profile(conic.classes[0]).shape, ClassShape::general_position);
  EXPECT_EQ(class_profile(conic.classes[1]).shape, ClassShape::general_position);
  auto prof = class_profile(conic.classes[2]);
  ASSERT_EQ(prof.shape, ClassShape::pencil);
  EXPECT_TRUE(points_equal(*prof.base, make_point(CD{0}, CD{0}, CD{1})));

  Net<CD> tri = singular_cubic_net_approx(SingularCase::triangle, 4);
  Point<CD> corners[3] = {make_point(CD{1}, CD{0}, CD{0}), make_point(CD{0}, CD{1}, CD{0}),
                          make_point(CD{0}, CD{0}, CD{1})};
  for (int t = 0; t < 3; ++t) {
    auto p = class_profile(tri.classes[t]);
    ASSERT_EQ(p.shape, ClassShape::pencil);
    EXPECT_TRUE(points_equal(*p.base, corners[t]));
  }
}

TEST(SingularCubicNet, ExactNetsVerify) {
  expect_verified(singular_cubic_net(SingularCase::nodal, 3), 3, 0);
  expect_verified(singular_cubic_net(SingularCase::conic_transverse, 4), 4, 1);
  expect_verified(singular_cubic_net(SingularCase::triangle, 3), 3, 3);
  // A caller-supplied field works as long as m divides the conductor.
  expect_verified(singular_cubic_net(SingularCase::nodal, 3, CyclotomicField::make(12)), 3, 0);
}

TEST(SingularCubicNet, MultipliesLikeTheCyclicGroup) {
  EXPECT_EQ(net_factors(singular_cubic_net_approx(SingularCase::nodal, 6)),
            (std::vector<int>{6}));
  EXPECT_EQ(net_factors(singular_cubic_net_approx(SingularCase::conic_transverse, 4)),
            (std::vector<int>{4}));
  EXPECT_EQ(net_factors(singular_cubic_net_approx(SingularCase::triangle, 5)),
            (std::vector<int>{5}));
}

TEST(SingularCubicNet, RejectsAdditiveCases) {
  const SingularCase additive[3] = {SingularCase::cuspidal, SingularCase::conic_tangent,
                                    SingularCase::concurrent};
  for (SingularCase c : additive) {
    EXPECT_THROW(singular_cubic_net(c, 2), DomainError);
    EXPECT_THROW(singular_cubic_net_approx(c, 5), DomainError);
    try {
      singular_cubic_net_approx(c, 2);
      FAIL() << "expected a rejection for " << singular_case_name(c);
    } catch (const DomainError& e) {
      EXPECT_NE(std::string(e.what()).find("no finite subgroup"), std::string::npos);
    }
  }
  EXPECT_THROW(singular_cubic_net(SingularCase::nodal, 1), DomainError);
  EXPECT_THROW(singular_cubic_net_approx(SingularCase::triangle, 0), DomainError);
}

TEST(SingularCubicNet, RejectsUnsuitableFields) {
  EXPECT_THROW(singular_cubic_net(SingularCase::nodal, 3, CyclotomicField::make(4)),
               DomainError);
  // Conductor 3 admits the cube roots but not the fourth root the conic
  // parametrization needs.
  EXPECT_THROW(singular_cubic_net(SingularCase::conic_transverse, 3, CyclotomicField::make(3)),
               DomainError);
  EXPECT_NO_THROW(singular_cubic_net(SingularCase::conic_transverse, 3, CyclotomicField::make(12)));
}
