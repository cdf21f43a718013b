#include <gtest/gtest.h>

#include <array>
#include <vector>

#include "planet/construct.hpp"
#include "planet/errors.hpp"
#include "planet/quasigroup.hpp"

using namespace planet;

namespace {

LatinSquare square_from(std::vector<std::vector<int>> t) {
  LatinSquare ls;
  ls.m = static_cast<int>(t.size());
  ls.table = std::move(t);
  for (int i = 0; i < ls.m; ++i) {
    ls.row_labels.push_back(i);
    ls.col_labels.push_back(i);
    ls.sym_labels.push_back(i);
  }
  return ls;
}

Loop loop_from(std::vector<std::vector<int>> t) {
  Loop lp;
  lp.m = static_cast<int>(t.size());
  lp.table = std::move(t);
  return lp;
}

std::vector<std::vector<int>> cyclic_table(int m) {
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = (i + j) % m;
  return t;
}

// Z_2 + Z_4 on labels a*4 + b.
std::vector<std::vector<int>> z2z4_table() {
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) t[i][j] = ((i / 4 + j / 4) % 2) * 4 + (i % 4 + j % 4) % 4;
  return t;
}

// Symmetric group on three letters, composing left factor after right.
std::vector<std::vector<int>> s3_table() {
  const std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = index_of(c);
    }
  return t;
}

// The smallest loop that is not a group.
std::vector<std::vector<int>> nonassociative5() {
  return {{0, 1, 2, 3, 4},
          {1, 0, 3, 4, 2},
          {2, 3, 4, 0, 1},
          {3, 4, 1, 2, 0},
          {4, 2, 0, 1, 3}};
}

}  // namespace

TEST(Latin, BraidTable) {
  auto ls = latin_from_net(braid_net());
  ASSERT_EQ(ls.m, 2);
  std::vector<std::vector<int>> expect = {{1, 0}, {0, 1}};
  EXPECT_EQ(ls.table, expect);
}

TEST(Latin, PencilDifferenceFormula) {
  for (int m : {3, 5}) {
    auto ls = latin_from_net(pencil_net(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        EXPECT_EQ(ls.table[i][j], ((j - i) % m + m) % m) << "m=" << m;
  }
}

TEST(Latin, PencilApproxBackend) {
  auto ls = latin_from_net(pencil_net_approx(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_EQ(ls.table[i][j], ((j - i) % 5 + 5) % 5);
}

TEST(Latin, RowsAndColumnsArePermutations) {
  for (int m : {2, 3, 4, 5}) {
    auto ls = latin_from_net(pencil_net(m));
    EXPECT_NO_THROW(normalize_to_loop(ls, 0, 0)) << "m=" << m;  // validates en route
  }
}

TEST(Latin, OrderingsRelabelTable) {
  NetOrderings ord;
  ord.rows = {1, 2, 0};
  auto ls = latin_from_net(pencil_net(3), ord);
  EXPECT_EQ(ls.row_labels, ord.rows);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(ls.table[i][j], ((j - ord.rows[i]) % 3 + 3) % 3);

  NetOrderings symord;
  symord.syms = {2, 0, 1};
  auto ls2 = latin_from_net(pencil_net(3), symord);
  // Symbol s sits at position p with syms[p] = s.
  std::vector<int> pos = {1, 2, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(ls2.table[i][j], pos[((j - i) % 3 + 3) % 3]);
}

TEST(Latin, RejectsUnsuitableNets) {
  auto broken = braid_net();
  broken.classes[0].erase(broken.classes[0].begin());
  EXPECT_THROW(latin_from_net(broken), DomainError);
  EXPECT_THROW(latin_from_net(hessian_net()), DomainError);  // four classes
}

TEST(LoopNorm, BraidBecomesCyclicTwo) {
  auto lp = normalize_to_loop(latin_from_net(braid_net()), 0, 0);
  std::vector<std::vector<int>> expect = {{0, 1}, {1, 0}};
  EXPECT_EQ(lp.table, expect);
}

TEST(LoopNorm, GroupTableAnyBase) {
  LatinSquare ls = square_from(cyclic_table(5));
  for (int r0 = 0; r0 < 5; ++r0)
    for (int c0 = 0; c0 < 5; ++c0) {
      Loop lp = normalize_to_loop(ls, r0, c0);
      for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(lp.table[0][i], i);
        EXPECT_EQ(lp.table[i][0], i);
      }
      auto id = group_identify(lp);
      EXPECT_EQ(id.verdict, GroupVerdict::abelian_group);
      EXPECT_EQ(id.invariant_factors, std::vector<int>{5});
    }
}

TEST(LoopNorm, StructuralBorderOnly) {
  Loop lp = normalize_to_loop(square_from(nonassociative5()), 2, 3);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(lp.table[0][i], i);
    EXPECT_EQ(lp.table[i][0], i);
  }
}

TEST(LoopNorm, RejectsBadInput) {
  LatinSquare bad = square_from({{0, 1}, {0, 1}});
  EXPECT_THROW(normalize_to_loop(bad, 0, 0), DomainError);
  LatinSquare ok = square_from(cyclic_table(2));
  EXPECT_THROW(normalize_to_loop(ok, 2, 0), DomainError);
}

TEST(Group, PencilRealizesCyclic) {
  for (int m : {4, 12}) {
    auto id = group_identify(normalize_to_loop(latin_from_net(pencil_net(m)), 0, 0));
    EXPECT_EQ(id.verdict, GroupVerdict::abelian_group);
    EXPECT_EQ(id.invariant_factors, std::vector<int>{m}) << "m=" << m;
  }
}

TEST(Group, KleinFour) {
  auto id = group_identify(loop_from({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}));
  EXPECT_EQ(id.verdict, GroupVerdict::abelian_group);
  EXPECT_EQ(id.invariant_factors, (std::vector<int>{2, 2}));
}

TEST(Group, TwoByFour) {
  auto id = group_identify(loop_from(z2z4_table()));
  EXPECT_EQ(id.verdict, GroupVerdict::abelian_group);
  EXPECT_EQ(id.invariant_factors, (std::vector<int>{2, 4}));
}

TEST(Group, SmallestNonassociativeLoop) {
  auto id = group_identify(loop_from(nonassociative5()));
  EXPECT_EQ(id.verdict, GroupVerdict::not_a_group);
}

TEST(Group, SymmetricGroupIsNonabelian) {
  auto id = group_identify(loop_from(s3_table()));
  EXPECT_EQ(id.verdict, GroupVerdict::nonabelian_group);
  EXPECT_TRUE(id.invariant_factors.empty());
}

TEST(Group, VerdictInvariantUnderBaseChoice) {
  LatinSquare six = square_from(cyclic_table(6));
  for (int r0 = 0; r0 < 6; ++r0)
    for (int c0 = 0; c0 < 6; ++c0) {
      auto id = group_identify(normalize_to_loop(six, r0, c0));
      EXPECT_EQ(id.invariant_factors, std::vector<int>{6});
    }
  LatinSquare mixed = square_from(z2z4_table());
  for (int r0 = 0; r0 < 8; ++r0)
    for (int c0 = 0; c0 < 8; ++c0) {
      auto id = group_identify(normalize_to_loop(mixed, r0, c0));
      EXPECT_EQ(id.invariant_factors, (std::vector<int>{2, 4}));
    }
}

TEST(Group, VerdictInvariantUnderAutomorphismRelabel) {
  // x -> 5x on Z_6, applied to rows, columns, and symbols at once.
  auto t = cyclic_table(6);
  std::vector<int> sigma = {0, 5, 4, 3, 2, 1};
  std::vector<std::vector<int>> t2(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) t2[sigma[i]][sigma[j]] = sigma[t[i][j]];
  auto id = group_identify(normalize_to_loop(square_from(t2), 0, 0));
  EXPECT_EQ(id.invariant_factors, std::vector<int>{6});

  // Generator swap on the Klein table.
  std::vector<std::vector<int>> k = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<int> tau = {0, 2, 1, 3};
  std::vector<std::vector<int>> k2(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) k2[tau[i]][tau[j]] = tau[k[i][j]];
  auto id2 = group_identify(normalize_to_loop(square_from(k2), 0, 0));
  EXPECT_EQ(id2.invariant_factors, (std::vector<int>{2, 2}));
}

TEST(Cosets, PencilSixBySubgroupOfTwo) {
  auto net = pencil_net(6);
  auto ls = latin_from_net(net);
  auto subs = coset_subnets(net, ls, {0, 3});
  ASSERT_EQ(subs.size(), 9u);
  for (const auto& sub : subs) {
    auto rep = verify_net(sub);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.m, 2);
  }
}

TEST(Cosets, PencilSixBySubgroupOfThree) {
  auto net = pencil_net(6);
  auto subs = coset_subnets(net, latin_from_net(net), {0, 2, 4});
  ASSERT_EQ(subs.size(), 4u);
  for (const auto& sub : subs) {
    auto rep = verify_net(sub);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.m, 3);
  }
}

TEST(Cosets, PencilFourBySubgroupOfTwo) {
  auto net = pencil_net(4);
  auto subs = coset_subnets(net, latin_from_net(net), {0, 2});
  ASSERT_EQ(subs.size(), 4u);
  for (const auto& sub : subs) {
    auto rep = verify_net(sub);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.m, 2);
  }
}

TEST(Cosets, FullSubgroupReturnsWholeNet) {
  auto net = pencil_net(4);
  auto subs = coset_subnets(net, latin_from_net(net), {0, 1, 2, 3});
  ASSERT_EQ(subs.size(), 1u);
  auto rep = verify_net(subs[0]);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.m, 4);
}

TEST(Cosets, TrivialSubgroupGivesPointwiseSlices) {
  auto net = braid_net();
  auto subs = coset_subnets(net, latin_from_net(net), {0});
  ASSERT_EQ(subs.size(), 4u);
  for (const auto& sub : subs) {
    auto rep = verify_net(sub);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.m, 1);
  }
}

TEST(Cosets, RejectsBadSubgroups) {
  auto net = pencil_net(6);
  auto ls = latin_from_net(net);
  EXPECT_THROW(coset_subnets(net, ls, {0, 2}), DomainError);     // not closed
  EXPECT_THROW(coset_subnets(net, ls, {1, 4}), DomainError);     // no identity
  EXPECT_THROW(coset_subnets(net, ls, {0, 3, 3}), DomainError);  // duplicate
  EXPECT_THROW(coset_subnets(net, ls, {0, 9}), DomainError);     // out of range
}
