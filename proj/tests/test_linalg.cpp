#include <gtest/gtest.h>

#include "planet/cyclotomic.hpp"
#include "planet/linalg.hpp"
#include "planet/scalar.hpp"

using namespace planet;

namespace {

Mat<Cyclo> exact_mat(const FieldPtr& f, const std::vector<std::vector<long>>& rows) {
  Mat<Cyclo> m;
  for (const auto& r : rows) {
    Vec<Cyclo> row;
    for (long v : r) row.emplace_back(f, Rational(v));
    m.push_back(std::move(row));
  }
  return m;
}

Mat<CD> approx_mat(const std::vector<std::vector<double>>& rows) {
  Mat<CD> m;
  for (const auto& r : rows) {
    Vec<CD> row;
    for (double v : r) row.emplace_back(v, 0.0);
    m.push_back(std::move(row));
  }
  return m;
}

template <class S>
bool in_kernel(const Mat<S>& a, const Vec<S>& v, const Tol& tol = {}) {
  for (const auto& row : a) {
    S acc = scalar_traits<S>::zero_like(v[0]);
    for (size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
    if (!scalar_traits<S>::is_zero(acc, tol)) return false;
  }
  return true;
}

}  // namespace

TEST(Rank, ExactBasics) {
  auto F = CyclotomicField::make(1);
  EXPECT_EQ(mat_rank(exact_mat(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3);
  EXPECT_EQ(mat_rank(exact_mat(F, {{1, 2, 3}, {2, 4, 6}, {3, 6, 9}})), 1);
  EXPECT_EQ(mat_rank(exact_mat(F, {{0, 0}, {0, 0}})), 0);
  EXPECT_EQ(mat_rank(exact_mat(F, {{1, 2}, {3, 4}, {5, 6}})), 2);
}

TEST(Rank, ExactWithRootsOfUnity) {
  auto F3 = CyclotomicField::make(3);
  Cyclo z = Cyclo::zeta(F3, 1);
  Cyclo one(F3, Rational(1));
  // Rows (1, z), (z^2, 1): second is z^2 times the first, rank 1.
  Mat<Cyclo> m = {{one, z}, {z * z, z * z * z}};
  EXPECT_EQ(mat_rank(m), 1);
  Mat<Cyclo> m2 = {{one, z}, {z, one}};  // det = 1 - z^2 != 0
  EXPECT_EQ(mat_rank(m2), 2);
}

TEST(Rank, ApproxRelativeCutoff) {
  EXPECT_EQ(mat_rank(approx_mat({{1, 0}, {0, 1}})), 2);
  EXPECT_EQ(mat_rank(approx_mat({{1, 2}, {2, 4}})), 1);
  // A singular value at the 1e-12 level relative to 1 is treated as zero.
  EXPECT_EQ(mat_rank(approx_mat({{1, 0}, {0, 1e-12}})), 1);
  EXPECT_EQ(mat_rank(approx_mat({{1, 0}, {0, 1e-4}})), 2);
  // Scale invariance of the relative cutoff.
  EXPECT_EQ(mat_rank(approx_mat({{1e8, 0}, {0, 1e-4}})), 1);
}

TEST(Nullspace, ExactPlaneEquation) {
  auto F = CyclotomicField::make(1);
  Mat<Cyclo> a = exact_mat(F, {{1, 1, 1}});
  Mat<Cyclo> basis = mat_nullspace(a);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) EXPECT_TRUE(in_kernel(a, v));
}

TEST(Nullspace, ExactFullRankIsEmpty) {
  auto F = CyclotomicField::make(1);
  Mat<Cyclo> a = exact_mat(F, {{1, 0}, {0, 1}});
  EXPECT_TRUE(mat_nullspace(a).empty());
}

TEST(Nullspace, ExactPivotPattern) {
  auto F = CyclotomicField::make(1);
  // x2 free, x1 + 2 x3 = 0 style system with a column gap.
  Mat<Cyclo> a = exact_mat(F, {{1, 0, 2}, {0, 0, 0}});
  Mat<Cyclo> basis = mat_nullspace(a);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) EXPECT_TRUE(in_kernel(a, v));
}

TEST(Nullspace, ApproxMatchesDimension) {
  Mat<CD> a = approx_mat({{1, 1, 1}, {1, -1, 0}});
  Mat<CD> basis = mat_nullspace(a);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_TRUE(in_kernel(a, basis[0], Tol{1e-7, 1e-8, 1e-14}));

  Mat<CD> full = approx_mat({{2, 0}, {0, 3}});
  EXPECT_TRUE(mat_nullspace(full).empty());
}

TEST(Psd, SmallMatrices) {
  EXPECT_TRUE(psd_with_nullity({{2, 0}, {0, 3}}).psd);
  EXPECT_EQ(psd_with_nullity({{2, 0}, {0, 3}}).nullity, 0);

  auto ones = psd_with_nullity({{1, 1}, {1, 1}});
  EXPECT_TRUE(ones.psd);
  EXPECT_EQ(ones.nullity, 1);

  EXPECT_FALSE(psd_with_nullity({{1, 0}, {0, -1}}).psd);
  EXPECT_FALSE(psd_with_nullity({{0, 1}, {1, 0}}).psd);  // eigenvalues +-1

  auto zero = psd_with_nullity({{0, 0}, {0, 0}});
  EXPECT_TRUE(zero.psd);
  EXPECT_EQ(zero.nullity, 2);
}

TEST(Psd, PathLaplacian) {
  // Graph Laplacian of a path on 3 vertices: eigenvalues 0, 1, 3.
  auto rep = psd_with_nullity({{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}});
  EXPECT_TRUE(rep.psd);
  EXPECT_EQ(rep.nullity, 1);

  auto diag = psd_with_nullity({{0, 0, 0}, {0, 0, 0}, {0, 0, 5}});
  EXPECT_TRUE(diag.psd);
  EXPECT_EQ(diag.nullity, 2);
}

TEST(Psd, IndefiniteLarger) {
  // 4x4 with one negative eigenvalue hidden behind positive diagonal mass.
  auto rep = psd_with_nullity({{1, 2, 0, 0}, {2, 1, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 4}});
  EXPECT_FALSE(rep.psd);
}
