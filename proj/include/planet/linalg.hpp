#pragma once

// Rank / nullspace over either scalar backend (exact Gaussian elimination vs
// SVD with a relative singular-value cutoff), plus an exact integer
// positive-semidefiniteness test used by the resonance code.

#include <cassert>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "planet/rational.hpp"
#include "planet/scalar.hpp"

namespace planet {

template <class S>
using Vec = std::vector<S>;
template <class S>
using Mat = std::vector<Vec<S>>;  // row-major, rectangular

namespace detail {

inline Eigen::MatrixXcd to_eigen(const Mat<CD>& a) {
  Eigen::MatrixXcd m(a.size(), a.empty() ? 0 : a[0].size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = a[i][j];
  return m;
}

/// Gauss-Jordan over an exact field. Returns the pivot column of each pivot
/// row; `a` is reduced in place to (unscaled) row echelon form.
template <class S>
std::vector<int> echelon_exact(Mat<S>& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int sel = -1;
    for (int i = r; i < rows; ++i) {
      if (!a[i][col].is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    S inv = a[r][col].inverse();
    for (int j = col; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][col].is_zero()) continue;
      S f = a[i][col];
      for (int j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace detail

template <class S>
int mat_rank(const Mat<S>& a, const Tol& tol = {}) {
  if (a.empty() || a[0].empty()) return 0;
  if constexpr (scalar_traits<S>::is_exact) {
    Mat<S> work = a;
    return static_cast<int>(detail::echelon_exact(work).size());
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(a));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double cut = tol.rank * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cut) ++r;
    return r;
  }
}

/// Basis (as rows) of the right kernel {x : a x = 0}. The matrix must have at
/// least one row; a caller with no constraints already knows the answer.
template <class S>
Mat<S> mat_nullspace(const Mat<S>& a, const Tol& tol = {}) {
  assert(!a.empty() && !a[0].empty());
  const int cols = static_cast<int>(a[0].size());
  Mat<S> basis;
  if constexpr (scalar_traits<S>::is_exact) {
    Mat<S> work = a;
    std::vector<int> pivots = detail::echelon_exact(work);
    std::vector<int> pivot_row_of(cols, -1);
    for (size_t r = 0; r < pivots.size(); ++r) pivot_row_of[pivots[r]] = static_cast<int>(r);
    const S zero = scalar_traits<S>::zero_like(a[0][0]);
    const S one = scalar_traits<S>::one_like(a[0][0]);
    for (int free = 0; free < cols; ++free) {
      if (pivot_row_of[free] >= 0) continue;
      Vec<S> v(cols, zero);
      v[free] = one;
      for (int col = 0; col < cols; ++col) {
        int pr = pivot_row_of[col];
        if (pr >= 0) v[col] = -work[pr][free];
      }
      basis.push_back(std::move(v));
    }
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(a), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = sv.size() ? tol.rank * sv(0) : 0.0;
    for (int j = 0; j < cols; ++j) {
      bool in_kernel = j >= static_cast<int>(sv.size()) || sv(j) <= cut;
      if (!in_kernel) continue;
      Vec<S> v(cols);
      for (int i = 0; i < cols; ++i) v[i] = svd.matrixV()(i, j);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

/// Exact PSD test for a symmetric integer matrix via the characteristic
/// polynomial: with all-real spectrum, nonnegativity of every signed
/// coefficient (-1)^k c_k is equivalent to all eigenvalues >= 0, and the
/// multiplicity of the eigenvalue 0 is the number of trailing zero
/// coefficients.
struct PsdReport {
  bool psd = false;
  int nullity = 0;
};

inline PsdReport psd_with_nullity(const std::vector<std::vector<long long>>& m) {
  const int n = static_cast<int>(m.size());
  PsdReport rep;
  if (n == 0) {
    rep.psd = true;
    return rep;
  }
  using BMat = std::vector<std::vector<BigInt>>;
  BMat a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];

  // Faddeev-LeVerrier: c_k of det(tI - M) = t^n + c_1 t^(n-1) + ... + c_n.
  BMat b(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) b[i][i] = 1;
  std::vector<BigInt> c(n + 1);
  c[0] = 1;
  for (int k = 1; k <= n; ++k) {
    BMat ab(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (int j = 0; j < n; ++j) ab[i][j] += a[i][l] * b[l][j];
      }
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += ab[i][i];
    assert(tr % k == 0);  // the division in this scheme is always exact
    c[k] = -tr / k;
    b = ab;
    for (int i = 0; i < n; ++i) b[i][i] += c[k];
  }

  rep.psd = true;
  for (int k = 1; k <= n; ++k) {
    BigInt signed_ck = (k % 2 == 0) ? c[k] : -c[k];  // (-1)^k c_k
    if (signed_ck < 0) {
      rep.psd = false;
      break;
    }
  }
  int top = 0;  // largest k with c_k != 0
  for (int k = n; k >= 1; --k) {
    if (c[k] != 0) {
      top = k;
      break;
    }
  }
  rep.nullity = n - top;
  return rep;
}

}  // namespace planet
