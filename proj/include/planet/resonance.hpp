#pragma once

// Resonance-variety linear algebra for line arrangements: incidence matrix
// of marked points against lines, the integer matrix Q = J^t J - E with its
// block decomposition and affine-type verdicts, the class-constant sum-zero
// component attached to a net, and the dimension of first Orlik-Solomon
// cohomology H^1(A, a) in the projective convention (degree one is C^n
// modulo the all-ones vector, realized as the sum-zero slice).

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "planet/errors.hpp"
#include "planet/linalg.hpp"
#include "planet/net.hpp"
#include "planet/projective.hpp"
#include "planet/rational.hpp"
#include "planet/scalar.hpp"

namespace planet {

template <class S>
struct Flat {
  Point<S> point;
  std::vector<int> lines;  // indices of all lines through the point, ascending
};

template <class S>
struct Arrangement {
  std::vector<Line<S>> lines;
  std::vector<Flat<S>> flats;  // every rank-2 flat; each pair of lines lies in exactly one
};

/// Collects the intersection lattice of a set of pairwise distinct lines.
template <class S>
Arrangement<S> make_arrangement(std::vector<Line<S>> lines, const Tol& tol = {}) {
  const int n = static_cast<int>(lines.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (lines_equal(lines[i], lines[j], tol))
        throw DegenerateInputError("duplicate line in arrangement (indices " +
                                   std::to_string(i) + ", " + std::to_string(j) + ")");
  Arrangement<S> arr;
  arr.lines = std::move(lines);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Point<S> p = meet(arr.lines[i], arr.lines[j], tol);
      Flat<S>* home = nullptr;
      for (auto& fl : arr.flats)
        if (points_equal(fl.point, p, tol)) {
          home = &fl;
          break;
        }
      if (!home) {
        arr.flats.push_back({p, {i, j}});
        continue;
      }
      for (int idx : {i, j})
        if (std::find(home->lines.begin(), home->lines.end(), idx) == home->lines.end())
          home->lines.push_back(idx);
    }
  for (auto& fl : arr.flats) std::sort(fl.lines.begin(), fl.lines.end());
  return arr;
}

template <class S>
Arrangement<S> arrangement_from_net(const Net<S>& net, const Tol& tol = {}) {
  std::vector<Line<S>> lines;
  for (const auto& cls : net.classes)
    for (const auto& l : cls) lines.push_back(l);
  return make_arrangement(std::move(lines), tol);
}

/// J[i][j] = 1 exactly when point i lies on line j.
template <class S>
std::vector<std::vector<int>> incidence_matrix(const std::vector<Point<S>>& pts,
                                               const std::vector<Line<S>>& lines,
                                               const Tol& tol = {}) {
  std::vector<std::vector<int>> J(pts.size(), std::vector<int>(lines.size(), 0));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < lines.size(); ++j)
      if (incident(pts[i], lines[j], tol)) J[i][j] = 1;
  return J;
}

struct ResonanceBlock {
  std::vector<int> lines;
  bool affine = false;  // positive semidefinite with nullity >= 1
  int nullity = 0;      // meaningful when affine
};

struct ResonanceData {
  std::vector<std::vector<int>> J;
  std::vector<std::vector<long>> Q;  // J^t J - E
  std::vector<ResonanceBlock> blocks;
  int affine_count = 0;
  bool affine_cover = false;  // every point sees a line from some affine block
};

namespace detail {

// Positive semidefiniteness and nullity of a symmetric rational matrix by
// symmetric elimination. A PSD matrix with a zero diagonal entry has a zero
// row there, so once no positive pivot remains the leftover must vanish.
inline std::pair<bool, int> psd_with_nullity(std::vector<std::vector<Rational>> q) {
  const int n = static_cast<int>(q.size());
  std::vector<char> done(n, 0);
  int positive = 0;
  for (;;) {
    int piv = -1;
    for (int i = 0; i < n && piv < 0; ++i)
      if (!done[i] && q[i][i] != 0) piv = i;
    if (piv < 0) break;
    if (q[piv][piv] < 0) return {false, 0};
    ++positive;
    done[piv] = 1;
    for (int i = 0; i < n; ++i) {
      if (done[i] || q[i][piv] == 0) continue;
      Rational f = q[i][piv] / q[piv][piv];
      for (int j = 0; j < n; ++j)
        if (!done[j]) q[i][j] -= f * q[piv][j];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    for (int j = 0; j < n; ++j)
      if (!done[j] && q[i][j] != 0) return {false, 0};
  }
  return {true, n - positive};
}

}  // namespace detail

/// Q = J^t J - E, split into the connected blocks of its off-diagonal
/// support, with the affine verdict (PSD with nontrivial kernel) per block.
inline ResonanceData q_blocks(std::vector<std::vector<int>> J) {
  ResonanceData out;
  if (J.empty()) return out;
  const int n = static_cast<int>(J[0].size());
  for (const auto& row : J) {
    if (static_cast<int>(row.size()) != n) throw InputError("q_blocks needs a rectangular matrix");
    for (int v : row)
      if (v != 0 && v != 1) throw InputError("q_blocks needs a 0/1 matrix");
  }
  out.J = std::move(J);

  out.Q.assign(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long s = 0;
      for (const auto& row : out.J) s += static_cast<long>(row[i]) * row[j];
      out.Q[i][j] = s - 1;
    }

  std::vector<int> block_of(n, -1);
  for (int seed = 0; seed < n; ++seed) {
    if (block_of[seed] >= 0) continue;
    int id = static_cast<int>(out.blocks.size());
    std::vector<int> queue{seed};
    block_of[seed] = id;
    ResonanceBlock blk;
    while (!queue.empty()) {
      int i = queue.back();
      queue.pop_back();
      blk.lines.push_back(i);
      for (int j = 0; j < n; ++j)
        if (j != i && block_of[j] < 0 && out.Q[i][j] != 0) {
          block_of[j] = id;
          queue.push_back(j);
        }
    }
    std::sort(blk.lines.begin(), blk.lines.end());
    const int b = static_cast<int>(blk.lines.size());
    std::vector<std::vector<Rational>> sub(b, std::vector<Rational>(b));
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) sub[i][j] = Rational(out.Q[blk.lines[i]][blk.lines[j]]);
    auto [psd, nullity] = detail::psd_with_nullity(std::move(sub));
    blk.affine = psd && nullity >= 1;
    blk.nullity = psd ? nullity : 0;
    if (blk.affine) ++out.affine_count;
    out.blocks.push_back(std::move(blk));
  }

  std::vector<char> in_affine(n, 0);
  for (const auto& blk : out.blocks)
    if (blk.affine)
      for (int i : blk.lines) in_affine[i] = 1;
  out.affine_cover = true;
  for (const auto& row : out.J) {
    bool covered = false;
    for (int j = 0; j < n && !covered; ++j) covered = row[j] == 1 && in_affine[j];
    out.affine_cover = out.affine_cover && covered;
  }
  return out;
}

template <class S>
struct ComponentV {
  std::vector<std::vector<S>> basis;  // class-constant sum-zero vectors, class-grouped order
};

/// Basis of the class-constant sum-zero vectors of a verified net: the i-th
/// vector is +1 on class 0 and -1 on class i, in class-grouped coordinates.
template <class S>
ComponentV<S> essential_component(const Net<S>& net, const Tol& tol = {}) {
  NetReport rep = verify_net(net, tol);
  if (!rep.ok)
    throw DomainError("essential_component needs a verified net: " + rep.violations.front());
  const S& ex = net.classes[0][0].c[0];
  const S one = scalar_traits<S>::one_like(ex);
  const S zero = scalar_traits<S>::zero_like(ex);
  ComponentV<S> v;
  for (int i = 1; i < rep.k; ++i) {
    std::vector<S> x(static_cast<size_t>(rep.k) * rep.m, zero);
    for (int j = 0; j < rep.m; ++j) {
      x[j] = one;
      x[static_cast<size_t>(i) * rep.m + j] = zero - one;
    }
    v.basis.push_back(std::move(x));
  }
  return v;
}

/// dim H^1(A, a) for the Orlik-Solomon algebra of the arrangement in
/// degrees <= 2. Degree one is the sum-zero slice of C^n (the input is
/// reduced modulo the all-ones vector first); degree two has one basis
/// element per flat line beyond the first, and multiplication by a sends x
/// to the collection of A_P x_t - a_t X_P over flats P and lines t in P,
/// where capital letters are sums over the flat. H^1 is the kernel modulo
/// the span of a itself.
template <class S>
int os_h1_dim(const Arrangement<S>& arr, std::vector<S> a, const Tol& tol = {}) {
  const int n = static_cast<int>(arr.lines.size());
  if (static_cast<int>(a.size()) != n)
    throw InputError("os_h1_dim vector length must match the arrangement");
  if (n == 0) throw DomainError("os_h1_dim needs a nonempty arrangement");

  const S zero = scalar_traits<S>::zero_like(a[0]);
  S sum = zero;
  for (const auto& v : a) sum = sum + v;
  S mean = sum / scalar_traits<S>::from_int_like(a[0], n);
  bool trivial = true;
  for (auto& v : a) {
    v = v - mean;
    trivial = trivial && scalar_is_zero(v, tol);
  }
  if (trivial) throw DomainError("os_h1_dim needs a vector nonzero modulo the all-ones relation");

  Mat<S> rows;
  for (const auto& fl : arr.flats) {
    S flat_sum = zero;
    for (int j : fl.lines) flat_sum = flat_sum + a[j];
    for (size_t idx = 1; idx < fl.lines.size(); ++idx) {
      const int t = fl.lines[idx];
      Vec<S> row(n, zero);
      for (int j : fl.lines) row[j] = row[j] - a[t];
      row[t] = row[t] + flat_sum;
      rows.push_back(std::move(row));
    }
  }

  // Restrict to the sum-zero slice spanned by e_j - e_{n-1}.
  Mat<S> sliced;
  for (const auto& row : rows) {
    Vec<S> r;
    for (int j = 0; j + 1 < n; ++j) r.push_back(row[j] - row[n - 1]);
    sliced.push_back(std::move(r));
  }
  // The slice cancels structural constants exactly in exact arithmetic but
  // leaves rounding dust otherwise; rank thresholds are relative to the
  // largest singular value, so clean against the scale of a before ranking.
  if constexpr (!scalar_traits<S>::is_exact) {
    double amax = 0.0;
    for (const auto& v : a) amax = std::max(amax, scalar_traits<S>::abs(v));
    const double cut = tol.rank * amax;
    Mat<S> kept;
    for (auto& r : sliced) {
      bool live = false;
      for (auto& e : r) {
        if (scalar_traits<S>::abs(e) < cut)
          e = zero;
        else
          live = true;
      }
      if (live) kept.push_back(std::move(r));
    }
    sliced = std::move(kept);
  }
  int kernel = (n - 1) - (sliced.empty() ? 0 : mat_rank(sliced, tol));
  return kernel - 1;
}

}  // namespace planet
