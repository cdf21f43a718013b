#pragma once

// The multiplication structure of a 3-net: the Latin square of the pairing
// between the first two classes, border normalization to a loop, abelian
// invariant-factor identification, and coset slicing into subnets.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "planet/errors.hpp"
#include "planet/net.hpp"
#include "planet/projective.hpp"
#include "planet/scalar.hpp"

namespace planet {

/// Pairing table of a 3-net: table[i][j] is the third-class index of the
/// line through the meet of first-class line i and second-class line j.
/// The label vectors record the line orderings that produced the table.
struct LatinSquare {
  int m = 0;
  std::vector<std::vector<int>> table;
  std::vector<int> row_labels, col_labels, sym_labels;
};

/// A Latin square whose element 0 is a two-sided identity.
struct Loop {
  int m = 0;
  std::vector<std::vector<int>> table;
};

enum class GroupVerdict { abelian_group, nonabelian_group, not_a_group };

struct GroupId {
  GroupVerdict verdict = GroupVerdict::not_a_group;
  std::vector<int> invariant_factors;  // ascending, each dividing the next
};

/// Optional reorderings of the three classes; empty vectors mean file order.
struct NetOrderings {
  std::vector<int> rows, cols, syms;
};

namespace detail {

inline bool is_permutation_of_iota(const std::vector<int>& v, int m) {
  if (static_cast<int>(v.size()) != m) return false;
  std::vector<char> seen(m, 0);
  for (int x : v) {
    if (x < 0 || x >= m || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

inline std::vector<int> identity_perm(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline void check_latin(const LatinSquare& ls) {
  if (ls.m < 1 || static_cast<int>(ls.table.size()) != ls.m)
    throw DomainError("Latin square has wrong number of rows");
  for (const auto& row : ls.table)
    if (!is_permutation_of_iota(row, ls.m))
      throw DomainError("Latin square row is not a permutation");
  for (int j = 0; j < ls.m; ++j) {
    std::vector<int> col(ls.m);
    for (int i = 0; i < ls.m; ++i) col[i] = ls.table[i][j];
    if (!is_permutation_of_iota(col, ls.m))
      throw DomainError("Latin square column is not a permutation");
  }
}

inline void check_loop(const Loop& lp) {
  LatinSquare ls;
  ls.m = lp.m;
  ls.table = lp.table;
  check_latin(ls);
  for (int i = 0; i < lp.m; ++i)
    if (lp.table[0][i] != i || lp.table[i][0] != i)
      throw DomainError("loop table lacks the identity at element 0");
}

}  // namespace detail

/// Extracts the pairing table of a verified 3-net. Orderings, when given,
/// permute the lines of each class before indexing.
template <class S>
LatinSquare latin_from_net(const Net<S>& net, const NetOrderings& ord = {}, const Tol& tol = {}) {
  NetReport rep = verify_net(net, tol);
  if (net.classes.size() != 3) throw DomainError("latin_from_net needs exactly 3 classes");
  if (!rep.ok) throw DomainError("latin_from_net needs a verified net: " + rep.violations.front());

  const int m = rep.m;
  LatinSquare ls;
  ls.m = m;
  ls.row_labels = ord.rows.empty() ? detail::identity_perm(m) : ord.rows;
  ls.col_labels = ord.cols.empty() ? detail::identity_perm(m) : ord.cols;
  ls.sym_labels = ord.syms.empty() ? detail::identity_perm(m) : ord.syms;
  for (const auto* p : {&ls.row_labels, &ls.col_labels, &ls.sym_labels})
    if (!detail::is_permutation_of_iota(*p, m))
      throw DomainError("latin_from_net ordering is not a permutation of the class");

  // Position of each third-class line in the symbol ordering.
  std::vector<int> sym_pos(m);
  for (int s = 0; s < m; ++s) sym_pos[ls.sym_labels[s]] = s;

  ls.table.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Point<S> p = meet(net.classes[0][ls.row_labels[i]], net.classes[1][ls.col_labels[j]], tol);
      int hit = -1;
      for (int t = 0; t < m; ++t)
        if (incident(p, net.classes[2][t], tol)) {
          if (hit >= 0) throw Error("internal: two third-class lines through one net point");
          hit = t;
        }
      if (hit < 0) throw Error("internal: no third-class line through a net point");
      ls.table[i][j] = sym_pos[hit];
    }
  return ls;
}

/// Principal isotope at (r0, c0): the new product of x and y reads the table
/// at the row whose c0 column shows x and the column whose r0 row shows y.
/// The resulting identity table[r0][c0] is relabeled to 0 by a swap.
inline Loop normalize_to_loop(const LatinSquare& ls, int r0, int c0) {
  detail::check_latin(ls);
  const int m = ls.m;
  if (r0 < 0 || r0 >= m || c0 < 0 || c0 >= m)
    throw DomainError("normalize_to_loop indices out of range");

  std::vector<int> row_of(m), col_of(m);
  for (int i = 0; i < m; ++i) row_of[ls.table[i][c0]] = i;
  for (int j = 0; j < m; ++j) col_of[ls.table[r0][j]] = j;
  const int e = ls.table[r0][c0];

  auto relabel = [&](int x) { return x == e ? 0 : (x == 0 ? e : x); };
  Loop lp;
  lp.m = m;
  lp.table.assign(m, std::vector<int>(m, 0));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      lp.table[relabel(x)][relabel(y)] = relabel(ls.table[row_of[x]][col_of[y]]);
  return lp;
}

namespace detail {

// Invariant factors of an abelian group table with identity 0: repeatedly
// split off a cyclic direct factor of maximal order and recurse on the
// quotient. Factors come out descending and are returned ascending.
inline std::vector<int> abelian_invariant_factors(std::vector<std::vector<int>> t) {
  std::vector<int> factors;
  while (t.size() > 1) {
    const int n = static_cast<int>(t.size());
    int best = 0, best_ord = 1;
    std::vector<int> order(n, 0);
    for (int x = 0; x < n; ++x) {
      int y = x, ord = 1;
      while (y != 0) {
        y = t[y][x];
        ++ord;
      }
      order[x] = ord;
      if (ord > best_ord) {
        best_ord = ord;
        best = x;
      }
    }
    factors.push_back(best_ord);

    std::vector<char> in_h(n, 0);
    for (int y = best; !in_h[y]; y = t[y][best]) in_h[y] = 1;
    in_h[0] = 1;

    std::vector<int> coset(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
      if (coset[x] >= 0) continue;
      int id = static_cast<int>(reps.size());
      reps.push_back(x);
      for (int h = 0; h < n; ++h)
        if (in_h[h]) coset[t[x][h]] = id;
    }
    const int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> qt(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) qt[a][b] = coset[t[reps[a]][reps[b]]];
    t = std::move(qt);
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

}  // namespace detail

/// Full associativity scan, then commutativity, then invariant factors.
inline GroupId group_identify(const Loop& lp) {
  detail::check_loop(lp);
  const int m = lp.m;
  const auto& t = lp.table;
  GroupId id;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) {
          id.verdict = GroupVerdict::not_a_group;
          return id;
        }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (t[a][b] != t[b][a]) {
        id.verdict = GroupVerdict::nonabelian_group;
        return id;
      }
  id.verdict = GroupVerdict::abelian_group;
  id.invariant_factors = detail::abelian_invariant_factors(t);
  return id;
}

/// Slices a 3-net along a subgroup of its loop (taken at base (0, 0)): one
/// sub-net for every pair of a row coset and a column coset, each of order
/// |subgroup|. Subgroup elements are loop labels.
template <class S>
std::vector<Net<S>> coset_subnets(const Net<S>& net, const LatinSquare& ls,
                                  const std::vector<int>& subgroup, const Tol& tol = {}) {
  detail::check_latin(ls);
  const int m = ls.m;
  Loop lp = normalize_to_loop(ls, 0, 0);
  GroupId gid = group_identify(lp);
  if (gid.verdict == GroupVerdict::not_a_group)
    throw DomainError("coset_subnets needs a net whose loop is a group");

  const int d = static_cast<int>(subgroup.size());
  std::vector<char> in_s(m, 0);
  for (int s : subgroup) {
    if (s < 0 || s >= m) throw DomainError("subgroup element out of range");
    if (in_s[s]) throw DomainError("duplicate subgroup element");
    in_s[s] = 1;
  }
  if (!in_s[0]) throw DomainError("subgroup must contain the identity 0");
  for (int s : subgroup)
    for (int u : subgroup)
      if (!in_s[lp.table[s][u]]) throw DomainError("subgroup is not closed under the loop product");

  // Loop-label cosets, identified by canonical id in order of appearance.
  std::vector<int> coset(m, -1);
  int n_cosets = 0;
  for (int x = 0; x < m; ++x) {
    if (coset[x] >= 0) continue;
    for (int s : subgroup) coset[lp.table[x][s]] = n_cosets;
    ++n_cosets;
  }

  // With the (0, 0) base, loop labels and raw symbols differ by the swap of
  // 0 with e = table[0][0]; rows and columns carry the labels read off the
  // zeroth column and row.
  const int e = ls.table[0][0];
  auto relabel = [&](int x) { return x == e ? 0 : (x == 0 ? e : x); };
  auto row_elem = [&](int i) { return relabel(ls.table[i][0]); };
  auto col_elem = [&](int j) { return relabel(ls.table[0][j]); };

  std::vector<std::vector<int>> row_groups(n_cosets), col_groups(n_cosets);
  for (int i = 0; i < m; ++i) row_groups[coset[row_elem(i)]].push_back(i);
  for (int j = 0; j < m; ++j) col_groups[coset[col_elem(j)]].push_back(j);

  std::vector<Net<S>> out;
  for (const auto& rows : row_groups)
    for (const auto& cols : col_groups) {
      std::vector<int> syms;
      for (int i : rows)
        for (int j : cols) {
          int s = ls.table[i][j];
          if (std::find(syms.begin(), syms.end(), s) == syms.end()) syms.push_back(s);
        }
      if (static_cast<int>(syms.size()) != d)
        throw Error("internal: coset image has the wrong size");
      std::sort(syms.begin(), syms.end());

      Net<S> sub;
      sub.allow_trivial = d == 1 || net.allow_trivial;
      sub.classes.resize(3);
      for (int i : rows) sub.classes[0].push_back(net.classes[0][ls.row_labels[i]]);
      for (int j : cols) sub.classes[1].push_back(net.classes[1][ls.col_labels[j]]);
      for (int s : syms) sub.classes[2].push_back(net.classes[2][ls.sym_labels[s]]);
      out.push_back(std::move(sub));
    }
  return out;
}

}  // namespace planet
