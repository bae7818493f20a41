// Independent brute-force oracles. These avoid the library's algorithms and
// recompute values from raw permutations, matrices and sets.
#ifndef GATLAS_TESTS_ORACLES_HPP
#define GATLAS_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;
using Matrix = std::vector<int>;

inline Perm compose(Perm const &p, Perm const &q)
{
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    r[i] = p[q[i]];
  return r;
}

inline std::set<Perm> perm_closure(std::vector<Perm> const &gens, int degree)
{
  Perm id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::vector<Perm> todo{id};
  while (!todo.empty()) {
    Perm x = todo.back();
    todo.pop_back();
    for (auto const &g : gens) {
      Perm y = compose(g, x);
      if (seen.insert(y).second)
        todo.push_back(y);
    }
  }
  return seen;
}

inline Matrix mat_mul(Matrix const &a, Matrix const &b, int n, int m)
{
  Matrix c(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = 0;
      for (int k = 0; k < n; ++k)
        s += a[i * n + k] * b[k * n + j];
      c[i * n + j] = s % m;
    }
  return c;
}

inline Matrix identity(int n)
{
  Matrix e(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    e[i * n + i] = 1;
  return e;
}

inline Matrix elementary(int n, int i, int j, int r)
{
  Matrix e = identity(n);
  e[(i - 1) * n + (j - 1)] = r;
  return e;
}

inline int det(Matrix const &a, int n, int m)
{
  if (n == 1)
    return ((a[0] % m) + m) % m;
  long long d = 0;
  for (int c = 0; c < n; ++c) {
    Matrix minor;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != c)
          minor.push_back(a[i * n + j]);
    long long term = static_cast<long long>(a[c]) * det(minor, n - 1, m);
    d += (c % 2 ? -term : term);
  }
  return static_cast<int>(((d % m) + m) % m);
}

/// Every n×n matrix over ℤ/m whose determinant is a unit.
inline std::set<Matrix> gl_by_determinant(int n, int m)
{
  std::set<Matrix> out;
  int cells = n * n;
  Matrix a(static_cast<std::size_t>(cells), 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == cells) {
      if (std::gcd(det(a, n, m), m) == 1)
        out.insert(a);
      return;
    }
    for (int v = 0; v < m; ++v) {
      a[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

/// Closure of the elementary matrices ε_ij(r), i ≠ j.
inline std::set<Matrix> elementary_closure(int n, int m)
{
  std::vector<Matrix> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        for (int r = 1; r < m; ++r)
          gens.push_back(elementary(n, i, j, r));
  std::set<Matrix> seen{identity(n)};
  std::vector<Matrix> todo{identity(n)};
  while (!todo.empty()) {
    Matrix x = todo.back();
    todo.pop_back();
    for (auto const &g : gens) {
      Matrix y = mat_mul(g, x, n, m);
      if (seen.insert(y).second)
        todo.push_back(y);
    }
  }
  return seen;
}

/// Connected components of a graph by repeated relaxation.
inline int component_count(int n, std::vector<std::pair<int, int>> const &edges)
{
  std::vector<int> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [u, v] : edges) {
      int lo = std::min(label[u], label[v]);
      if (label[u] != lo || label[v] != lo) {
        label[u] = label[v] = lo;
        changed = true;
      }
    }
  }
  std::set<int> distinct(label.begin(), label.end());
  return static_cast<int>(distinct.size());
}

/// Isomorphism of two complexes given by their simplex lists, by trying
/// every vertex bijection.
inline bool isomorphic(int n1, std::vector<std::vector<int>> const &s1, int n2,
                       std::vector<std::vector<int>> const &s2)
{
  if (n1 != n2 || s1.size() != s2.size())
    return false;
  std::set<std::vector<int>> target(s2.begin(), s2.end());
  Perm p(static_cast<std::size_t>(n1));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (auto const &s : s1) {
      std::vector<int> img;
      for (int v : s)
        img.push_back(p[v]);
      std::sort(img.begin(), img.end());
      if (!target.count(img)) {
        ok = false;
        break;
      }
    }
    if (ok)
      return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// Point sets of left cosets H·x for a permutation group on its own
/// enumeration: returns the orbit sets of {h∘x}.
inline std::set<std::set<Perm>> left_coset_sets(std::set<Perm> const &G, std::set<Perm> const &H)
{
  std::set<std::set<Perm>> out;
  for (auto const &x : G) {
    std::set<Perm> c;
    for (auto const &h : H)
      c.insert(compose(h, x));
    out.insert(c);
  }
  return out;
}

} // namespace oracle

#endif
