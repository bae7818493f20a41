#include "gatlas/complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "gatlas/error.hpp"
#include "gatlas/union_find.hpp"

namespace gatlas {

namespace {

bool simplex_less(Simplex const &a, Simplex const &b)
{
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

void check_cap(std::size_t n, std::size_t cap)
{
  if (n > cap)
    throw BoundExceeded("simplex cap exceeded (" + std::to_string(cap) + ")");
}

} // namespace

SimplicialComplex SimplicialComplex::from_maximal(int vertex_count, std::vector<Simplex> maximal,
                                                  std::vector<std::string> labels,
                                                  std::size_t cap)
{
  std::set<Simplex> all;
  for (int v = 0; v < vertex_count; ++v)
    all.insert({v});
  for (auto &m : maximal) {
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end())
      throw ValidationError("simplex repeats a vertex");
    if (m.empty())
      continue;
    if (m.front() < 0 || m.back() >= vertex_count)
      throw ValidationError("simplex vertex out of range");
    if (m.size() > 24 || (std::size_t{1} << m.size()) > 4 * cap + 8)
      throw BoundExceeded("simplex cap exceeded (" + std::to_string(cap) + ")");
    if (all.count(m))
      continue;
    std::size_t k = m.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1)
          s.push_back(m[i]);
      all.insert(std::move(s));
    }
    check_cap(all.size(), cap);
  }
  check_cap(all.size(), cap);
  SimplicialComplex K;
  K.n_ = vertex_count;
  K.labels_ = std::move(labels);
  if (!K.labels_.empty() && static_cast<int>(K.labels_.size()) != vertex_count)
    throw ValidationError("vertex label count mismatch");
  K.simplices_.assign(all.begin(), all.end());
  std::stable_sort(K.simplices_.begin(), K.simplices_.end(), simplex_less);
  K.index();
  return K;
}

SimplicialComplex SimplicialComplex::from_simplices(int vertex_count, std::vector<Simplex> simplices,
                                                    std::vector<std::string> labels,
                                                    std::size_t cap)
{
  std::set<Simplex> given;
  for (auto &s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("simplex repeats a vertex");
    if (!s.empty())
      given.insert(s);
  }
  for (auto const &s : given)
    for (std::size_t i = 0; i < s.size() && s.size() > 1; ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(i));
      if (!given.count(f))
        throw ValidationError("simplex family is not downward closed");
    }
  return from_maximal(vertex_count, std::vector<Simplex>(given.begin(), given.end()),
                      std::move(labels), cap);
}

void SimplicialComplex::index()
{
  index_.clear();
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    index_.emplace(simplices_[i], static_cast<int>(i));
}

std::string SimplicialComplex::vertex_label(int v) const
{
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

int SimplicialComplex::index_of(Simplex const &s) const
{
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

int SimplicialComplex::dimension() const
{
  return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1;
}

std::vector<int> SimplicialComplex::f_vector() const
{
  std::vector<int> f(static_cast<std::size_t>(dimension() + 1), 0);
  for (auto const &s : simplices_)
    ++f[s.size() - 1];
  return f;
}

std::vector<int> SimplicialComplex::of_dimension(int d) const
{
  std::vector<int> out;
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    if (static_cast<int>(simplices_[i].size()) == d + 1)
      out.push_back(static_cast<int>(i));
  return out;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const
{
  std::vector<bool> face(simplices_.size(), false);
  for (auto const &s : simplices_)
    for (std::size_t i = 0; i < s.size() && s.size() > 1; ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(i));
      face[index_.at(f)] = true;
    }
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    if (!face[i])
      out.push_back(simplices_[i]);
  return out;
}

ComplexPtr share(SimplicialComplex K)
{
  return std::make_shared<const SimplicialComplex>(std::move(K));
}

bool Relation::related(int x, int y) const
{
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(x, y));
}

Relation Relation::transposed() const
{
  Relation T;
  T.left_size = right_size;
  T.right_size = left_size;
  for (auto [x, y] : pairs)
    T.pairs.emplace_back(y, x);
  std::sort(T.pairs.begin(), T.pairs.end());
  return T;
}

SimplicialComplex vietoris_complex(GroupoidAtlas const &A, std::size_t cap)
{
  std::vector<Simplex> maximal;
  for (int a = 0; a < A.coord_count(); ++a)
    for (auto const &O : A.local(a).orbits())
      maximal.push_back(O);
  return SimplicialComplex::from_maximal(A.size(), std::move(maximal), A.point_labels(), cap);
}

NerveComplex nerve_complex(GroupoidAtlas const &A, std::size_t cap)
{
  NerveComplex N;
  std::map<std::vector<int>, int> by_set;
  std::vector<std::string> labels;
  for (int a = 0; a < A.coord_count(); ++a) {
    auto const &orbits = A.local(a).orbits();
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      auto [it, fresh] = by_set.emplace(orbits[o], static_cast<int>(N.vertex_sets.size()));
      if (fresh) {
        N.vertex_sets.push_back(orbits[o]);
        N.vertex_orbits.emplace_back();
        labels.push_back("c" + std::to_string(a) + ":" + A.point_label(orbits[o][0]));
      }
      N.vertex_orbits[it->second].emplace_back(a, static_cast<int>(o));
    }
  }
  std::vector<Simplex> maximal(A.size());
  for (std::size_t v = 0; v < N.vertex_sets.size(); ++v)
    for (int x : N.vertex_sets[v])
      maximal[x].push_back(static_cast<int>(v));
  N.complex = SimplicialComplex::from_maximal(static_cast<int>(N.vertex_sets.size()),
                                              std::move(maximal), std::move(labels), cap);
  return N;
}

Relation membership_relation(GroupoidAtlas const &A, NerveComplex const &N)
{
  Relation R;
  R.left_size = A.size();
  R.right_size = static_cast<int>(N.vertex_sets.size());
  for (std::size_t v = 0; v < N.vertex_sets.size(); ++v)
    for (int x : N.vertex_sets[v])
      R.pairs.emplace_back(x, static_cast<int>(v));
  std::sort(R.pairs.begin(), R.pairs.end());
  return R;
}

Relation vertex_in_simplex_relation(SimplicialComplex const &K)
{
  Relation R;
  R.left_size = K.vertex_count();
  R.right_size = static_cast<int>(K.size());
  for (std::size_t i = 0; i < K.size(); ++i)
    for (int v : K.simplex(static_cast<int>(i)))
      R.pairs.emplace_back(v, static_cast<int>(i));
  std::sort(R.pairs.begin(), R.pairs.end());
  return R;
}

DowkerPair dowker_pair(Relation const &R, std::size_t cap)
{
  std::vector<Simplex> by_y(R.right_size), by_x(R.left_size);
  for (auto [x, y] : R.pairs) {
    if (x < 0 || y < 0 || x >= R.left_size || y >= R.right_size)
      throw ValidationError("relation pair out of range");
    by_y[y].push_back(x);
    by_x[x].push_back(y);
  }
  return {SimplicialComplex::from_maximal(R.left_size, std::move(by_y), {}, cap),
          SimplicialComplex::from_maximal(R.right_size, std::move(by_x), {}, cap)};
}

SimplicialComplex barycentric_subdivision(SimplicialComplex const &K, std::size_t cap)
{
  std::size_t n = K.size();
  std::vector<std::vector<int>> supersets(n);
  for (std::size_t j = 0; j < n; ++j) {
    Simplex const &s = K.simplex(static_cast<int>(j));
    std::size_t k = s.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1)
          f.push_back(s[i]);
      supersets[K.index_of(f)].push_back(static_cast<int>(j));
    }
  }
  std::vector<Simplex> chains;
  std::vector<int> chain;
  std::function<void()> extend = [&]() {
    chains.push_back(chain);
    check_cap(chains.size(), cap);
    for (int j : supersets[chain.back()]) {
      chain.push_back(j);
      extend();
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    chain = {static_cast<int>(i)};
    extend();
  }
  for (auto &c : chains)
    std::sort(c.begin(), c.end());
  return SimplicialComplex::from_simplices(static_cast<int>(n), std::move(chains), {}, cap);
}

Simplex SimplicialMap::image(Simplex const &s) const
{
  Simplex out;
  for (int v : s)
    out.push_back(vertex_map[v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SimplicialMap::is_simplicial() const
{
  if (static_cast<int>(vertex_map.size()) != source->vertex_count())
    return false;
  for (int v : vertex_map)
    if (v < 0 || v >= target->vertex_count())
      return false;
  for (auto const &s : source->simplices())
    if (!target->contains(image(s)))
      return false;
  return true;
}

SimplicialMap dowker_phi(ComplexPtr K, ComplexPtr sd, std::vector<int> const &rank)
{
  if (sd->vertex_count() != static_cast<int>(K->size()))
    throw ValidationError("subdivision does not match the complex");
  SimplicialMap f{sd, K, {}};
  for (std::size_t i = 0; i < K->size(); ++i) {
    Simplex const &s = K->simplex(static_cast<int>(i));
    int best = s[0];
    for (int v : s)
      if (!rank.empty() ? rank[v] < rank[best] : v < best)
        best = v;
    f.vertex_map.push_back(best);
  }
  return f;
}

namespace {

SimplicialMap witness_map(Relation const &R, ComplexPtr from, ComplexPtr to, ComplexPtr sd,
                          WitnessChoice choice, bool from_is_right)
{
  if (sd->vertex_count() != static_cast<int>(from->size()))
    throw ValidationError("subdivision does not match the complex");
  int other = from_is_right ? R.left_size : R.right_size;
  std::vector<std::vector<int>> nbr(from->vertex_count());
  for (auto [x, y] : R.pairs) {
    if (from_is_right)
      nbr[y].push_back(x);
    else
      nbr[x].push_back(y);
  }
  for (auto &v : nbr)
    std::sort(v.begin(), v.end());
  SimplicialMap f{sd, to, {}};
  for (std::size_t i = 0; i < from->size(); ++i) {
    std::vector<int> common = nbr[from->simplex(static_cast<int>(i))[0]];
    for (int v : from->simplex(static_cast<int>(i))) {
      std::vector<int> next;
      std::set_intersection(common.begin(), common.end(), nbr[v].begin(), nbr[v].end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    if (common.empty() || common.back() >= other)
      throw ValidationError("simplex has no common witness");
    f.vertex_map.push_back(choice == WitnessChoice::least ? common.front() : common.back());
  }
  return f;
}

} // namespace

SimplicialMap dowker_psi(Relation const &R, ComplexPtr K, ComplexPtr L, ComplexPtr sdL,
                         WitnessChoice choice)
{
  return witness_map(R, L, K, sdL, choice, true);
}

SimplicialMap dowker_psibar(Relation const &R, ComplexPtr K, ComplexPtr L, ComplexPtr sdK,
                            WitnessChoice choice)
{
  return witness_map(R, K, L, sdK, choice, false);
}

SimplicialMap subdivide_map(SimplicialMap const &f, ComplexPtr sdK, ComplexPtr sdL)
{
  SimplicialMap g{sdK, sdL, {}};
  for (auto const &s : f.source->simplices()) {
    int j = f.target->index_of(f.image(s));
    if (j < 0)
      throw ValidationError("map is not simplicial");
    g.vertex_map.push_back(j);
  }
  return g;
}

SimplicialMap compose(SimplicialMap const &g, SimplicialMap const &f)
{
  if (f.target->vertex_count() != g.source->vertex_count())
    throw ValidationError("maps are not composable");
  SimplicialMap h{f.source, g.target, {}};
  for (int v : f.vertex_map)
    h.vertex_map.push_back(g.vertex_map[v]);
  return h;
}

bool are_contiguous(SimplicialMap const &f, SimplicialMap const &g)
{
  if (!(*f.source == *g.source) || !(*f.target == *g.target) ||
      f.vertex_map.size() != g.vertex_map.size())
    throw ValidationError("shape mismatch");
  for (auto const &s : f.source->simplices()) {
    Simplex u = f.image(s);
    Simplex v = g.image(s);
    u.insert(u.end(), v.begin(), v.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    if (!f.target->contains(u))
      return false;
  }
  return true;
}

long long euler_characteristic(SimplicialComplex const &K)
{
  long long chi = 0;
  for (auto const &s : K.simplices())
    chi += (s.size() % 2 == 1) ? 1 : -1;
  return chi;
}

namespace {

std::int64_t checked(__int128 v)
{
  if (v > INT64_MAX || v < INT64_MIN)
    throw BoundExceeded("integer overflow in Smith normal form");
  return static_cast<std::int64_t>(v);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b)
{
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

} // namespace

SmithForm smith_normal_form(IntMatrix M)
{
  std::size_t r = M.size(), c = r ? M[0].size() : 0;
  for (auto const &row : M)
    if (row.size() != c)
      throw ValidationError("ragged matrix");
  std::size_t t = 0;
  std::vector<std::int64_t> diag;
  while (t < r && t < c) {
    // Pivot: smallest nonzero magnitude in the remaining block.
    std::size_t pi = r, pj = c;
    std::int64_t best = 0;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (M[i][j] != 0 && (best == 0 || std::llabs(M[i][j]) < best)) {
          best = std::llabs(M[i][j]);
          pi = i;
          pj = j;
        }
    if (best == 0)
      break;
    std::swap(M[t], M[pi]);
    for (auto &row : M)
      std::swap(row[t], row[pj]);
    while (true) {
      std::int64_t p = M[t][t];
      for (std::size_t i = t + 1; i < r; ++i)
        if (M[i][t] != 0) {
          std::int64_t q = M[i][t] / p;
          for (std::size_t j = t; j < c; ++j)
            if (M[t][j] != 0)
              M[i][j] = checked(static_cast<__int128>(M[i][j]) - static_cast<__int128>(q) * M[t][j]);
        }
      for (std::size_t j = t + 1; j < c; ++j)
        if (M[t][j] != 0) {
          std::int64_t q = M[t][j] / p;
          for (std::size_t i = t; i < r; ++i)
            if (M[i][t] != 0)
              M[i][j] = checked(static_cast<__int128>(M[i][j]) - static_cast<__int128>(q) * M[i][t]);
        }
      // Any leftover remainder in row/column t is smaller than the pivot.
      std::size_t mi = t, mj = t;
      std::int64_t small = std::llabs(M[t][t]);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i)
        if (M[i][t] != 0) {
          clean = false;
          if (std::llabs(M[i][t]) < small) {
            small = std::llabs(M[i][t]);
            mi = i;
            mj = t;
          }
        }
      for (std::size_t j = t + 1; j < c; ++j)
        if (M[t][j] != 0) {
          clean = false;
          if (std::llabs(M[t][j]) < small) {
            small = std::llabs(M[t][j]);
            mi = t;
            mj = j;
          }
        }
      if (clean)
        break;
      std::swap(M[t], M[mi]);
      for (auto &row : M)
        std::swap(row[t], row[mj]);
    }
    diag.push_back(std::llabs(M[t][t]));
    ++t;
  }
  // Normalize to a divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      std::int64_t g = gcd64(diag[i], diag[j]);
      std::int64_t l = checked(static_cast<__int128>(diag[i] / g) * diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  SmithForm out;
  out.invariants = diag;
  out.rank = static_cast<int>(diag.size());
  return out;
}

std::vector<HomologyGroup> homology(SimplicialComplex const &K)
{
  int top = K.dimension();
  if (top < 0)
    return {};
  std::vector<std::vector<int>> cells(static_cast<std::size_t>(top + 1));
  std::vector<int> pos(K.size());
  for (std::size_t i = 0; i < K.size(); ++i) {
    std::size_t d = K.simplex(static_cast<int>(i)).size() - 1;
    pos[i] = static_cast<int>(cells[d].size());
    cells[d].push_back(static_cast<int>(i));
  }
  // rank and invariants of ∂_p : C_p → C_{p-1}
  std::vector<SmithForm> bd(static_cast<std::size_t>(top + 2));
  for (int p = 1; p <= top; ++p) {
    IntMatrix M(cells[p - 1].size(), std::vector<std::int64_t>(cells[p].size(), 0));
    for (std::size_t j = 0; j < cells[p].size(); ++j) {
      Simplex const &s = K.simplex(cells[p][j]);
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        M[pos[K.index_of(f)]][j] = (i % 2 == 0) ? 1 : -1;
      }
    }
    bd[p] = smith_normal_form(std::move(M));
  }
  std::vector<HomologyGroup> H(static_cast<std::size_t>(top + 1));
  for (int p = 0; p <= top; ++p) {
    int n = static_cast<int>(cells[p].size());
    H[p].betti = n - bd[p].rank - bd[p + 1].rank;
    for (auto d : bd[p + 1].invariants)
      if (d > 1)
        H[p].torsion.push_back(d);
  }
  return H;
}

bool same_homology(std::vector<HomologyGroup> const &a, std::vector<HomologyGroup> const &b)
{
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t p = 0; p < n; ++p) {
    HomologyGroup x = p < a.size() ? a[p] : HomologyGroup{};
    HomologyGroup y = p < b.size() ? b[p] : HomologyGroup{};
    if (!(x == y))
      return false;
  }
  return true;
}

int component_count(SimplicialComplex const &K)
{
  UnionFind uf(static_cast<std::size_t>(K.vertex_count()));
  for (auto const &s : K.simplices())
    for (std::size_t i = 1; i < s.size(); ++i)
      uf.unite(static_cast<std::size_t>(s[0]), static_cast<std::size_t>(s[i]));
  int count = 0;
  for (int v = 0; v < K.vertex_count(); ++v)
    if (uf.find(static_cast<std::size_t>(v)) == static_cast<std::size_t>(v))
      ++count;
  return count;
}

bool is_closed_surface(SimplicialComplex const &K)
{
  if (K.dimension() != 2 || component_count(K) != 1)
    return false;
  std::map<Simplex, int> edge_tris;
  std::vector<std::vector<std::pair<int, int>>> link(K.vertex_count());
  for (int t : K.of_dimension(2)) {
    Simplex const &s = K.simplex(t);
    for (int i = 0; i < 3; ++i) {
      Simplex e = s;
      e.erase(e.begin() + i);
      ++edge_tris[e];
      link[s[i]].emplace_back(e[0], e[1]);
    }
  }
  for (int e : K.of_dimension(1))
    if (edge_tris[K.simplex(e)] != 2)
      return false;
  for (int v = 0; v < K.vertex_count(); ++v) {
    auto const &edges = link[v];
    if (edges.size() < 3)
      return false;
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto const &kv : adj)
      if (kv.second.size() != 2)
        return false;
    // Walk the cycle from one link vertex.
    int start = adj.begin()->first, prev = -1, cur = start;
    std::size_t steps = 0;
    do {
      auto const &nb = adj[cur];
      int next = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = next;
      ++steps;
    } while (cur != start && steps <= adj.size());
    if (steps != adj.size())
      return false;
  }
  return true;
}

Simplex GroupActionOnComplex::act(Simplex const &s, int g) const
{
  Simplex out;
  for (int v : s)
    out.push_back(vertex_perm[g][v]);
  std::sort(out.begin(), out.end());
  return out;
}

bool GroupActionOnComplex::is_without_inversion() const
{
  for (auto const &s : complex->simplices())
    for (int g = 0; g < group->order(); ++g)
      if (act(s, g) == s)
        for (int v : s)
          if (vertex_perm[g][v] != v)
            return false;
  return true;
}

GroupActionOnComplex nerve_g_action(GroupoidAtlas const &A, NerveComplex const &N)
{
  if (!A.single_domain)
    throw ValidationError("G-action needs a single-domain atlas");
  GroupPtr G = A.single_domain->group;
  std::map<std::vector<int>, int> by_set;
  for (std::size_t v = 0; v < N.vertex_sets.size(); ++v)
    by_set.emplace(N.vertex_sets[v], static_cast<int>(v));
  GroupActionOnComplex act;
  act.complex = share(N.complex);
  act.group = G;
  act.vertex_sets = N.vertex_sets;
  for (int g = 0; g < G->order(); ++g) {
    std::vector<int> perm;
    for (auto const &set : N.vertex_sets) {
      std::vector<int> moved;
      for (int x : set)
        moved.push_back(G->mul(x, g));
      std::sort(moved.begin(), moved.end());
      auto it = by_set.find(moved);
      if (it == by_set.end())
        throw ValidationError("right translation leaves the nerve vertex set");
      perm.push_back(it->second);
    }
    act.vertex_perm.push_back(std::move(perm));
  }
  for (int g : G->generating_set())
    for (auto const &s : act.complex->simplices())
      if (!act.complex->contains(act.act(s, g)))
        throw ValidationError("right translation is not simplicial");
  if (!act.is_without_inversion())
    throw ValidationError("action has inversions");
  return act;
}

Simplex OrbitSpace::project(Simplex const &s) const
{
  Simplex out;
  for (int v : s)
    out.push_back(vertex_class[v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OrbitSpace orbit_space(GroupActionOnComplex const &act)
{
  int n = act.complex->vertex_count();
  UnionFind uf(static_cast<std::size_t>(n));
  for (int g = 0; g < act.group->order(); ++g)
    for (int v = 0; v < n; ++v)
      uf.unite(static_cast<std::size_t>(v), static_cast<std::size_t>(act.vertex_perm[g][v]));
  OrbitSpace Q;
  std::map<std::size_t, int> cls;
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v) {
    auto [it, fresh] = cls.emplace(uf.find(static_cast<std::size_t>(v)), static_cast<int>(cls.size()));
    if (fresh)
      labels.push_back("[" + act.complex->vertex_label(v) + "]");
    Q.vertex_class.push_back(it->second);
  }
  std::vector<Simplex> images;
  for (auto const &s : act.complex->simplices())
    images.push_back(Q.project(s));
  Q.complex = SimplicialComplex::from_maximal(static_cast<int>(cls.size()), std::move(images),
                                              std::move(labels));
  return Q;
}

Subgroup simplex_stabilizer(GroupActionOnComplex const &act, Simplex const &s)
{
  Simplex sorted = s;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> elems;
  for (int g = 0; g < act.group->order(); ++g)
    if (act.act(sorted, g) == sorted)
      elems.push_back(g);
  return Subgroup::from_elements(act.group, elems);
}

Subgroup stabilizer_by_formula(GroupoidAtlas const &A, NerveComplex const &N,
                               Simplex const &s, int a)
{
  if (!A.single_domain)
    throw ValidationError("formula needs a single-domain atlas");
  GroupPtr G = A.single_domain->group;
  Subgroup H = Subgroup::whole(G);
  for (int v : s) {
    auto const &set = N.vertex_sets[v];
    if (!std::binary_search(set.begin(), set.end(), a))
      throw ValidationError("a is not in every vertex set of the simplex");
    H = subgroup_intersection(H, A.single_domain->subgroups[N.vertex_orbits[v][0].first]);
  }
  std::vector<int> conj;
  for (int h : H.elements())
    conj.push_back(G->mul(G->mul(G->inv(a), h), a));
  return Subgroup::from_elements(G, conj);
}

SimplicialMap vietoris_on_morphism(AtlasMorphism const &f, ComplexPtr VA, ComplexPtr VB)
{
  SimplicialMap m{VA, VB, f.point_map};
  if (!m.is_simplicial())
    throw ValidationError("morphism does not preserve frames");
  return m;
}

SimplicialMap nerve_on_morphism(AtlasMorphism const &f, NerveComplex const &NA,
                                NerveComplex const &NB, ComplexPtr nA, ComplexPtr nB)
{
  if (!f.witness)
    throw ValidationError("strong witness required");
  std::map<std::vector<int>, int> by_set;
  for (std::size_t v = 0; v < NB.vertex_sets.size(); ++v)
    by_set.emplace(NB.vertex_sets[v], static_cast<int>(v));
  GroupoidAtlas const &B = *f.target;
  SimplicialMap m{nA, nB, {}};
  for (std::size_t v = 0; v < NA.vertex_sets.size(); ++v) {
    int chosen = -1;
    for (auto [a, o] : NA.vertex_orbits[v]) {
      (void)o;
      LocalGroupoid const &M = B.local(f.witness->coord_map[a]);
      int y = f.point_map[NA.vertex_sets[v][0]];
      if (!M.contains(y))
        throw ValidationError("image point outside the target local set");
      auto it = by_set.find(M.orbits()[M.orbit_of(y)]);
      if (it == by_set.end())
        throw ValidationError("target orbit missing from the nerve");
      if (chosen >= 0 && chosen != it->second)
        throw ValidationError("orbit image depends on the coordinate");
      chosen = it->second;
    }
    m.vertex_map.push_back(chosen);
  }
  if (!m.is_simplicial())
    throw ValidationError("induced nerve map is not simplicial");
  return m;
}

AtlasPtr atlas_of_complex(SimplicialComplex const &K)
{
  auto maximal = K.maximal_simplices();
  std::vector<LocalGroupoid> locals;
  for (auto const &m : maximal)
    locals.push_back(LocalGroupoid::equivalence(K.vertex_count(), {m}));
  std::vector<std::string> labels;
  for (int v = 0; v < K.vertex_count(); ++v)
    labels.push_back(K.vertex_label(v));
  auto A = std::make_shared<GroupoidAtlas>(
      K.vertex_count(), CoordinateSystem::discrete(static_cast<int>(maximal.size())),
      std::move(locals), GroupoidAtlas::StructureMaps{}, std::move(labels));
  if (K.vertex_count() > 0)
    A->base_point = 0;
  return A;
}

} // namespace gatlas
