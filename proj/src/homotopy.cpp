#include "gatlas/homotopy.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "gatlas/union_find.hpp"

namespace gatlas {

int Path::at(int n) const
{
  if (n <= 0)
    return points.front();
  if (n >= length())
    return points.back();
  return points[n];
}

Path validate_path(GroupoidAtlas const &A, std::vector<int> points)
{
  if (points.empty())
    throw ValidationError("empty path");
  for (int p : points)
    if (p < 0 || p >= A.size())
      throw ValidationError("path point out of range");
  std::vector<int> bad;
  for (std::size_t n = 0; n + 1 < points.size(); ++n)
    if (!A.same_local_orbit(points[n], points[n + 1]))
      bad.push_back(static_cast<int>(n));
  if (!bad.empty()) {
    std::string msg = "no common local orbit at step";
    for (int n : bad)
      msg += " " + std::to_string(n);
    throw PathError(msg, bad);
  }
  return Path{std::move(points)};
}

bool is_path(GroupoidAtlas const &A, std::vector<int> const &points)
{
  try {
    validate_path(A, points);
    return true;
  } catch (ValidationError const &) {
    return false;
  }
}

Path concat(Path const &f, Path const &g)
{
  if (f.end() != g.start())
    throw ValidationError("endpoint mismatch");
  Path out = f;
  out.points.insert(out.points.end(), g.points.begin() + 1, g.points.end());
  return out;
}

Path reverse(Path const &f)
{
  return Path{std::vector<int>(f.points.rbegin(), f.points.rend())};
}

std::vector<std::vector<int>> pi0(GroupoidAtlas const &A)
{
  UnionFind uf(A.size());
  for (int a = 0; a < A.coord_count(); ++a)
    for (auto const &orbit : A.local(a).orbits())
      for (std::size_t k = 1; k < orbit.size(); ++k)
        uf.unite(orbit[0], orbit[k]);
  std::map<int, std::vector<int>> blocks;
  for (int x = 0; x < A.size(); ++x)
    blocks[uf.find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto &[root, b] : blocks)
    out.push_back(std::move(b));
  std::sort(out.begin(), out.end());
  return out;
}

EdgePathData edge_path_data(SimplicialComplex const &K, int base)
{
  int n = K.vertex_count();
  if (base < 0 || base >= n)
    throw ValidationError("base vertex out of range");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  std::vector<std::pair<int, int>> edges;
  for (int i : K.of_dimension(1)) {
    auto const &s = K.simplex(i);
    edges.emplace_back(s[0], s[1]);
    adj[s[0]].push_back(s[1]);
    adj[s[1]].push_back(s[0]);
  }
  EdgePathData d;
  d.bfs_parent.assign(static_cast<std::size_t>(n), -2);
  d.bfs_parent[base] = -1;
  std::queue<int> q;
  q.push(base);
  std::set<std::pair<int, int>> tree;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (d.bfs_parent[v] == -2) {
        d.bfs_parent[v] = u;
        tree.insert({std::min(u, v), std::max(u, v)});
        q.push(v);
      }
  }
  for (int v = 0; v < n; ++v)
    if (d.bfs_parent[v] == -2)
      throw ValidationError("disconnected complex");
  Presentation &P = d.presentation;
  for (auto const &e : edges) {
    if (tree.count(e)) {
      d.edge_generator[e] = -1;
      continue;
    }
    d.edge_generator[e] = P.generator_count++;
    P.generator_labels.push_back(K.vertex_label(e.first) + "-" + K.vertex_label(e.second));
  }
  for (int i : K.of_dimension(2)) {
    auto const &s = K.simplex(i);
    GenWord w;
    auto push = [&](int u, int v, int sign) {
      int g = d.edge_generator.at({u, v});
      if (g >= 0)
        w.push_back(sign * (g + 1));
    };
    push(s[0], s[1], 1);
    push(s[1], s[2], 1);
    push(s[0], s[2], -1);
    P.relators.push_back(w);
  }
  return d;
}

Presentation edge_path_presentation(SimplicialComplex const &K, int base)
{
  return edge_path_data(K, base).presentation;
}

std::vector<Word> loop_words_to_kernel(GroupoidAtlas const &A, std::vector<Path> const &loops)
{
  if (!A.single_domain)
    throw ValidationError("atlas is not single-domain");
  auto const &G = *A.single_domain->group;
  auto const &family = A.single_domain->subgroups;
  std::vector<Word> out;
  for (auto const &f : loops) {
    if (f.start() != G.identity())
      throw ValidationError("path is not based at the identity");
    Word w;
    for (int n = 0; n < f.length(); ++n) {
      int g = G.mul(f.points[n + 1], G.inv(f.points[n]));
      if (g == G.identity())
        continue;
      int idx = -1;
      for (std::size_t i = 0; i < family.size() && idx < 0; ++i)
        if (family[i].contains(g))
          idx = static_cast<int>(i);
      if (idx < 0)
        throw ValidationError("step element lies in no listed subgroup at step " +
                              std::to_string(n));
      w.push_back(Letter{idx, g});
    }
    std::reverse(w.begin(), w.end());
    out.push_back(std::move(w));
  }
  return out;
}

AmalgamShape amalgam_shape(std::vector<Subgroup> const &family)
{
  AmalgamShape shape;
  if (family.empty())
    return shape;
  shape.center = family.size() == 1 ? family[0] : subgroup_intersection(family[0], family[1]);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!(subgroup_intersection(family[i], family[j]) == shape.center))
        return shape;
  auto const &G = family[0].parent();
  for (auto const &H : family)
    for (int z : shape.center.elements())
      for (int h : H.elements())
        if (G.mul(z, h) != G.mul(h, z))
          return shape;
  shape.supported = true;
  return shape;
}

Word amalgam_normal_form(std::vector<Subgroup> const &family, Word const &w)
{
  AmalgamShape shape = amalgam_shape(family);
  if (!shape.supported)
    throw ValidationError("unsupported amalgam shape");
  auto const &G = family[0].parent();
  auto const &Z = shape.center;
  auto split = [&](int h) {
    int best = h;
    for (int z : Z.elements())
      best = std::min(best, G.mul(h, z));
    return std::pair{G.mul(h, G.inv(best)), best};
  };
  int zacc = G.identity();
  Word stack;
  for (auto const &l : w) {
    if (l.subgroup < 0 || l.subgroup >= static_cast<int>(family.size()) ||
        !family[l.subgroup].contains(l.element))
      throw ValidationError("letter not in its subgroup");
    auto [z, r] = split(l.element);
    zacc = G.mul(zacc, z);
    if (r == G.identity())
      continue;
    if (!stack.empty() && stack.back().subgroup == l.subgroup) {
      auto [z2, r2] = split(G.mul(stack.back().element, r));
      zacc = G.mul(zacc, z2);
      if (r2 == G.identity())
        stack.pop_back();
      else
        stack.back().element = r2;
    } else {
      stack.push_back(Letter{l.subgroup, r});
    }
  }
  Word out;
  if (zacc != G.identity())
    out.push_back(Letter{0, zacc});
  out.insert(out.end(), stack.begin(), stack.end());
  return out;
}

int kernel_rank_oracle(int group_order, std::vector<int> const &vertex_orders,
                       std::vector<int> const &edge_orders)
{
  if (vertex_orders.empty() || edge_orders.size() + 1 != vertex_orders.size())
    throw ValidationError("non-tree shape");
  std::int64_t den = 1;
  for (int v : vertex_orders)
    den = std::lcm(den, static_cast<std::int64_t>(v));
  for (int e : edge_orders)
    den = std::lcm(den, static_cast<std::int64_t>(e));
  std::int64_t num = 0;
  for (int v : vertex_orders)
    num += den / v;
  for (int e : edge_orders)
    num -= den / e;
  std::int64_t scaled = static_cast<std::int64_t>(group_order) * num;
  if (scaled % den != 0)
    throw ValidationError("non-integral kernel rank");
  return static_cast<int>(1 - scaled / den);
}

int HomotopyGrid::width() const
{
  int w = 0;
  for (auto const &r : rows)
    w = std::max(w, r.length() + 1);
  return w;
}

GridCheck validate_homotopy(GroupoidAtlas const &A, HomotopyGrid const &h)
{
  GridCheck res;
  auto fail = [&](int row, int col, std::string why) {
    res.ok = false;
    res.row = row;
    res.column = col;
    res.reason = std::move(why);
    return res;
  };
  if (h.rows.empty())
    return fail(-1, -1, "empty grid");
  int w = h.width();
  for (std::size_t m = 0; m < h.rows.size(); ++m)
    if (!is_path(A, h.rows[m].points))
      return fail(static_cast<int>(m), -1, "row is not a path");
  for (std::size_t m = 1; m < h.rows.size(); ++m) {
    if (h.rows[m].start() != h.rows[0].start())
      return fail(static_cast<int>(m), 0, "first column not constant");
    if (h.rows[m].end() != h.rows[0].end())
      return fail(static_cast<int>(m), w - 1, "last column not constant");
  }
  for (std::size_t m = 0; m + 1 < h.rows.size(); ++m) {
    auto const &lo = h.rows[m];
    auto const &hi = h.rows[m + 1];
    for (int n = 0; n + 1 < w; ++n)
      if (!A.in_one_orbit({lo.at(n), lo.at(n + 1), hi.at(n), hi.at(n + 1)}))
        return fail(static_cast<int>(m), n, "square not in one local orbit");
  }
  return res;
}

namespace {

/// Moves the repeat at (i, i+1) one step right: (x, x, y) becomes (x, y, y).
bool ripple_step(std::vector<int> &p, int i)
{
  if (i + 2 >= static_cast<int>(p.size()))
    return false;
  p[i + 1] = p[i + 2];
  return true;
}

} // namespace

HomotopyGrid shift_grid(Path const &f, int at)
{
  if (at < 0 || at > f.length())
    throw ValidationError("shift position outside the window");
  std::vector<int> row = f.points;
  row.insert(row.begin() + at, f.points[at]);
  HomotopyGrid h;
  h.rows.push_back(Path{row});
  for (int i = at; ripple_step(row, i); ++i)
    h.rows.push_back(Path{row});
  return h;
}

RippleResult ripple_normalize(Path const &f)
{
  RippleResult res;
  std::vector<int> row = f.points;
  res.certificate.rows.push_back(Path{row});
  while (true) {
    int n = static_cast<int>(row.size());
    int i = 0;
    while (i + 2 < n && !(row[i] == row[i + 1] && row[i + 1] != row[i + 2]))
      ++i;
    if (i + 2 >= n)
      break;
    ripple_step(row, i);
    res.certificate.rows.push_back(Path{row});
  }
  std::vector<int> reduced;
  for (int p : row)
    if (reduced.empty() || reduced.back() != p)
      reduced.push_back(p);
  res.path = Path{reduced};
  return res;
}

HomotopyGrid cancellation_grid(Path const &f)
{
  int N = f.length();
  HomotopyGrid h;
  for (int k = 0; k <= N; ++k) {
    std::vector<int> row(static_cast<std::size_t>(2 * N + 1));
    for (int i = 0; i <= 2 * N; ++i) {
      if (i <= N - k)
        row[i] = f.points[i];
      else if (i < N + k)
        row[i] = f.points[N - k];
      else
        row[i] = f.points[2 * N - i];
    }
    h.rows.push_back(Path{row});
  }
  return h;
}

LoopComponents bounded_loop_components(GroupoidAtlas const &A, int base, int window,
                                       int step_budget, std::size_t loop_bound)
{
  if (base < 0 || base >= A.size())
    throw ValidationError("base point out of range");
  if (window < 0)
    throw ValidationError("negative window");
  int n = A.size();
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::set<int> s;
    for (auto const &ref : A.orbits_containing(x))
      for (int y : A.orbit(ref))
        s.insert(y);
    s.insert(x);
    nbr[x].assign(s.begin(), s.end());
  }
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  {
    std::queue<int> q;
    dist[base] = 0;
    q.push(base);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : nbr[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
  }

  LoopComponents out;
  std::map<std::vector<int>, int> index;
  std::vector<int> cur{base};
  auto enumerate = [&](auto &&self) -> void {
    int k = static_cast<int>(cur.size()) - 1;
    if (k == window) {
      if (cur.back() != base)
        return;
      if (out.loop_list.size() >= loop_bound)
        throw BoundExceeded("loop enumeration bound exceeded");
      index[cur] = static_cast<int>(out.loop_list.size());
      out.loop_list.push_back(Path{cur});
      return;
    }
    for (int y : nbr[cur.back()]) {
      if (dist[y] < 0 || dist[y] > window - k - 1)
        continue;
      cur.push_back(y);
      self(self);
      cur.pop_back();
    }
  };
  enumerate(enumerate);
  out.loops = static_cast<int>(out.loop_list.size());

  UnionFind uf(out.loops);
  if (step_budget > 0) {
    for (int li = 0; li < out.loops; ++li) {
      auto const &r = out.loop_list[li].points;
      std::vector<int> s{base};
      auto extend = [&](auto &&self) -> void {
        int j = static_cast<int>(s.size()) - 1;
        if (j == window) {
          if (s.back() == base)
            uf.unite(li, index.at(s));
          return;
        }
        std::set<int> cand;
        for (auto const &ref : A.orbits_containing(r[j])) {
          auto const &orb = A.orbit(ref);
          if (std::binary_search(orb.begin(), orb.end(), r[j + 1]) &&
              std::binary_search(orb.begin(), orb.end(), s[j]))
            cand.insert(orb.begin(), orb.end());
        }
        if (r[j] == r[j + 1] && r[j] == s[j])
          cand.insert(r[j]);
        for (int y : cand) {
          if (dist[y] > window - j - 1)
            continue;
          s.push_back(y);
          self(self);
          s.pop_back();
        }
      };
      extend(extend);
    }
  }
  std::map<int, int> comp;
  for (int li = 0; li < out.loops; ++li) {
    int root = uf.find(li);
    auto it = comp.find(root);
    if (it == comp.end())
      it = comp.emplace(root, static_cast<int>(comp.size())).first;
    out.component_of.push_back(it->second);
  }
  out.components = static_cast<int>(comp.size());
  return out;
}

} // namespace gatlas
