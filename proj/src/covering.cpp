#include "gatlas/covering.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gatlas/error.hpp"

namespace gatlas {

std::vector<int> CoveringCandidate::fiber(int x) const
{
  std::vector<int> out;
  for (int y = 0; y < upstairs().size(); ++y)
    if (project(y) == x)
      out.push_back(y);
  return out;
}

namespace {

void check_candidate(CoveringCandidate const &c)
{
  if (!c.morphism.source || !c.morphism.target)
    throw ValidationError("covering candidate without atlases");
  if (static_cast<int>(c.morphism.point_map.size()) != c.upstairs().size())
    throw ValidationError("point map has the wrong length");
  for (int x : c.morphism.point_map)
    if (x < 0 || x >= c.downstairs().size())
      throw ValidationError("point map value out of range");
}

std::vector<std::vector<int>> distinct_orbits(GroupoidAtlas const &A)
{
  std::set<std::vector<int>> seen;
  for (int a = 0; a < A.coord_count(); ++a)
    for (auto const &o : A.local(a).orbits())
      seen.insert(o);
  return {seen.begin(), seen.end()};
}

} // namespace

CoveringReport is_covering(CoveringCandidate const &c, int brute_frame_size)
{
  check_candidate(c);
  GroupoidAtlas const &A = c.downstairs();
  GroupoidAtlas const &B = c.upstairs();
  CoveringReport rep;

  for (int a = 0; a < A.coord_count(); ++a) {
    auto const &orbits = A.local(a).orbits();
    for (int o = 0; o < static_cast<int>(orbits.size()); ++o) {
      auto const &O = orbits[o];
      for (int y = 0; y < B.size(); ++y) {
        if (!std::binary_search(O.begin(), O.end(), c.project(y)))
          continue;
        std::set<std::vector<int>> ups;
        for (auto const &ref : B.orbits_containing(y)) {
          auto const &U = B.orbit(ref);
          bool inside = std::all_of(U.begin(), U.end(), [&](int u) {
            return std::binary_search(O.begin(), O.end(), c.project(u));
          });
          if (inside)
            ups.insert(U);
        }
        auto fail = [&](std::string why) {
          rep.ok = false;
          rep.reason = std::move(why);
          rep.orbit = {a, o};
          rep.point = y;
          return rep;
        };
        if (ups.size() != 1)
          return fail(ups.empty() ? "no upstairs orbit over the local orbit"
                                  : "several upstairs orbits over the local orbit");
        auto const &U = *ups.begin();
        std::vector<int> img;
        for (int u : U)
          img.push_back(c.project(u));
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end() || img != O)
          return fail("projection is not a bijection on the upstairs orbit");
      }
    }
  }

  // Unique lifting of every frame up to the given size.
  std::vector<std::vector<int>> fibers(static_cast<std::size_t>(A.size()));
  for (int y = 0; y < B.size(); ++y)
    fibers[c.project(y)].push_back(y);
  for (auto const &O : distinct_orbits(A)) {
    std::vector<int> frame;
    auto frames = [&](auto &&self) -> bool {
      if (!frame.empty()) {
        for (int y0 : fibers[frame[0]]) {
          int lifts = 0;
          std::vector<int> lift{y0};
          auto count = [&](auto &&inner) -> void {
            if (lifts > 1)
              return;
            if (lift.size() == frame.size()) {
              if (B.in_one_orbit(lift))
                ++lifts;
              return;
            }
            for (int y : fibers[frame[lift.size()]]) {
              lift.push_back(y);
              inner(inner);
              lift.pop_back();
            }
          };
          count(count);
          if (lifts != 1) {
            rep.ok = false;
            rep.reason = lifts == 0 ? "frame has no lift" : "frame has several lifts";
            rep.frame = frame;
            rep.point = y0;
            return false;
          }
        }
      }
      if (static_cast<int>(frame.size()) == brute_frame_size)
        return true;
      for (int x : O) {
        frame.push_back(x);
        bool ok = self(self);
        frame.pop_back();
        if (!ok)
          return false;
      }
      return true;
    };
    if (!frames(frames))
      return rep;
  }
  return rep;
}

std::vector<int> star(GroupoidAtlas const &A, int x)
{
  std::set<int> s{x};
  for (auto const &ref : A.orbits_containing(x))
    for (int y : A.orbit(ref))
      s.insert(y);
  return {s.begin(), s.end()};
}

CheckResult star_conditions(CoveringCandidate const &c)
{
  check_candidate(c);
  GroupoidAtlas const &A = c.downstairs();
  GroupoidAtlas const &B = c.upstairs();
  CheckResult res;
  for (int x1 = 0; x1 < B.size(); ++x1)
    for (int x2 = x1 + 1; x2 < B.size(); ++x2)
      if (c.project(x1) == c.project(x2) && !B.common_coords(x1, x2).empty()) {
        res.ok = false;
        res.reason = "local stars over a common point meet";
        res.coord = B.common_coords(x1, x2)[0];
        res.witness = {x1, x2};
        return res;
      }
  for (int x = 0; x < B.size(); ++x) {
    std::vector<int> img;
    for (int y : star(B, x))
      img.push_back(c.project(y));
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end() ||
        img != star(A, c.project(x))) {
      res.ok = false;
      res.reason = "star map is not a bijection";
      res.witness = {x};
      return res;
    }
  }
  return res;
}

Path lift_path(CoveringCandidate const &c, Path const &f, int y0)
{
  check_candidate(c);
  if (y0 < 0 || y0 >= c.upstairs().size() || c.project(y0) != f.start())
    throw ValidationError("lift start is not over the path start");
  GroupoidAtlas const &B = c.upstairs();
  Path out{{y0}};
  for (int n = 0; n < f.length(); ++n) {
    int cur = out.points.back();
    int next = -1;
    for (int y : c.fiber(f.points[n + 1]))
      if (B.same_local_orbit(cur, y)) {
        if (next >= 0)
          throw ValidationError("path lift is not unique at step " + std::to_string(n));
        next = y;
      }
    if (next < 0)
      throw ValidationError("path does not lift at step " + std::to_string(n));
    out.points.push_back(next);
  }
  return out;
}

HomotopyGrid lift_homotopy(CoveringCandidate const &c, HomotopyGrid const &h, int y0)
{
  HomotopyGrid out;
  for (auto const &row : h.rows)
    out.rows.push_back(lift_path(c, row, y0));
  return out;
}

std::vector<int> fiber_cardinalities(CoveringCandidate const &c)
{
  check_candidate(c);
  std::vector<int> out(static_cast<std::size_t>(c.downstairs().size()), 0);
  for (int y = 0; y < c.upstairs().size(); ++y)
    ++out[c.project(y)];
  return out;
}

SimplicialCover build_cover_from_perm_rep(SimplicialComplex const &K, int base,
                                          std::vector<Perm> const &perms, int fiber_size,
                                          std::size_t cap)
{
  if (fiber_size < 1)
    throw ValidationError("fiber must be nonempty");
  EdgePathData d = edge_path_data(K, base);
  if (static_cast<int>(perms.size()) != d.presentation.generator_count)
    throw ValidationError("expected " + std::to_string(d.presentation.generator_count) +
                          " generator permutations");
  for (auto const &p : perms) {
    Perm sorted = p;
    std::sort(sorted.begin(), sorted.end());
    Perm iota(static_cast<std::size_t>(fiber_size));
    std::iota(iota.begin(), iota.end(), 0);
    if (sorted != iota)
      throw ValidationError("generator image is not a permutation of the fiber");
  }
  std::vector<Perm> inverse(perms.size());
  for (std::size_t g = 0; g < perms.size(); ++g) {
    inverse[g].resize(static_cast<std::size_t>(fiber_size));
    for (int s = 0; s < fiber_size; ++s)
      inverse[g][perms[g][s]] = s;
  }
  for (auto const &r : d.presentation.relators)
    for (int s = 0; s < fiber_size; ++s) {
      int t = s;
      for (int l : r)
        t = l > 0 ? perms[l - 1][t] : inverse[-l - 1][t];
      if (t != s)
        throw ValidationError("not a π₁-action");
    }

  SimplicialCover sc;
  sc.fiber = fiber_size;
  Perm identity(static_cast<std::size_t>(fiber_size));
  std::iota(identity.begin(), identity.end(), 0);
  for (auto const &[e, g] : d.edge_generator)
    sc.transport[e] = g < 0 ? identity : perms[g];

  std::vector<Simplex> lifted;
  for (auto const &s : K.maximal_simplices())
    for (int sheet = 0; sheet < fiber_size; ++sheet) {
      Simplex t{sc.vertex(s[0], sheet)};
      for (std::size_t i = 1; i < s.size(); ++i)
        t.push_back(sc.vertex(s[i], sc.transport.at({s[0], s[i]})[sheet]));
      std::sort(t.begin(), t.end());
      lifted.push_back(std::move(t));
    }
  std::vector<std::string> labels;
  for (int v = 0; v < K.vertex_count(); ++v)
    for (int sheet = 0; sheet < fiber_size; ++sheet)
      labels.push_back(K.vertex_label(v) + "#" + std::to_string(sheet));
  sc.total = share(SimplicialComplex::from_maximal(K.vertex_count() * fiber_size, lifted,
                                                   labels, cap));
  sc.base = share(K);
  sc.projection.source = sc.total;
  sc.projection.target = sc.base;
  for (int v = 0; v < sc.total->vertex_count(); ++v)
    sc.projection.vertex_map.push_back(v / fiber_size);
  return sc;
}

GroupPtr deck_group(SimplicialCover const &sc)
{
  int k = sc.fiber;
  if (k > 8)
    throw BoundExceeded("fiber too large for deck group search");
  int nv = sc.base->vertex_count();
  Perm sigma(static_cast<std::size_t>(k));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<Perm> found;
  do {
    // Tree edges carry the identity transport, so σ acts sheetwise on every vertex.
    bool ok = true;
    for (auto const &[e, p] : sc.transport) {
      for (int s = 0; s < k && ok; ++s)
        ok = p[sigma[s]] == sigma[p[s]];
      if (!ok)
        break;
    }
    if (ok) {
      Perm vmap(static_cast<std::size_t>(nv * k));
      for (int v = 0; v < nv; ++v)
        for (int s = 0; s < k; ++s)
          vmap[sc.vertex(v, s)] = sc.vertex(v, sigma[s]);
      for (auto const &t : sc.total->maximal_simplices()) {
        Simplex img;
        for (int v : t)
          img.push_back(vmap[v]);
        std::sort(img.begin(), img.end());
        if (!sc.total->contains(img)) {
          ok = false;
          break;
        }
      }
    }
    if (ok)
      found.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  GroupPtr D = closure_from_generators(k, found);
  if (D->order() != static_cast<int>(found.size()))
    throw ValidationError("deck transformations do not form a group");
  return D;
}

UniversalData single_domain_universal_data(GroupPtr G, std::vector<Subgroup> const &family,
                                           std::size_t bound)
{
  if (family.empty())
    throw ValidationError("empty subgroup family");
  UniversalData out;
  Presentation &P = out.colimit;
  std::vector<std::map<int, int>> gen(family.size());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (int h : family[i].elements()) {
      gen[i][h] = ++P.generator_count;
      P.generator_labels.push_back("H" + std::to_string(i + 1) + ":" + G->label(h));
    }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (int g : family[i].elements())
      for (int h : family[i].elements())
        P.relators.push_back(
            free_reduce({gen[i][g], gen[i][h], -gen[i][G->mul(g, h)]}));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      Subgroup both = subgroup_intersection(family[i], family[j]);
      for (int h : both.elements())
        P.relators.push_back({gen[i][h], -gen[j][h]});
    }

  Subgroup image = family[0];
  for (std::size_t i = 1; i < family.size(); ++i)
    image = subgroup_join(image, family[i]);
  out.image_order = image.order();

  AmalgamShape shape = amalgam_shape(family);
  if (shape.supported) {
    std::vector<int> vertex, edge;
    for (auto const &H : family)
      vertex.push_back(H.order());
    for (std::size_t i = 1; i < family.size(); ++i)
      edge.push_back(shape.center.order());
    out.kernel_rank = kernel_rank_oracle(out.image_order, vertex, edge);
    if (*out.kernel_rank >= 1) {
      out.verdict = "infinite-certified";
      return out;
    }
  }
  try {
    Presentation S = simplify_presentation(P, SimplifyLevel::full);
    CosetTable T = todd_coxeter(S, bound);
    std::vector<Perm> perms = T.action;
    out.finite_colimit = closure_from_generators(T.index, perms);
    out.colimit_order = T.index;
    out.verdict = "finite";
  } catch (BoundExceeded const &) {
    out.verdict = "bound-exceeded";
  }
  return out;
}

} // namespace gatlas
