#include "gatlas/atlas.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gatlas/error.hpp"
#include "gatlas/union_find.hpp"

namespace gatlas {

namespace {

std::vector<int> subset_generators(FiniteGroup const &G, std::vector<int> const &elements)
{
  std::set<int> closed{0};
  std::vector<int> gens;
  for (int g : elements) {
    if (closed.count(g))
      continue;
    gens.push_back(g);
    std::vector<int> queue(closed.begin(), closed.end());
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int s : gens) {
        int y = G.mul(queue[head], s);
        if (closed.insert(y).second)
          queue.push_back(y);
      }
  }
  return gens;
}

} // namespace

CoordinateSystem::CoordinateSystem(int n, std::vector<std::pair<int, int>> pairs)
: size(n)
{
  if (n < 0)
    throw ValidationError("negative coordinate count");
  rel_.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw ValidationError("coordinate relation pair out of range");
    rel_[static_cast<std::size_t>(a) * n + b] = 1;
  }
  for (int a = 0; a < n; ++a)
    rel_[static_cast<std::size_t>(a) * n + a] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rel_[static_cast<std::size_t>(a) * n + b])
        leq.emplace_back(a, b);
}

LocalGroupoid LocalGroupoid::action(int underlying_size, std::vector<int> objects,
                                    GroupPtr ambient, std::vector<int> elements,
                                    std::function<int(int, int)> const &act,
                                    std::vector<int> blocks)
{
  LocalGroupoid L;
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  L.pos_.assign(underlying_size, -1);
  for (std::size_t p = 0; p < objects.size(); ++p) {
    int x = objects[p];
    if (x < 0 || x >= underlying_size)
      throw ValidationError("local object outside the underlying set");
    L.pos_[x] = static_cast<int>(p);
  }
  L.objects_ = std::move(objects);

  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements[0] != 0)
    throw ValidationError("local group must contain the identity");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 0 || elements[i] >= ambient->order())
      throw ValidationError("local group label out of range");
    L.element_pos_[elements[i]] = static_cast<int>(i);
  }
  for (int g : elements)
    for (int h : elements)
      if (!L.element_pos_.count(ambient->mul(g, h)))
        throw ValidationError("local group elements are not closed");
  L.elements_ = std::move(elements);
  L.ambient_ = std::move(ambient);

  std::size_t nobj = L.objects_.size();
  L.act_.resize(L.elements_.size() * nobj);
  for (std::size_t e = 0; e < L.elements_.size(); ++e)
    for (std::size_t p = 0; p < nobj; ++p) {
      int y = act(L.elements_[e], L.objects_[p]);
      if (y < 0 || y >= underlying_size || L.pos_[y] < 0)
        throw ValidationError("local action leaves the object set");
      L.act_[e * nobj + p] = y;
    }
  for (std::size_t p = 0; p < nobj; ++p)
    if (L.act_[p] != L.objects_[p])
      throw ValidationError("identity does not act trivially");
  std::size_t ne = L.elements_.size();
  bool small = ne * ne * nobj <= 50000000;
  for (std::size_t e = 0; small && e < ne; ++e)
    for (std::size_t f = 0; f < ne; ++f) {
      int ef = L.element_pos_.at(L.ambient_->mul(L.elements_[e], L.elements_[f]));
      for (std::size_t p = 0; p < nobj; ++p) {
        int inner = L.act_[f * nobj + p];
        if (L.act_[e * nobj + L.pos_[inner]] != L.act_[ef * nobj + p])
          throw ValidationError("local action is not a group action");
      }
    }

  if (!blocks.empty()) {
    if (blocks.size() != nobj)
      throw ValidationError("block list has wrong length");
    std::map<int, int> renumber;
    for (int &b : blocks)
      b = renumber.emplace(b, static_cast<int>(renumber.size())).first->second;
    L.block_lists_.resize(renumber.size());
    for (std::size_t p = 0; p < nobj; ++p)
      L.block_lists_[blocks[p]].push_back(L.objects_[p]);
    bool trivial = std::all_of(L.block_lists_.begin(), L.block_lists_.end(),
                               [](auto const &b) { return b.size() == 1; });
    if (!trivial)
      L.blocks_ = std::move(blocks);
    else
      L.block_lists_.clear();
    // The equivalence relation must be invariant under the group.
    for (std::size_t e = 0; e < L.elements_.size() && !L.blocks_.empty(); ++e)
      for (auto const &blk : L.block_lists_) {
        int b0 = L.blocks_[L.pos_[L.act_[e * nobj + L.pos_[blk[0]]]]];
        for (int x : blk)
          if (L.blocks_[L.pos_[L.act_[e * nobj + L.pos_[x]]]] != b0)
            throw ValidationError("equivalence relation is not invariant under the local group");
      }
  }

  L.generators_ = subset_generators(*L.ambient_, L.elements_);
  L.derive_orbits();
  return L;
}

LocalGroupoid LocalGroupoid::equivalence(int underlying_size,
                                         std::vector<std::vector<int>> const &classes)
{
  std::vector<int> objects;
  std::map<int, int> cls;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int x : classes[c]) {
      if (!cls.emplace(x, static_cast<int>(c)).second)
        throw ValidationError("equivalence classes overlap");
      objects.push_back(x);
    }
  std::sort(objects.begin(), objects.end());
  std::vector<int> blocks;
  for (int x : objects)
    blocks.push_back(cls[x]);
  return action(underlying_size, objects, FiniteGroup::trivial(), {0},
                [](int, int x) { return x; }, blocks);
}

void LocalGroupoid::derive_orbits()
{
  std::size_t nobj = objects_.size();
  UnionFind uf(nobj);
  for (int g : generators_) {
    std::size_t e = static_cast<std::size_t>(element_pos_.at(g));
    for (std::size_t p = 0; p < nobj; ++p)
      uf.unite(p, static_cast<std::size_t>(pos_[act_[e * nobj + p]]));
  }
  for (auto const &blk : block_lists_)
    for (int x : blk)
      uf.unite(static_cast<std::size_t>(pos_[blk[0]]), static_cast<std::size_t>(pos_[x]));
  orbit_id_.assign(nobj, -1);
  std::map<std::size_t, int> root_id;
  for (std::size_t p = 0; p < nobj; ++p) {
    auto [it, fresh] = root_id.emplace(uf.find(p), static_cast<int>(orbits_.size()));
    if (fresh)
      orbits_.emplace_back();
    orbit_id_[p] = it->second;
    orbits_[it->second].push_back(objects_[p]);
  }
}

int LocalGroupoid::element_position(int label) const
{
  auto it = element_pos_.find(label);
  return it == element_pos_.end() ? -1 : it->second;
}

int LocalGroupoid::act(int label, int x) const
{
  return act_[static_cast<std::size_t>(element_pos_.at(label)) * objects_.size() + pos_[x]];
}

int LocalGroupoid::block_id(int x) const
{
  return blocks_.empty() ? pos_[x] : blocks_[pos_[x]];
}

bool LocalGroupoid::same_block(int x, int y) const
{
  if (x == y)
    return true;
  if (blocks_.empty() || pos_[x] < 0 || pos_[y] < 0)
    return false;
  return blocks_[pos_[x]] == blocks_[pos_[y]];
}

std::vector<int> LocalGroupoid::block_members(int x) const
{
  if (blocks_.empty())
    return {x};
  return block_lists_[blocks_[pos_[x]]];
}

bool LocalGroupoid::is_arrow(Arrow const &a) const
{
  if (a.source < 0 || a.target < 0 || a.source >= static_cast<int>(pos_.size()) ||
      a.target >= static_cast<int>(pos_.size()))
    return false;
  if (!contains(a.source) || !contains(a.target) || element_position(a.label) < 0)
    return false;
  return same_block(act(a.label, a.source), a.target);
}

std::vector<Arrow> LocalGroupoid::arrows_from(int x) const
{
  std::vector<Arrow> out;
  for (int g : elements_)
    for (int y : block_members(act(g, x)))
      out.push_back({x, y, g});
  return out;
}

std::vector<Arrow> LocalGroupoid::generating_arrows() const
{
  std::vector<Arrow> out;
  for (int g : generators_)
    for (int x : objects_)
      out.push_back({x, act(g, x), g});
  for (auto const &blk : block_lists_)
    for (int x : blk)
      for (int y : blk)
        if (x != y)
          out.push_back({x, y, 0});
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t LocalGroupoid::arrow_count() const
{
  std::size_t total = 0;
  for (int x : objects_)
    total += block_members(x).size();
  return total * elements_.size();
}

GroupoidAtlas::GroupoidAtlas(int underlying_size, CoordinateSystem coords,
                             std::vector<LocalGroupoid> locals, StructureMaps maps,
                             std::vector<std::string> point_labels)
: size_(underlying_size)
, coords_(std::move(coords))
, locals_(std::move(locals))
, maps_(std::move(maps))
, labels_(std::move(point_labels))
{
  if (size_ < 0)
    throw ValidationError("negative underlying size");
  if (static_cast<int>(locals_.size()) != coords_.size)
    throw ValidationError("one local groupoid per coordinate required");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != size_)
    throw ValidationError("point label count mismatch");
  for (auto const &L : locals_)
    if (L.underlying_size() != size_)
      throw ValidationError("local groupoid built over a different underlying set");

  point_orbits_.resize(size_);
  for (int a = 0; a < coords_.size; ++a)
    for (std::size_t o = 0; o < locals_[a].orbits().size(); ++o)
      for (int x : locals_[a].orbits()[o])
        point_orbits_[x].emplace_back(a, static_cast<int>(o));

  for (auto const &[key, vec] : maps_) {
    if (!coords_.related(key.first, key.second))
      throw ValidationError("structure map given for unrelated coordinates");
    if (vec.size() != locals_[key.first].elements().size())
      throw ValidationError("structure map has wrong length");
  }

  for (auto [a, b] : coords_.leq) {
    if (a == b)
      continue;
    LocalGroupoid const &La = locals_[a], &Lb = locals_[b];
    for (int x : La.objects()) {
      if (!Lb.contains(x))
        continue;
      for (int y : La.orbits()[La.orbit_of(x)])
        if (!Lb.contains(y))
          throw ValidationError("intersection of local sets for coordinates " +
                                std::to_string(a) + " <= " + std::to_string(b) +
                                " is not a union of orbits");
      for (int y : La.block_members(x))
        if (!Lb.same_block(x, y))
          throw ValidationError("structure map cannot carry equivalence arrows");
      for (int g : La.elements()) {
        int h = structure_map(a, b, g);
        if (Lb.element_position(h) < 0)
          throw ValidationError("structure map label outside the target local group");
        if (!Lb.same_block(Lb.act(h, x), La.act(g, x)))
          throw ValidationError("structure map does not respect arrow targets");
      }
    }
    auto mp = maps_.find({a, b});
    if (mp != maps_.end()) {
      for (int g : La.elements())
        for (int h : La.elements())
          if (structure_map(a, b, La.ambient().mul(g, h)) !=
              Lb.ambient().mul(structure_map(a, b, g), structure_map(a, b, h)))
            throw ValidationError("structure map is not a homomorphism");
    }
  }
}

int GroupoidAtlas::structure_map(int alpha, int beta, int label) const
{
  if (alpha == beta)
    return label;
  auto it = maps_.find({alpha, beta});
  if (it == maps_.end())
    return label;
  int p = locals_[alpha].element_position(label);
  return p < 0 ? -1 : it->second[p];
}

std::string GroupoidAtlas::point_label(int x) const
{
  return labels_.empty() ? std::to_string(x) : labels_[x];
}

bool GroupoidAtlas::same_local_orbit(int x, int y) const
{
  for (auto [a, o] : point_orbits_[x])
    if (locals_[a].contains(y) && locals_[a].orbit_of(y) == o)
      return true;
  return false;
}

std::vector<int> GroupoidAtlas::common_coords(int x, int y) const
{
  std::vector<int> out;
  for (auto [a, o] : point_orbits_[x])
    if (locals_[a].contains(y) && locals_[a].orbit_of(y) == o)
      out.push_back(a);
  return out;
}

bool GroupoidAtlas::in_one_orbit(std::vector<int> const &pts) const
{
  if (pts.empty())
    return true;
  for (auto [a, o] : point_orbits_[pts[0]]) {
    bool all = std::all_of(pts.begin(), pts.end(), [&, a = a, o = o](int y) {
      return locals_[a].contains(y) && locals_[a].orbit_of(y) == o;
    });
    if (all)
      return true;
  }
  return false;
}

StrongWitness StrongWitness::from_table(std::vector<int> coord_map,
                                        std::map<std::pair<int, Arrow>, int> table)
{
  StrongWitness w;
  w.coord_map = std::move(coord_map);
  auto shared = std::make_shared<std::map<std::pair<int, Arrow>, int>>(std::move(table));
  w.arrow_map = [shared](int alpha, Arrow const &a) {
    auto it = shared->find({alpha, a});
    return it == shared->end() ? -1 : it->second;
  };
  return w;
}

StrongWitness StrongWitness::from_group_maps(std::vector<int> coord_map,
                                             std::vector<std::map<int, int>> maps)
{
  StrongWitness w;
  w.coord_map = std::move(coord_map);
  auto shared = std::make_shared<std::vector<std::map<int, int>>>(std::move(maps));
  w.arrow_map = [shared](int alpha, Arrow const &a) {
    if (alpha < 0 || alpha >= static_cast<int>(shared->size()))
      return -1;
    auto it = (*shared)[alpha].find(a.label);
    return it == (*shared)[alpha].end() ? -1 : it->second;
  };
  return w;
}

AtlasMorphism identity_morphism(AtlasPtr A, bool strong)
{
  AtlasMorphism f;
  f.source = A;
  f.target = A;
  f.point_map.resize(A->size());
  std::iota(f.point_map.begin(), f.point_map.end(), 0);
  if (strong) {
    StrongWitness w;
    w.coord_map.resize(A->coord_count());
    std::iota(w.coord_map.begin(), w.coord_map.end(), 0);
    w.arrow_map = [](int, Arrow const &a) { return a.label; };
    f.witness = std::move(w);
  }
  return f;
}

namespace {

CheckResult fail(std::string reason, int coord = -1, std::vector<int> witness = {})
{
  CheckResult r;
  r.ok = false;
  r.reason = std::move(reason);
  r.coord = coord;
  r.witness = std::move(witness);
  return r;
}

CheckResult check_point_map(AtlasMorphism const &f)
{
  if (!f.source || !f.target)
    return fail("morphism lacks source or target");
  if (static_cast<int>(f.point_map.size()) != f.source->size())
    return fail("point map is not total on the source");
  for (int y : f.point_map)
    if (y < 0 || y >= f.target->size())
      return fail("point map leaves the target");
  return {};
}

} // namespace

CheckResult is_weak_morphism(AtlasMorphism const &f)
{
  if (auto r = check_point_map(f); !r)
    return r;
  GroupoidAtlas const &A = *f.source, &B = *f.target;
  for (int a = 0; a < A.coord_count(); ++a)
    for (auto const &O : A.local(a).orbits()) {
      std::vector<int> img;
      for (int x : O)
        img.push_back(f.point_map[x]);
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      if (!B.in_one_orbit(img))
        return fail("orbit image lies in no single target orbit", a, O);
    }
  return {};
}

CheckResult is_strong_morphism(AtlasMorphism const &f)
{
  if (!f.witness)
    throw ValidationError("no strong witness supplied");
  if (auto r = check_point_map(f); !r)
    return r;
  GroupoidAtlas const &A = *f.source, &B = *f.target;
  StrongWitness const &w = *f.witness;
  if (static_cast<int>(w.coord_map.size()) != A.coord_count())
    return fail("coordinate map is not total");
  for (int b : w.coord_map)
    if (b < 0 || b >= B.coord_count())
      return fail("coordinate map leaves the target");
  for (auto [a, a2] : A.coords().leq)
    if (!B.coords().related(w.coord_map[a], w.coord_map[a2]))
      return fail("coordinate map does not preserve the relation", a, {a, a2});

  auto const &fp = f.point_map;
  for (int a = 0; a < A.coord_count(); ++a) {
    LocalGroupoid const &L = A.local(a);
    LocalGroupoid const &M = B.local(w.coord_map[a]);
    for (int x : L.objects())
      if (!M.contains(fp[x]))
        return fail("local set not carried into the target local set", a, {x});

    std::map<Arrow, int> image;
    auto F = [&](Arrow const &arr) {
      auto it = image.find(arr);
      if (it != image.end())
        return it->second;
      int h = w.arrow_map(a, arr);
      image.emplace(arr, h);
      return h;
    };
    for (int x : L.objects())
      for (Arrow const &g : L.arrows_from(x)) {
        int h = F(g);
        if (h < 0 || M.element_position(h) < 0)
          return fail("arrow has no image", a, {g.source, g.target, g.label});
        if (!M.is_arrow({fp[g.source], fp[g.target], h}))
          return fail("arrow image is not an arrow between image points", a,
                      {g.source, g.target, g.label});
        if (g.source == g.target && g.label == 0 && h != 0)
          return fail("identity arrow not preserved", a, {g.source});
      }
    for (int x : L.objects())
      for (Arrow const &g : L.arrows_from(x))
        for (Arrow const &k : L.arrows_from(g.target)) {
          Arrow comp{x, k.target, L.ambient().mul(k.label, g.label)};
          if (F(comp) != M.ambient().mul(F(k), F(g)))
            return fail("composition not preserved", a,
                        {g.source, g.target, g.label, k.target, k.label});
        }
  }

  for (auto [a, a2] : A.coords().leq) {
    if (a == a2)
      continue;
    LocalGroupoid const &L = A.local(a), &L2 = A.local(a2);
    int b = w.coord_map[a], b2 = w.coord_map[a2];
    for (int x : L.objects()) {
      if (!L2.contains(x))
        continue;
      for (Arrow const &g : L.arrows_from(x)) {
        Arrow moved{g.source, g.target, A.structure_map(a, a2, g.label)};
        int lhs = w.arrow_map(a2, moved);
        int rhs = B.structure_map(b, b2, w.arrow_map(a, g));
        if (lhs != rhs)
          return fail("naturality square does not commute", a,
                      {a2, g.source, g.target, g.label});
      }
    }
  }
  return {};
}

AtlasPtr build_single_domain(GroupPtr G, std::vector<Subgroup> const &subgroups)
{
  if (subgroups.empty())
    throw ValidationError("subgroup list is empty");
  int n = G->order();
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<LocalGroupoid> locals;
  for (auto const &H : subgroups) {
    if (H.parent_ptr() != G)
      throw ValidationError("subgroup does not belong to the group");
    locals.push_back(LocalGroupoid::action(n, all, G, H.elements(),
                                           [&G](int h, int x) { return G->mul(h, x); }));
  }
  std::vector<std::string> labels;
  for (int g = 0; g < n; ++g)
    labels.push_back(G->label(g));
  auto A = std::make_shared<GroupoidAtlas>(
      n, CoordinateSystem::discrete(static_cast<int>(subgroups.size())),
      std::move(locals), GroupoidAtlas::StructureMaps{}, std::move(labels));
  A->base_point = 0;
  A->single_domain = SingleDomainInfo{G, subgroups};
  return A;
}

AtlasPtr build_relative(GroupPtr G, Subgroup const &K,
                        std::vector<Subgroup> const &subgroups)
{
  if (subgroups.empty())
    throw ValidationError("subgroup list is empty");
  if (K.parent_ptr() != G)
    throw ValidationError("K does not belong to the group");
  int n = G->order();
  std::vector<int> point_of(n, -1);
  std::vector<int> rep;
  for (int x = 0; x < n; ++x) {
    if (point_of[x] >= 0)
      continue;
    int p = static_cast<int>(rep.size());
    rep.push_back(x);
    for (int k : K.elements())
      point_of[G->mul(x, k)] = p;
  }
  int np = static_cast<int>(rep.size());
  std::vector<int> all(np);
  std::iota(all.begin(), all.end(), 0);
  std::vector<LocalGroupoid> locals;
  for (auto const &H : subgroups)
    locals.push_back(LocalGroupoid::action(np, all, G, H.elements(), [&](int h, int p) {
      return point_of[G->mul(h, rep[p])];
    }));
  std::vector<std::string> labels;
  for (int p = 0; p < np; ++p)
    labels.push_back(G->label(rep[p]) + "K");
  auto A = std::make_shared<GroupoidAtlas>(
      np, CoordinateSystem::discrete(static_cast<int>(subgroups.size())),
      std::move(locals), GroupoidAtlas::StructureMaps{}, std::move(labels));
  A->base_point = 0;
  if (K.order() == 1)
    A->single_domain = SingleDomainInfo{G, subgroups};
  return A;
}

IntersectionClosure build_intersection_closure(GroupPtr G,
                                               std::vector<Subgroup> const &subgroups)
{
  int k = static_cast<int>(subgroups.size());
  if (k == 0)
    throw ValidationError("subgroup list is empty");
  if (k > 12)
    throw BoundExceeded("subset-count bound exceeded: at most 12 subgroups");

  IntersectionClosure out;
  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1)
        s.push_back(i);
    out.subsets.push_back(s);
  }
  std::stable_sort(out.subsets.begin(), out.subsets.end(),
                   [](auto const &a, auto const &b) {
                     return a.size() != b.size() ? a.size() < b.size() : a < b;
                   });
  int nc = static_cast<int>(out.subsets.size());
  std::vector<std::pair<int, int>> leq;
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (std::includes(out.subsets[a].begin(), out.subsets[a].end(),
                        out.subsets[b].begin(), out.subsets[b].end()))
        leq.emplace_back(a, b);

  int n = G->order();
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<LocalGroupoid> locals;
  for (auto const &s : out.subsets) {
    Subgroup H = subgroups[s[0]];
    for (std::size_t i = 1; i < s.size(); ++i)
      H = subgroup_intersection(H, subgroups[s[i]]);
    out.groups.push_back(H);
    locals.push_back(LocalGroupoid::action(n, all, G, H.elements(),
                                           [&G](int h, int x) { return G->mul(h, x); }));
  }
  std::vector<std::string> labels;
  for (int g = 0; g < n; ++g)
    labels.push_back(G->label(g));
  auto A = std::make_shared<GroupoidAtlas>(n, CoordinateSystem(nc, leq), std::move(locals),
                                           GroupoidAtlas::StructureMaps{}, std::move(labels));
  A->base_point = 0;
  out.atlas = A;
  return out;
}

std::vector<std::vector<IndexPair>> closed_subsets(int n)
{
  std::vector<IndexPair> delta;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        delta.emplace_back(i, j);
  std::vector<std::vector<IndexPair>> out;
  int m = static_cast<int>(delta.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::set<IndexPair> s;
    for (int b = 0; b < m; ++b)
      if (mask >> b & 1)
        s.insert(delta[b]);
    bool closed = true;
    for (auto [i, j] : s)
      for (auto [j2, k] : s)
        if (j == j2 && (i == k || !s.count({i, k})))
          closed = false;
    if (closed)
      out.emplace_back(s.begin(), s.end());
  }
  std::stable_sort(out.begin(), out.end(), [](auto const &a, auto const &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

GlAtlas build_gl(int n, int modulus)
{
  GlAtlas out;
  out.gl = general_linear_group(n, modulus);
  out.coords = closed_subsets(n);
  GroupPtr G = out.gl.group;
  int nc = static_cast<int>(out.coords.size());
  std::vector<std::pair<int, int>> leq;
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (std::includes(out.coords[b].begin(), out.coords[b].end(),
                        out.coords[a].begin(), out.coords[a].end()))
        leq.emplace_back(a, b);
  int order = G->order();
  std::vector<int> all(order);
  std::iota(all.begin(), all.end(), 0);
  std::vector<LocalGroupoid> locals;
  for (auto const &alpha : out.coords) {
    std::vector<int> gens;
    for (auto [i, j] : alpha)
      for (int r = 1; r < modulus; ++r)
        gens.push_back(out.gl.elementary(i, j, r));
    Subgroup H = Subgroup::generated(G, gens);
    out.local_groups.push_back(H);
    locals.push_back(LocalGroupoid::action(order, all, G, H.elements(),
                                           [&G](int h, int x) { return G->mul(h, x); }));
  }
  std::vector<std::string> labels;
  if (order <= 20000)
    for (int g = 0; g < order; ++g)
      labels.push_back(G->label(g));
  auto A = std::make_shared<GroupoidAtlas>(order, CoordinateSystem(nc, leq),
                                           std::move(locals),
                                           GroupoidAtlas::StructureMaps{}, std::move(labels));
  A->base_point = 0;
  out.atlas = A;
  return out;
}

ProductAtlas product_atlas(AtlasPtr A, AtlasPtr B)
{
  int na = A->size(), nb = B->size();
  int ca = A->coord_count(), cb = B->coord_count();
  std::map<std::pair<FiniteGroup const *, FiniteGroup const *>, GroupPtr> products;
  auto product_of = [&](GroupPtr g, GroupPtr h) {
    auto key = std::make_pair(g.get(), h.get());
    auto it = products.find(key);
    if (it == products.end())
      it = products.emplace(key, FiniteGroup::direct_product(g, h)).first;
    return it->second;
  };

  std::vector<LocalGroupoid> locals;
  std::vector<int> amb_b(static_cast<std::size_t>(ca) * cb);
  for (int a = 0; a < ca; ++a)
    for (int b = 0; b < cb; ++b) {
      LocalGroupoid const &La = A->local(a), &Lb = B->local(b);
      GroupPtr P = product_of(La.ambient_ptr(), Lb.ambient_ptr());
      int mb = Lb.ambient().order();
      amb_b[static_cast<std::size_t>(a) * cb + b] = mb;
      std::vector<int> objects, blocks, elements;
      int nblk = static_cast<int>(Lb.objects().size());
      for (int x : La.objects())
        for (int y : Lb.objects()) {
          objects.push_back(x * nb + y);
          blocks.push_back(La.block_id(x) * nblk + Lb.block_id(y));
        }
      for (int g : La.elements())
        for (int h : Lb.elements())
          elements.push_back(g * mb + h);
      bool discrete = La.discrete_blocks() && Lb.discrete_blocks();
      locals.push_back(LocalGroupoid::action(
          na * nb, objects, P, elements,
          [&, mb](int l, int p) {
            return La.act(l / mb, p / nb) * nb + Lb.act(l % mb, p % nb);
          },
          discrete ? std::vector<int>{} : blocks));
    }

  std::vector<std::pair<int, int>> leq;
  GroupoidAtlas::StructureMaps maps;
  for (auto [a, a2] : A->coords().leq)
    for (auto [b, b2] : B->coords().leq) {
      int c = a * cb + b, c2 = a2 * cb + b2;
      leq.emplace_back(c, c2);
      if (c == c2)
        continue;
      LocalGroupoid const &src = locals[c];
      int mb = amb_b[c], mb2 = amb_b[c2];
      std::vector<int> m;
      for (int l : src.elements())
        m.push_back(A->structure_map(a, a2, l / mb) * mb2 + B->structure_map(b, b2, l % mb));
      maps.emplace(std::make_pair(c, c2), std::move(m));
    }

  std::vector<std::string> labels;
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      labels.push_back("(" + A->point_label(x) + "," + B->point_label(y) + ")");

  ProductAtlas out;
  auto P = std::make_shared<GroupoidAtlas>(na * nb, CoordinateSystem(ca * cb, leq),
                                           std::move(locals), std::move(maps),
                                           std::move(labels));
  if (A->base_point && B->base_point)
    P->base_point = *A->base_point * nb + *B->base_point;
  out.atlas = P;

  auto amb = std::make_shared<std::vector<int>>(std::move(amb_b));
  out.proj_a.source = P;
  out.proj_a.target = A;
  out.proj_b.source = P;
  out.proj_b.target = B;
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      out.proj_a.point_map.push_back(x);
      out.proj_b.point_map.push_back(y);
    }
  StrongWitness wa, wb;
  for (int a = 0; a < ca; ++a)
    for (int b = 0; b < cb; ++b) {
      wa.coord_map.push_back(a);
      wb.coord_map.push_back(b);
    }
  wa.arrow_map = [amb](int c, Arrow const &g) { return g.label / (*amb)[c]; };
  wb.arrow_map = [amb](int c, Arrow const &g) { return g.label % (*amb)[c]; };
  out.proj_a.witness = std::move(wa);
  out.proj_b.witness = std::move(wb);
  return out;
}

EquivAtlas equiv_atlas(AtlasPtr A)
{
  std::vector<LocalGroupoid> locals;
  for (int a = 0; a < A->coord_count(); ++a)
    locals.push_back(LocalGroupoid::equivalence(A->size(), A->local(a).orbits()));
  EquivAtlas out;
  auto E = std::make_shared<GroupoidAtlas>(A->size(), A->coords(), std::move(locals),
                                           GroupoidAtlas::StructureMaps{},
                                           A->point_labels());
  E->base_point = A->base_point;
  out.atlas = E;
  out.quotient.source = A;
  out.quotient.target = E;
  out.quotient.point_map.resize(A->size());
  std::iota(out.quotient.point_map.begin(), out.quotient.point_map.end(), 0);
  StrongWitness w;
  w.coord_map.resize(A->coord_count());
  std::iota(w.coord_map.begin(), w.coord_map.end(), 0);
  w.arrow_map = [](int, Arrow const &) { return 0; };
  out.quotient.witness = std::move(w);
  return out;
}

AtlasPtr one_point_atlas()
{
  std::vector<LocalGroupoid> locals{LocalGroupoid::equivalence(1, {{0}})};
  auto A = std::make_shared<GroupoidAtlas>(1, CoordinateSystem::discrete(1), std::move(locals),
                                           GroupoidAtlas::StructureMaps{},
                                           std::vector<std::string>{"*"});
  A->base_point = 0;
  return A;
}

InfimumReport check_infimum(GroupoidAtlas const &A, int max_frame_size)
{
  std::set<std::vector<int>> seen;
  InfimumReport report;
  for (int a = 0; a < A.coord_count(); ++a)
    for (auto const &O : A.local(a).orbits()) {
      int m = static_cast<int>(O.size());
      int kmax = std::min(max_frame_size, m);
      for (int k = 1; k <= kmax; ++k) {
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
          std::vector<int> U;
          for (int i : idx)
            U.push_back(O[i]);
          if (seen.insert(U).second) {
            std::vector<int> S;
            for (auto [c, o] : A.orbits_containing(U[0])) {
              LocalGroupoid const &L = A.local(c);
              bool all = std::all_of(U.begin(), U.end(), [&, o = o](int y) {
                return L.contains(y) && L.orbit_of(y) == o;
              });
              if (all)
                S.push_back(c);
            }
            bool least = S.empty();
            for (int c0 : S) {
              if (std::all_of(S.begin(), S.end(),
                              [&](int c) { return A.coords().related(c0, c); })) {
                least = true;
                break;
              }
            }
            if (!least) {
              report.ok = false;
              report.frame = U;
              report.coords = S;
              return report;
            }
          }
          int i = k - 1;
          while (i >= 0 && idx[i] == m - k + i)
            --i;
          if (i < 0)
            break;
          ++idx[i];
          for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
        }
      }
    }
  return report;
}

CheckResult is_volodin_model(GroupPtr G, std::vector<Subgroup> const &subgroups,
                             CoordinateSystem const &coords)
{
  int k = static_cast<int>(subgroups.size());
  if (coords.size != k)
    return fail("coordinate count differs from subgroup count");
  for (int a = 0; a < k; ++a)
    if (subgroups[a].parent_ptr() != G)
      return fail("subgroup does not belong to the group", a);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (subgroups[a] == subgroups[b])
        return fail("distinct indices carry equal subgroups", a, {a, b});
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (coords.related(a, b) != subgroups[a].is_subset_of(subgroups[b]))
        return fail("order does not match subgroup inclusion", a, {a, b});
  auto find = [&](Subgroup const &H) {
    for (int c = 0; c < k; ++c)
      if (subgroups[c] == H)
        return c;
    return -1;
  };
  if (find(Subgroup::trivial(G)) < 0)
    return fail("trivial subgroup missing");
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      if (find(subgroup_intersection(subgroups[a], subgroups[b])) < 0)
        return fail("family not closed under intersection", a, {a, b});
      bool bounded = false;
      for (int c = 0; c < k && !bounded; ++c)
        bounded = subgroups[a].is_subset_of(subgroups[c]) &&
                  subgroups[b].is_subset_of(subgroups[c]);
      if (bounded && find(subgroup_join(subgroups[a], subgroups[b])) < 0)
        return fail("generated subgroup missing", a, {a, b});
    }
  return {};
}

} // namespace gatlas
