#include "gatlas/examples.hpp"

#include <numeric>

namespace gatlas::examples {

namespace {

SingleDomain make(std::string name, int degree, std::vector<Perm> const &gens,
                  std::vector<std::vector<Perm>> const &family)
{
  SingleDomain ex;
  ex.name = std::move(name);
  ex.group = closure_from_generators(degree, gens);
  for (auto const &perms : family) {
    std::vector<int> idx;
    for (auto const &p : perms)
      idx.push_back(ex.group->index_of(p));
    ex.subgroups.push_back(Subgroup::generated(ex.group, idx));
  }
  ex.atlas = build_single_domain(ex.group, ex.subgroups);
  return ex;
}

/// Quaternion unit (sign, u) with u ∈ {1, i, j, k} encoded as 2u + (sign < 0).
int quat_mul(int x, int y)
{
  static int const unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static int const sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  int ux = x / 2, uy = y / 2;
  int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign[ux][uy];
  return 2 * unit[ux][uy] + (s < 0);
}

Perm left_mult(int x)
{
  Perm p(8);
  for (int y = 0; y < 8; ++y)
    p[y] = quat_mul(x, y);
  return p;
}

} // namespace

SingleDomain s3()
{
  Perm a{1, 2, 0}, b{1, 0, 2};
  return make("s3", 3, {a, b}, {{a}, {b}});
}

SingleDomain k4()
{
  Perm a{1, 0, 3, 2}, b{2, 3, 0, 1}, c{3, 2, 1, 0};
  return make("k4", 4, {a, b}, {{a}, {b}, {c}});
}

SingleDomain q8()
{
  Perm i = left_mult(2), j = left_mult(4), k = left_mult(6);
  return make("q8", 8, {i, j}, {{i}, {j}, {k}});
}

SingleDomain s3_transpositions()
{
  Perm s{1, 0, 2}, t{0, 2, 1};
  return make("s3_transpositions", 3, {s, t}, {{s}, {t}});
}

SingleDomain s4()
{
  Perm t01{1, 0, 2, 3}, t12{0, 2, 1, 3}, t23{0, 1, 3, 2};
  return make("s4", 4, {t01, t12, t23}, {{t01, t12}, {t12, t23}, {t01, t23}});
}

std::vector<SingleDomain> all_single_domain()
{
  return {s3(), k4(), q8(), s3_transpositions(), s4()};
}

GroupPtr cyclic(int n)
{
  Perm p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    p[i] = (i + 1) % n;
  return closure_from_generators(n, {p});
}

AtlasPtr c2_interval()
{
  GroupPtr C2 = cyclic(2);
  auto L = LocalGroupoid::action(2, {0, 1}, C2, {0, 1},
                                 [](int g, int x) { return g ? 1 - x : x; });
  return std::make_shared<GroupoidAtlas>(2, CoordinateSystem::discrete(1),
                                         std::vector<LocalGroupoid>{L});
}

AtlasPtr c3_cycle()
{
  GroupPtr C3 = cyclic(3);
  auto L = LocalGroupoid::action(3, {0, 1, 2}, C3, {0, 1, 2},
                                 [C3](int g, int x) { return C3->perm(g)[x]; });
  return std::make_shared<GroupoidAtlas>(3, CoordinateSystem::discrete(1),
                                         std::vector<LocalGroupoid>{L});
}

CoveringCandidate covering_counterexample()
{
  GroupPtr C2 = cyclic(2);
  std::vector<LocalGroupoid> up;
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}})
    up.push_back(LocalGroupoid::action(3, {u, v}, C2, {0, 1}, [u, v](int g, int x) {
      return g ? (x == u ? v : u) : x;
    }));
  auto B = std::make_shared<GroupoidAtlas>(3, CoordinateSystem::discrete(3), std::move(up),
                                           GroupoidAtlas::StructureMaps{},
                                           std::vector<std::string>{"a", "b", "c"});
  return CoveringCandidate{AtlasMorphism{B, c3_cycle(), {0, 1, 2}, std::nullopt}};
}

DoubleCover hexagon_double_cover()
{
  DoubleCover d;
  d.base = cycle_graph(6);
  d.cover = build_cover_from_perm_rep(d.base, 0, {Perm{1, 0}}, 2);
  d.candidate.morphism = AtlasMorphism{atlas_of_complex(*d.cover.total),
                                       atlas_of_complex(d.base), d.cover.projection.vertex_map,
                                       std::nullopt};
  return d;
}

SimplicialComplex two_triangles()
{
  return SimplicialComplex::from_maximal(4, {{0, 1, 2}, {1, 2, 3}}, {"1", "2", "3", "4"});
}

SimplicialComplex cycle_graph(int n)
{
  std::vector<Simplex> edges;
  for (int i = 0; i < n; ++i) {
    Simplex e{i, (i + 1) % n};
    std::sort(e.begin(), e.end());
    edges.push_back(e);
  }
  return SimplicialComplex::from_maximal(n, edges);
}

SimplicialComplex sphere_boundary(int d)
{
  std::vector<Simplex> faces;
  for (int skip = 0; skip <= d + 1; ++skip) {
    Simplex f;
    for (int v = 0; v <= d + 1; ++v)
      if (v != skip)
        f.push_back(v);
    faces.push_back(f);
  }
  return SimplicialComplex::from_maximal(d + 2, faces);
}

SimplicialComplex full_simplex(int d)
{
  Simplex s(static_cast<std::size_t>(d + 1));
  std::iota(s.begin(), s.end(), 0);
  return SimplicialComplex::from_maximal(d + 1, {s});
}

} // namespace gatlas::examples
