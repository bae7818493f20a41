#include <doctest.h>

#include <algorithm>
#include <set>

#include "gatlas/atlas.hpp"
#include "gatlas/error.hpp"
#include "gatlas/examples.hpp"
#include "gatlas/homotopy.hpp"
#include "../oracles.hpp"

using namespace gatlas;
namespace ex = gatlas::examples;

namespace {

std::size_t orbit_count(GroupoidAtlas const &A)
{
  std::size_t n = 0;
  for (int c = 0; c < A.coord_count(); ++c)
    n += A.local(c).orbits().size();
  return n;
}

std::set<std::vector<int>> orbit_sets(GroupoidAtlas const &A, int c)
{
  auto const &o = A.local(c).orbits();
  return {o.begin(), o.end()};
}

/// Frames of size ≤ k, as sorted point sets lying in one orbit, by enumeration.
std::set<std::vector<int>> small_frames(GroupoidAtlas const &A, int k)
{
  std::set<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (!cur.empty() && A.in_one_orbit(cur))
      out.insert(cur);
    if (static_cast<int>(cur.size()) == k)
      return;
    for (int x = from; x < A.size(); ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

} // namespace

TEST_SUITE("atlas")
{
  TEST_CASE("single-domain orbits are left cosets")
  {
    for (auto const &e : ex::all_single_domain()) {
      REQUIRE(e.atlas->size() == e.group->order());
      REQUIRE(e.atlas->coord_count() == static_cast<int>(e.subgroups.size()));
      for (std::size_t i = 0; i < e.subgroups.size(); ++i) {
        auto cos = left_cosets(e.subgroups[i]);
        CHECK(orbit_sets(*e.atlas, static_cast<int>(i)) ==
              std::set<std::vector<int>>(cos.begin(), cos.end()));
      }
    }
    auto k4 = ex::k4();
    CHECK(orbit_count(*k4.atlas) == 6);
    for (int c = 0; c < 3; ++c)
      for (auto const &o : k4.atlas->local(c).orbits())
        CHECK(o.size() == 2);
    auto s3 = ex::s3();
    AtlasPtr trivial = build_single_domain(s3.group, {Subgroup::trivial(s3.group)});
    CHECK(orbit_count(*trivial) == 6);
  }

  TEST_CASE("relative atlas")
  {
    auto s3 = ex::s3();
    Subgroup a = s3.subgroups[0], b = s3.subgroups[1];
    AtlasPtr same = build_relative(s3.group, Subgroup::trivial(s3.group), s3.subgroups);
    for (int c = 0; c < 2; ++c)
      CHECK(orbit_sets(*same, c) == orbit_sets(*s3.atlas, c));
    AtlasPtr r1 = build_relative(s3.group, b, {a});
    CHECK(r1->size() == 3);
    CHECK(r1->local(0).orbits().size() == 1);
    // Orbits of H_2 on the cosets xK, K = <a>: brute force over double cosets.
    AtlasPtr r2 = build_relative(s3.group, a, {b});
    CHECK(r2->size() == 2);
    std::set<std::set<int>> dbl;
    for (int x = 0; x < 6; ++x) {
      std::set<int> d;
      for (int h : b.elements())
        for (int k : a.elements())
          d.insert(s3.group->mul(s3.group->mul(h, x), k));
      dbl.insert(d);
    }
    CHECK(r2->local(0).orbits().size() == dbl.size());
  }

  TEST_CASE("intersection closure")
  {
    auto q8 = ex::q8();
    IntersectionClosure ic = build_intersection_closure(q8.group, q8.subgroups);
    CHECK(ic.atlas->coord_count() == 7);
    for (std::size_t c = 0; c < ic.subsets.size(); ++c)
      if (ic.subsets[c].size() == 2)
        CHECK(ic.groups[c].order() == 2);
    CHECK(ic.subsets[0] == std::vector<int>{0});
    auto s3 = ex::s3();
    IntersectionClosure is3 = build_intersection_closure(s3.group, s3.subgroups);
    CHECK(is3.subsets.back() == std::vector<int>{0, 1});
    CHECK(is3.groups.back().order() == 1);
    // α ≤ β iff α ⊇ β
    CHECK(is3.atlas->coords().related(2, 0));
    CHECK_FALSE(is3.atlas->coords().related(0, 2));
    IntersectionClosure one = build_intersection_closure(s3.group, {s3.subgroups[0]});
    CHECK(orbit_sets(*one.atlas, 0) == orbit_sets(*build_single_domain(s3.group, {s3.subgroups[0]}), 0));
  }

  TEST_CASE("closed subsets and the GL atlas")
  {
    auto c2 = closed_subsets(2);
    CHECK(c2.size() == 3);
    CHECK(c2[0].empty());
    GlAtlas gl = build_gl(2, 2);
    CHECK(gl.atlas->coord_count() == 3);
    for (std::size_t c = 0; c < gl.coords.size(); ++c) {
      if (gl.coords[c].empty()) {
        CHECK(gl.local_groups[c].order() == 1);
        CHECK(gl.atlas->local(static_cast<int>(c)).orbits().size() == 6);
      } else {
        CHECK(gl.local_groups[c].order() == 2);
      }
    }
    // Action consistency: x and ε·x share an α-orbit.
    GlAtlas gl4 = build_gl(2, 4);
    for (std::size_t c = 0; c < gl4.coords.size(); ++c) {
      LocalGroupoid const &L = gl4.atlas->local(static_cast<int>(c));
      for (int eps : gl4.local_groups[c].generators())
        for (int x = 0; x < gl4.atlas->size(); ++x)
          CHECK(L.orbit_of(x) == L.orbit_of(gl4.gl.group->mul(eps, x)));
    }
  }

  TEST_CASE("closed subsets of Δ for n = 3 by brute force")
  {
    std::vector<IndexPair> delta;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        if (i != j)
          delta.push_back({i, j});
    std::set<std::vector<IndexPair>> closed;
    for (int mask = 0; mask < (1 << 6); ++mask) {
      std::set<IndexPair> s;
      for (int k = 0; k < 6; ++k)
        if (mask >> k & 1)
          s.insert(delta[k]);
      bool ok = true;
      for (auto [i, j] : s)
        for (auto [j2, k] : s)
          if (j == j2 && (i == k || !s.count({i, k})))
            ok = false;
      if (ok)
        closed.insert(std::vector<IndexPair>(s.begin(), s.end()));
    }
    auto mine = closed_subsets(3);
    CHECK(std::set<std::vector<IndexPair>>(mine.begin(), mine.end()) == closed);
  }

  TEST_CASE("product atlas")
  {
    auto s3 = ex::s3();
    ProductAtlas p = product_atlas(s3.atlas, s3.atlas);
    CHECK(p.atlas->size() == 36);
    CHECK(orbit_count(*p.atlas) == 25);
    CHECK(is_strong_morphism(p.proj_a).ok);
    CHECK(is_strong_morphism(p.proj_b).ok);
    ProductAtlas q = product_atlas(s3.atlas, one_point_atlas());
    CHECK(q.atlas->size() == 6);
    CHECK(orbit_count(*q.atlas) == orbit_count(*s3.atlas));
    // frames of size 2 in the product are pairs of frames
    auto c2 = ex::c2_interval();
    ProductAtlas pc = product_atlas(c2, ex::c3_cycle());
    int nb = 3;
    for (int u = 0; u < pc.atlas->size(); ++u)
      for (int v = 0; v < pc.atlas->size(); ++v) {
        bool left = c2->in_one_orbit({u / nb, v / nb});
        bool right = ex::c3_cycle()->in_one_orbit({u % nb, v % nb});
        CHECK(pc.atlas->in_one_orbit({u, v}) == (left && right));
      }
  }

  TEST_CASE("equivalence atlas")
  {
    auto s3 = ex::s3();
    AtlasPtr A = build_single_domain(s3.group, {s3.subgroups[0]});
    EquivAtlas e = equiv_atlas(A);
    CHECK(e.atlas->local(0).arrow_count() == 18);
    CHECK(orbit_sets(*e.atlas, 0) == orbit_sets(*A, 0));
    EquivAtlas ee = equiv_atlas(e.atlas);
    for (int x = 0; x < 6; ++x)
      CHECK(ee.atlas->local(0).arrows_from(x) == e.atlas->local(0).arrows_from(x));
    CHECK(is_strong_morphism(e.quotient).ok);
  }

  TEST_CASE("weak morphisms")
  {
    for (auto const &e : ex::all_single_domain())
      CHECK(is_weak_morphism(identity_morphism(e.atlas)).ok);
    AtlasPtr c2 = ex::c2_interval(), c3 = ex::c3_cycle();
    int count = 0;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        count += is_weak_morphism(AtlasMorphism{c2, c3, {x, y}, std::nullopt}).ok;
    CHECK(count == 9);
    auto partial = std::make_shared<GroupoidAtlas>(
        2, CoordinateSystem::discrete(1),
        std::vector<LocalGroupoid>{LocalGroupoid::equivalence(2, {{0}})});
    CheckResult r = is_weak_morphism(AtlasMorphism{one_point_atlas(), partial, {1}, std::nullopt});
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.reason.empty());
  }

  TEST_CASE("weak morphism equals frame preservation up to size 4")
  {
    AtlasPtr c2 = ex::c2_interval();
    auto s3 = ex::s3();
    AtlasPtr k = build_single_domain(s3.group, {s3.subgroups[1]});
    for (int mask = 0; mask < 36; ++mask) {
      std::vector<int> map{mask % 6, mask / 6};
      bool frames = true;
      for (auto const &f : small_frames(*c2, 4)) {
        std::vector<int> img;
        for (int x : f)
          img.push_back(map[x]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        frames = frames && k->in_one_orbit(img);
      }
      CHECK(is_weak_morphism(AtlasMorphism{c2, k, map, std::nullopt}).ok == frames);
    }
  }

  TEST_CASE("strong morphisms")
  {
    for (auto const &e : ex::all_single_domain())
      CHECK(is_strong_morphism(identity_morphism(e.atlas)).ok);
    AtlasPtr c2 = ex::c2_interval(), c3 = ex::c3_cycle();
    // (c, 0) ↦ (a², 0), hence (c, 1) ↦ (a, 2)
    std::map<std::pair<int, Arrow>, int> table{
        {{0, Arrow{0, 0, 0}}, 0}, {{0, Arrow{1, 1, 0}}, 0},
        {{0, Arrow{0, 1, 1}}, 2}, {{0, Arrow{1, 0, 1}}, 1}};
    AtlasMorphism f{c2, c3, {0, 2}, StrongWitness::from_table({0}, table)};
    CHECK(is_strong_morphism(f).ok);
    AtlasMorphism regular{c2, c3, {0, 2}, StrongWitness::from_group_maps({0}, {{{0, 0}, {1, 2}}})};
    CHECK_FALSE(is_strong_morphism(regular).ok);
    AtlasMorphism none{c2, c3, {0, 2}, std::nullopt};
    CHECK_THROWS_AS(is_strong_morphism(none), ValidationError);
  }

  TEST_CASE("infimum condition")
  {
    auto s3 = ex::s3();
    CHECK(check_infimum(*build_intersection_closure(s3.group, s3.subgroups).atlas, 3).ok);
    InfimumReport bad = check_infimum(*s3.atlas, 3);
    CHECK_FALSE(bad.ok);
    CHECK(bad.coords == std::vector<int>{0, 1});
    CHECK(check_infimum(*build_single_domain(s3.group, {s3.subgroups[0]}), 3).ok);
  }

  TEST_CASE("Volodin models")
  {
    auto s3 = ex::s3();
    GroupPtr G = s3.group;
    CHECK(is_volodin_model(G, {Subgroup::trivial(G)}, CoordinateSystem::discrete(1)).ok);
    auto subs = all_subgroups(G);
    std::vector<std::pair<int, int>> leq;
    for (std::size_t a = 0; a < subs.size(); ++a)
      for (std::size_t b = 0; b < subs.size(); ++b)
        if (subs[a].is_subset_of(subs[b]))
          leq.push_back({static_cast<int>(a), static_cast<int>(b)});
    CHECK(is_volodin_model(G, subs, CoordinateSystem(static_cast<int>(subs.size()), leq)).ok);
    CHECK_FALSE(is_volodin_model(G, s3.subgroups, CoordinateSystem::discrete(2)).ok);
  }

  TEST_CASE("local sets meet in unions of orbits")
  {
    std::vector<LocalGroupoid> locals{LocalGroupoid::equivalence(3, {{0, 1}}),
                                      LocalGroupoid::equivalence(3, {{1, 2}})};
    CHECK_THROWS_AS(GroupoidAtlas(3, CoordinateSystem(2, {{0, 1}}), locals), ValidationError);
    CHECK_NOTHROW(GroupoidAtlas(3, CoordinateSystem::discrete(2), locals));
  }
}
