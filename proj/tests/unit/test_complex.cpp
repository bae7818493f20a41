#include <doctest.h>

#include <algorithm>
#include <set>

#include "gatlas/complex.hpp"
#include "gatlas/error.hpp"
#include "gatlas/examples.hpp"
#include "../oracles.hpp"

using namespace gatlas;
namespace ex = gatlas::examples;

namespace {

/// Simplices of V(A) by enumerating point subsets inside one orbit.
std::set<Simplex> vietoris_oracle(GroupoidAtlas const &A)
{
  std::set<Simplex> out;
  for (int c = 0; c < A.coord_count(); ++c)
    for (auto const &o : A.local(c).orbits()) {
      std::size_t k = o.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        Simplex s;
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1)
            s.push_back(o[i]);
        out.insert(s);
      }
    }
  return out;
}

/// Nerve simplices: sets of distinct orbit sets with a common point.
std::set<std::set<std::vector<int>>> nerve_oracle(GroupoidAtlas const &A)
{
  std::set<std::vector<int>> verts;
  for (int c = 0; c < A.coord_count(); ++c)
    for (auto const &o : A.local(c).orbits())
      verts.insert(o);
  std::set<std::set<std::vector<int>>> out;
  for (int x = 0; x < A.size(); ++x) {
    std::vector<std::vector<int>> here;
    for (auto const &v : verts)
      if (std::binary_search(v.begin(), v.end(), x))
        here.push_back(v);
    for (std::size_t mask = 1; mask < (std::size_t{1} << here.size()); ++mask) {
      std::set<std::vector<int>> s;
      for (std::size_t i = 0; i < here.size(); ++i)
        if (mask >> i & 1)
          s.insert(here[i]);
      out.insert(s);
    }
  }
  return out;
}

} // namespace

TEST_SUITE("complexes")
{
  TEST_CASE("Vietoris complexes against subset enumeration")
  {
    for (auto const &e : ex::all_single_domain()) {
      SimplicialComplex V = vietoris_complex(*e.atlas);
      std::set<Simplex> mine(V.simplices().begin(), V.simplices().end());
      CHECK(mine == vietoris_oracle(*e.atlas));
    }
    SimplicialComplex V = vietoris_complex(*ex::s3().atlas);
    CHECK(V.f_vector() == std::vector<int>{6, 9, 2});
    auto maximal = V.maximal_simplices();
    CHECK(maximal.size() == 5);
    CHECK(std::count_if(maximal.begin(), maximal.end(),
                        [](Simplex const &s) { return s.size() == 3; }) == 2);
    SimplicialComplex Vk = vietoris_complex(*ex::k4().atlas);
    CHECK(Vk.f_vector() == std::vector<int>{4, 6});
    SimplicialComplex Vq = vietoris_complex(*ex::q8().atlas);
    CHECK(Vq.f_vector() == std::vector<int>{8, 28, 24, 6});
  }

  TEST_CASE("nerves against the intersection oracle")
  {
    for (auto const &e : ex::all_single_domain()) {
      NerveComplex N = nerve_complex(*e.atlas);
      std::set<std::set<std::vector<int>>> mine;
      for (auto const &s : N.complex.simplices()) {
        std::set<std::vector<int>> t;
        for (int v : s)
          t.insert(N.vertex_sets[v]);
        mine.insert(t);
      }
      CHECK(mine == nerve_oracle(*e.atlas));
    }
    CHECK(nerve_complex(*ex::s3().atlas).complex.f_vector() == std::vector<int>{5, 6});
    CHECK(nerve_complex(*ex::k4().atlas).complex.f_vector() == std::vector<int>{6, 12, 4});
    CHECK(nerve_complex(*ex::s4().atlas).complex.f_vector() == std::vector<int>{14, 36, 24});
  }

  TEST_CASE("from_simplices rejects families that are not closed")
  {
    CHECK_THROWS_AS(SimplicialComplex::from_simplices(3, {{0}, {1}, {2}, {0, 1, 2}}),
                    ValidationError);
    CHECK_THROWS_AS(SimplicialComplex::from_maximal(3, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(SimplicialComplex::from_maximal(20, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12,
                                                          13, 14, 15, 16}}),
                    BoundExceeded);
  }

  TEST_CASE("Dowker pairs")
  {
    for (auto const &e : ex::all_single_domain()) {
      NerveComplex N = nerve_complex(*e.atlas);
      DowkerPair d = dowker_pair(membership_relation(*e.atlas, N));
      CHECK(d.K == vietoris_complex(*e.atlas));
      CHECK(d.L == N.complex);
    }
    Relation full{3, 2, {}};
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 2; ++y)
        full.pairs.push_back({x, y});
    CHECK(dowker_pair(full).K == ex::full_simplex(2));

    SimplicialComplex T = ex::two_triangles();
    DowkerPair d = dowker_pair(vertex_in_simplex_relation(T));
    CHECK(d.K == T);
    // every simplex containing vertex "2"
    Simplex sigma;
    for (Simplex s : {Simplex{1}, Simplex{0, 1}, Simplex{1, 2}, Simplex{1, 3}, Simplex{0, 1, 2},
                      Simplex{1, 2, 3}})
      sigma.push_back(T.index_of(s));
    std::sort(sigma.begin(), sigma.end());
    CHECK(d.L.contains(sigma));
    CHECK(sigma.size() == 6);
  }

  TEST_CASE("barycentric subdivision")
  {
    SimplicialComplex edge = ex::full_simplex(1);
    CHECK(barycentric_subdivision(edge).f_vector() == std::vector<int>{3, 2});
    CHECK(barycentric_subdivision(ex::full_simplex(2)).f_vector() == std::vector<int>{7, 12, 6});
    for (auto const &K : {ex::two_triangles(), ex::cycle_graph(5), ex::sphere_boundary(2),
                          nerve_complex(*ex::k4().atlas).complex})
      CHECK(euler_characteristic(barycentric_subdivision(K)) == euler_characteristic(K));
  }

  TEST_CASE("contiguity of the Dowker maps")
  {
    SimplicialComplex T = ex::two_triangles();
    Relation R = vertex_in_simplex_relation(T);
    DowkerPair d = dowker_pair(R);
    ComplexPtr K = share(d.K), L = share(d.L);
    ComplexPtr sdK = share(barycentric_subdivision(*K));
    ComplexPtr sd2K = share(barycentric_subdivision(*sdK));
    ComplexPtr sdL = share(barycentric_subdivision(*L));
    SimplicialMap phi = compose(dowker_phi(K, sdK), dowker_phi(sdK, sd2K));
    CHECK(phi.is_simplicial());
    CHECK(are_contiguous(phi, phi));
    SimplicialMap psibar = dowker_psibar(R, K, L, sdK);
    SimplicialMap right = compose(dowker_psi(R, K, L, sdL), subdivide_map(psibar, sd2K, sdL));
    CHECK(right.is_simplicial());
    CHECK(are_contiguous(phi, right));
    SimplicialMap least = dowker_psi(R, K, L, sdL, WitnessChoice::least);
    SimplicialMap greatest = dowker_psi(R, K, L, sdL, WitnessChoice::greatest);
    CHECK(least.vertex_map != greatest.vertex_map);
    CHECK(are_contiguous(least, greatest));
  }

  TEST_CASE("Smith normal form")
  {
    CHECK(smith_normal_form({{2, 4}, {6, 8}}).invariants == std::vector<std::int64_t>{2, 4});
    SmithForm id = smith_normal_form({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(id.invariants == std::vector<std::int64_t>{1, 1, 1});
    SmithForm zero = smith_normal_form({{0, 0}, {0, 0}});
    CHECK(zero.invariants.empty());
    CHECK(zero.rank == 0);
  }

  TEST_CASE("homology")
  {
    SimplicialComplex point = ex::full_simplex(0);
    CHECK(euler_characteristic(point) == 1);
    CHECK(homology(point) == std::vector<HomologyGroup>{{1, {}}});
    auto Hs = homology(nerve_complex(*ex::s4().atlas).complex);
    CHECK(Hs == std::vector<HomologyGroup>{{1, {}}, {0, {}}, {1, {}}});
    auto Hk = homology(nerve_complex(*ex::k4().atlas).complex);
    CHECK(Hk[1] == HomologyGroup{3, {}});
    CHECK(Hk[2] == HomologyGroup{0, {}});
    CHECK(homology(ex::cycle_graph(6))[1].betti == 1);
    CHECK(same_homology(homology(ex::full_simplex(3)), homology(point)));
    CHECK_FALSE(same_homology(homology(ex::sphere_boundary(2)), homology(point)));
  }

  TEST_CASE("homology of the projective plane has torsion")
  {
    // six-vertex triangulation of RP²
    SimplicialComplex rp2 = SimplicialComplex::from_maximal(
        6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5},
            {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
    auto H = homology(rp2);
    CHECK(H[0] == HomologyGroup{1, {}});
    CHECK(H[1] == HomologyGroup{0, {2}});
    CHECK(H[2] == HomologyGroup{0, {}});
    CHECK(is_closed_surface(rp2));
  }

  TEST_CASE("closed surfaces")
  {
    CHECK(is_closed_surface(nerve_complex(*ex::s4().atlas).complex));
    CHECK_FALSE(is_closed_surface(nerve_complex(*ex::k4().atlas).complex));
    CHECK(is_closed_surface(ex::sphere_boundary(2)));
    CHECK_FALSE(is_closed_surface(ex::two_triangles()));
  }

  TEST_CASE("orbit spaces and stabilizers")
  {
    auto s3 = ex::s3();
    NerveComplex N = nerve_complex(*s3.atlas);
    GroupActionOnComplex act = nerve_g_action(*s3.atlas, N);
    CHECK(act.is_without_inversion());
    OrbitSpace Q = orbit_space(act);
    CHECK(oracle::isomorphic(Q.complex.vertex_count(), Q.complex.simplices(), 2,
                             ex::full_simplex(1).simplices()));
    auto k4 = ex::k4();
    NerveComplex Nk = nerve_complex(*k4.atlas);
    OrbitSpace Qk = orbit_space(nerve_g_action(*k4.atlas, Nk));
    CHECK(oracle::isomorphic(Qk.complex.vertex_count(), Qk.complex.simplices(), 3,
                             ex::full_simplex(2).simplices()));

    // σ = {H1, H2}, the two vertices containing the identity
    Simplex sigma;
    for (int v = 0; v < N.complex.vertex_count(); ++v)
      if (N.vertex_sets[v].front() == 0)
        sigma.push_back(v);
    REQUIRE(sigma.size() == 2);
    Subgroup st = simplex_stabilizer(act, sigma);
    CHECK(st.order() == 1);
    CHECK(st == stabilizer_by_formula(*s3.atlas, N, sigma, 0));
    // vertex stabilizers by brute force over right translation
    for (int v = 0; v < N.complex.vertex_count(); ++v) {
      std::vector<int> fixers;
      for (int g = 0; g < s3.group->order(); ++g) {
        std::vector<int> moved;
        for (int x : N.vertex_sets[v])
          moved.push_back(s3.group->mul(x, g));
        std::sort(moved.begin(), moved.end());
        if (moved == N.vertex_sets[v])
          fixers.push_back(g);
      }
      CHECK(simplex_stabilizer(act, {v}).elements() == fixers);
    }
  }

  TEST_CASE("functoriality on morphisms")
  {
    auto s3 = ex::s3();
    ComplexPtr V = share(vietoris_complex(*s3.atlas));
    SimplicialMap id = vietoris_on_morphism(identity_morphism(s3.atlas), V, V);
    for (int v = 0; v < V->vertex_count(); ++v)
      CHECK(id.vertex_map[v] == v);

    IntersectionClosure ic = build_intersection_closure(s3.group, s3.subgroups);
    StrongWitness w;
    for (int i = 0; i < s3.atlas->coord_count(); ++i)
      for (int c = 0; c < ic.atlas->coord_count(); ++c)
        if (ic.subsets[c] == std::vector<int>{i})
          w.coord_map.push_back(c);
    REQUIRE(static_cast<int>(w.coord_map.size()) == s3.atlas->coord_count());
    w.arrow_map = [](int, Arrow const &a) { return a.label; };
    AtlasMorphism inc{s3.atlas, ic.atlas, {0, 1, 2, 3, 4, 5}, w};
    REQUIRE(is_weak_morphism(inc).ok);
    REQUIRE(is_strong_morphism(inc).ok);
    NerveComplex NA = nerve_complex(*s3.atlas), NB = nerve_complex(*ic.atlas);
    ComplexPtr nA = share(NA.complex), nB = share(NB.complex);
    SimplicialMap f = nerve_on_morphism(inc, NA, NB, nA, nB);
    CHECK(f.is_simplicial());
    std::set<int> image(f.vertex_map.begin(), f.vertex_map.end());
    CHECK(image.size() == f.vertex_map.size());

    EquivAtlas e = equiv_atlas(s3.atlas);
    NerveComplex NE = nerve_complex(*e.atlas);
    ComplexPtr nE = share(NE.complex);
    SimplicialMap q = nerve_on_morphism(e.quotient, NA, NE, nA, nE);
    std::set<int> qi(q.vertex_map.begin(), q.vertex_map.end());
    CHECK(static_cast<int>(qi.size()) == NE.complex.vertex_count());
    CHECK(NE.complex.vertex_count() == NA.complex.vertex_count());
  }
}
