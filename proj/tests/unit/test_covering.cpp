#include <doctest.h>

#include "gatlas/covering.hpp"
#include "gatlas/error.hpp"
#include "gatlas/examples.hpp"

using namespace gatlas;
namespace ex = gatlas::examples;

TEST_SUITE("coverings")
{
  TEST_CASE("identity morphisms are coverings")
  {
    for (auto const &e : ex::all_single_domain()) {
      CoveringCandidate c{identity_morphism(e.atlas, false)};
      CHECK(is_covering(c).ok);
      CHECK(star_conditions(c).ok);
    }
  }

  TEST_CASE("the three-point counterexample")
  {
    CoveringCandidate c = ex::covering_counterexample();
    CHECK(is_weak_morphism(c.morphism).ok);
    CHECK_FALSE(is_covering(c).ok);
    CHECK(star_conditions(c).ok);
  }

  TEST_CASE("hexagon double cover")
  {
    auto dc = ex::hexagon_double_cover();
    CHECK(dc.cover.total->f_vector() == std::vector<int>{12, 12});
    CHECK(component_count(*dc.cover.total) == 1);
    CHECK(is_covering(dc.candidate).ok);
    CHECK(star_conditions(dc.candidate).ok);
    for (int k : fiber_cardinalities(dc.candidate))
      CHECK(k == 2);
    CHECK(deck_group(dc.cover)->order() == 2);

    Path loop{{0, 1, 2, 3, 4, 5, 0}};
    Path up = lift_path(dc.candidate, loop, dc.cover.vertex(0, 0));
    CHECK(up.start() == dc.cover.vertex(0, 0));
    CHECK(up.end() == dc.cover.vertex(0, 1));
    Path back = lift_path(dc.candidate, reverse(loop), up.end());
    CHECK(back.end() == up.start());
    CHECK(lift_path(dc.candidate, Path{{3}}, dc.cover.vertex(3, 1)) == Path{{dc.cover.vertex(3, 1)}});

    HomotopyGrid h{{Path{{0, 1, 0}}, Path{{0, 0, 0}}}};
    REQUIRE(validate_homotopy(dc.candidate.downstairs(), h).ok);
    HomotopyGrid lifted = lift_homotopy(dc.candidate, h, dc.cover.vertex(0, 1));
    CHECK(validate_homotopy(dc.candidate.upstairs(), lifted).ok);
  }

  TEST_CASE("star conditions catch merged stars")
  {
    AtlasPtr path = atlas_of_complex(SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}}));
    AtlasPtr edge = atlas_of_complex(ex::full_simplex(1));
    CoveringCandidate c{AtlasMorphism{path, edge, {0, 1, 0}, std::nullopt}};
    CHECK(is_weak_morphism(c.morphism).ok);
    CHECK_FALSE(star_conditions(c).ok);
    CHECK_FALSE(is_covering(c).ok);
  }

  TEST_CASE("covers from permutation representations")
  {
    SimplicialComplex hex = ex::cycle_graph(6);
    SimplicialCover copies = build_cover_from_perm_rep(hex, 0, {Perm{0, 1, 2}}, 3);
    CHECK(component_count(*copies.total) == 3);
    CHECK(deck_group(copies)->order() == 6);

    SimplicialComplex N = nerve_complex(*ex::s3().atlas).complex;
    SimplicialCover dbl = build_cover_from_perm_rep(N, 0, {Perm{1, 0}, Perm{1, 0}}, 2);
    CHECK(component_count(*dbl.total) == 1);
    CHECK(euler_characteristic(*dbl.total) == 2 * euler_characteristic(N));
    CHECK(dbl.projection.is_simplicial());

    // a non-regular action of the free group of rank 2 on 3 sheets
    SimplicialCover tri = build_cover_from_perm_rep(N, 0, {Perm{1, 0, 2}, Perm{0, 2, 1}}, 3);
    CHECK(component_count(*tri.total) == 1);
    CHECK(euler_characteristic(*tri.total) == 3 * euler_characteristic(N));
    CHECK(deck_group(tri)->order() == 1);

    // the boundary of a triangle has a relator in Δ[2]
    CHECK_THROWS_AS(build_cover_from_perm_rep(ex::full_simplex(2), 0, {}, 2), ValidationError);
    CHECK_THROWS_AS(build_cover_from_perm_rep(hex, 0, {Perm{0, 0}}, 2), ValidationError);
  }

  TEST_CASE("universal data")
  {
    auto s4 = ex::s4();
    UniversalData u4 = single_domain_universal_data(s4.group, s4.subgroups);
    CHECK(u4.verdict == "finite");
    CHECK(u4.colimit_order == 24);

    auto s3 = ex::s3();
    UniversalData u3 = single_domain_universal_data(s3.group, s3.subgroups);
    CHECK(u3.verdict == "infinite-certified");
    CHECK(u3.kernel_rank == 2);
    Presentation c3c2 = simplify_presentation(u3.colimit);
    CHECK(c3c2.generator_count == 2);
    std::vector<std::size_t> lengths;
    for (auto const &r : c3c2.relators)
      lengths.push_back(r.size());
    std::sort(lengths.begin(), lengths.end());
    CHECK(lengths == std::vector<std::size_t>{2, 3});

    auto k4 = ex::k4();
    UniversalData uk = single_domain_universal_data(k4.group, k4.subgroups);
    CHECK(uk.verdict == "infinite-certified");
    CHECK(uk.kernel_rank == 3);
    Presentation c2c2c2 = simplify_presentation(uk.colimit);
    CHECK(c2c2c2.generator_count == 3);
    for (auto const &r : c2c2c2.relators)
      CHECK(r.size() == 2);

    UniversalData small = single_domain_universal_data(s4.group, s4.subgroups, 5);
    CHECK(small.verdict == "bound-exceeded");
  }
}
