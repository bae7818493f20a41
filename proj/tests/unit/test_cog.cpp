#include <doctest.h>

#include "gatlas/cog.hpp"
#include "gatlas/covering.hpp"
#include "gatlas/error.hpp"
#include "gatlas/examples.hpp"
#include "gatlas/homotopy.hpp"

using namespace gatlas;
namespace ex = gatlas::examples;

TEST_SUITE("complex_of_groups")
{
  TEST_CASE("scwol of Δ[2]")
  {
    Scwol s = scwol_of_complex(share(ex::full_simplex(2)));
    CHECK(s.object_count() == 7);
    // every proper face pair is an edge
    CHECK(s.edges.size() == 12);
    // chains vertex ⊂ edge ⊂ triangle
    CHECK(s.pairs.size() == 6);
    for (auto const &p : s.pairs) {
      CHECK(s.edges[p.a].terminal == s.edges[p.b].initial);
      CHECK(s.edges[p.ba].initial == s.edges[p.a].initial);
      CHECK(s.edges[p.ba].terminal == s.edges[p.b].terminal);
    }
  }

  TEST_CASE("S3 action on its nerve")
  {
    auto s3 = ex::s3();
    ActionCog ac = single_domain_cog(*s3.atlas);
    REQUIRE(ac.cog.scwol.base->f_vector() == std::vector<int>{2, 1});
    std::vector<int> orders;
    for (auto const &G : ac.cog.groups)
      orders.push_back(G.order());
    CHECK(orders == std::vector<int>{3, 2, 1});
    for (auto const &p : ac.cog.scwol.pairs)
      CHECK(ac.cog.twist_of(p.a, p.b) == 0);
    for (int h : ac.h)
      CHECK(h == 0);
    CHECK(verify_cog_axioms(ac.cog).ok);
    UniversalData u = single_domain_universal_data(s3.group, s3.subgroups);
    CHECK(structurally_equal(cog_pi1_presentation(ac.cog), u.colimit));
  }

  TEST_CASE("S4 over Δ[2]")
  {
    auto s4 = ex::s4();
    ActionCog ac = single_domain_cog(*s4.atlas);
    CHECK(ac.cog.scwol.base->f_vector() == std::vector<int>{3, 3, 1});
    CHECK(verify_cog_axioms(ac.cog).ok);
    UniversalData u = single_domain_universal_data(s4.group, s4.subgroups);
    CHECK(structurally_equal(cog_pi1_presentation(ac.cog), u.colimit));
    CHECK(todd_coxeter(cog_pi1_presentation(ac.cog)).index == 24);
  }

  TEST_CASE("every single-domain example")
  {
    for (auto const &e : ex::all_single_domain()) {
      ActionCog ac = single_domain_cog(*e.atlas);
      CHECK(verify_cog_axioms(ac.cog).ok);
      for (int h : ac.h)
        CHECK(h == 0);
      UniversalData u = single_domain_universal_data(e.group, e.subgroups);
      CHECK(structurally_equal(cog_pi1_presentation(ac.cog), u.colimit));
    }
  }

  TEST_CASE("trivial groups give the edge-path group")
  {
    for (auto const &K : {ex::cycle_graph(6), ex::full_simplex(2), ex::two_triangles()}) {
      ComplexPtr Kp = share(K);
      GroupActionOnComplex act{Kp, FiniteGroup::trivial(), {{}}, {}};
      act.vertex_perm[0].resize(static_cast<std::size_t>(K.vertex_count()));
      for (int v = 0; v < K.vertex_count(); ++v)
        act.vertex_perm[0][v] = v;
      ActionCog ac = cog_from_action(act);
      for (auto const &G : ac.cog.groups)
        CHECK(G.order() == 1);
      Presentation P = cog_pi1_presentation(ac.cog);
      RankReport mine = presentation_rank_report(P);
      RankReport edge = presentation_rank_report(edge_path_presentation(K));
      CHECK(mine.free_rank == edge.free_rank);
      CHECK(mine.torsion == edge.torsion);
      CHECK(simplify_presentation(P).generator_count ==
            simplify_presentation(edge_path_presentation(K)).generator_count);
    }
  }

  TEST_CASE("a broken twist fails the axioms")
  {
    auto s4 = ex::s4();
    ActionCog ac = single_domain_cog(*s4.atlas);
    REQUIRE(!ac.cog.scwol.pairs.empty());
    auto const &p = ac.cog.scwol.pairs.front();
    Subgroup const &target = ac.cog.groups[ac.cog.scwol.edges[p.b].terminal];
    int outside = -1;
    for (int g = 0; g < s4.group->order() && outside < 0; ++g)
      if (!target.contains(g))
        outside = g;
    REQUIRE(outside >= 0);
    ac.cog.twist[{p.a, p.b}] = outside;
    CheckResult r = verify_cog_axioms(ac.cog);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.reason.empty());
  }
}
