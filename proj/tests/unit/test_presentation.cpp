#include <doctest.h>

#include "gatlas/error.hpp"
#include "gatlas/examples.hpp"
#include "gatlas/homotopy.hpp"
#include "gatlas/presentation.hpp"

using namespace gatlas;
namespace ex = gatlas::examples;

TEST_SUITE("presentations")
{
  TEST_CASE("word reduction")
  {
    CHECK(free_reduce({1, 2, -2, -1, 3}) == GenWord{3});
    CHECK(cyclic_reduce({-1, 2, 3, 1}) == GenWord{2, 3});
    CHECK(invert({1, -2, 3}) == GenWord{-3, 2, -1});
  }

  TEST_CASE("printing")
  {
    Presentation P{2, {}, {{1, 1}, {1, -2}}};
    CHECK(P.to_string() == "<g1,g2 | g1^1 g1^1,g1^1 g2^-1>");
    CHECK(Presentation{0, {}, {}}.to_string() == "< | >");
    Presentation bad{1, {}, {{2}}};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
  }

  TEST_CASE("edge-path presentations")
  {
    Presentation hex = edge_path_presentation(ex::cycle_graph(6));
    CHECK(hex.generator_count == 1);
    CHECK(hex.relators.empty());
    Presentation s3 = edge_path_presentation(nerve_complex(*ex::s3().atlas).complex);
    CHECK(s3.generator_count == 2);
    CHECK(s3.relators.empty());
    Presentation tri = simplify_presentation(edge_path_presentation(ex::full_simplex(2)));
    CHECK(tri.generator_count == 0);
    CHECK_THROWS_AS(edge_path_presentation(SimplicialComplex::from_maximal(2, {})),
                    ValidationError);
  }

  TEST_CASE("rank reports")
  {
    RankReport free3 = presentation_rank_report(Presentation{3, {}, {}});
    CHECK(free3.free_rank == 3);
    CHECK(free3.free_certificate == std::optional<std::string>("no relators"));
    RankReport trivial = presentation_rank_report(Presentation{0, {}, {}});
    CHECK(trivial.abelianization_trivial());
    RankReport s4 = presentation_rank_report(
        edge_path_presentation(nerve_complex(*ex::s4().atlas).complex));
    CHECK(s4.abelianization_trivial());
    RankReport c6 = presentation_rank_report(Presentation{1, {}, {{1, 1, 1, 1, 1, 1}}});
    CHECK(c6.free_rank == 0);
    CHECK(c6.torsion == std::vector<std::int64_t>{6});
    CHECK_FALSE(c6.free_certificate);
  }

  TEST_CASE("simplification")
  {
    // <x, y | x y^-1, x^3> merges to <x | x^3>
    Presentation P{2, {"x", "y"}, {{1, -2}, {1, 1, 1}}};
    Presentation merged = simplify_presentation(P, SimplifyLevel::merge);
    CHECK(merged.generator_count == 1);
    CHECK(merged.generator_labels == std::vector<std::string>{"x"});
    // <x, y | x y x^-1 y^-2> eliminates nothing at merge level, y = ... at full level
    Presentation Q{2, {"x", "y"}, {{1, 2, 2}}};
    CHECK(simplify_presentation(Q, SimplifyLevel::merge).generator_count == 2);
    CHECK(simplify_presentation(Q).generator_count == 1);
  }

  TEST_CASE("structural equality")
  {
    Presentation A{2, {"a", "b"}, {{1, 1}, {2, 2, 2}}};
    Presentation B{2, {"b", "a"}, {{1, 1, 1}, {2, 2}}};
    Presentation C{2, {"a", "b"}, {{1, 1, 1}, {2, 2}}};
    CHECK(structurally_equal(A, B));
    CHECK(structurally_equal(B, A));
    CHECK_FALSE(structurally_equal(A, C));
  }

  TEST_CASE("coset enumeration")
  {
    CHECK(todd_coxeter(Presentation{1, {}, {{1, 1, 1}}}).index == 3);
    // <x, y | x², y³, (xy)²> is S₃
    Presentation s3{2, {}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}};
    CosetTable t = todd_coxeter(s3);
    CHECK(t.index == 6);
    for (auto const &row : t.action)
      CHECK(row.size() == 6);
    // <x, y | x², y³, (xy)³> is A₄
    CHECK(todd_coxeter(Presentation{2, {}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2}}}).index == 12);
    CHECK(todd_coxeter(Presentation{0, {}, {}}).index == 1);
    CHECK_THROWS_AS(todd_coxeter(Presentation{1, {}, {}}, 100), BoundExceeded);
  }
}
