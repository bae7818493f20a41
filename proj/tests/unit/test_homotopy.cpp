#include <doctest.h>

#include <map>
#include <set>

#include "gatlas/error.hpp"
#include "gatlas/examples.hpp"
#include "gatlas/homotopy.hpp"
#include "../oracles.hpp"

using namespace gatlas;
namespace ex = gatlas::examples;

namespace {

struct S3
{
  ex::SingleDomain d = ex::s3();
  int a = d.subgroups[0].generators()[0];
  int b = d.subgroups[1].generators()[0];
  int mul(int g, int h) const { return d.group->mul(g, h); }
};

} // namespace

TEST_SUITE("homotopy")
{
  TEST_CASE("paths")
  {
    S3 s;
    int ab = s.mul(s.a, s.b), bab = s.mul(s.b, ab);
    CHECK(is_path(*s.d.atlas, {0, s.b, ab, bab, 0}));
    CHECK(is_path(*s.d.atlas, {3}));
    AtlasPtr only_b = build_single_domain(s.d.group, {s.d.subgroups[1]});
    try {
      validate_path(*only_b, {0, s.a});
      FAIL("expected a PathError");
    } catch (PathError const &e) {
      CHECK(e.bad_steps == std::vector<int>{0});
    }
    Path f{{0, 4}};
    CHECK(f.at(-3) == 0);
    CHECK(f.at(9) == 4);
  }

  TEST_CASE("concatenation")
  {
    S3 s;
    int ab = s.mul(s.a, s.b);
    CHECK(concat(Path{{0, s.b}}, Path{{s.b, ab}}) == Path{{0, s.b, ab}});
    Path f{{0, s.b}}, g{{s.b, ab}}, h{{ab, ab, 0}};
    CHECK(concat(concat(f, g), h) == concat(f, concat(g, h)));
    Path fc = concat(f, Path{{s.b}});
    CHECK(fc.points.front() == 0);
    CHECK(fc.end() == s.b);
    CHECK(reverse(Path{{1, 2, 3}}) == Path{{3, 2, 1}});
  }

  TEST_CASE("pi0 against the orbit graph")
  {
    auto count = [](GroupoidAtlas const &A) {
      std::vector<std::pair<int, int>> edges;
      for (int x = 0; x < A.size(); ++x)
        for (int y = x + 1; y < A.size(); ++y)
          if (A.same_local_orbit(x, y))
            edges.push_back({x, y});
      return oracle::component_count(A.size(), edges);
    };
    S3 s;
    CHECK(pi0(*s.d.atlas).size() == 1);
    AtlasPtr only_a = build_single_domain(s.d.group, {s.d.subgroups[0]});
    CHECK(pi0(*only_a).size() == 2);
    CHECK(static_cast<int>(pi0(*only_a).size()) == count(*only_a));
    GlAtlas gl = build_gl(2, 4);
    CHECK(pi0(*gl.atlas).size() == 2);
    CHECK(count(*gl.atlas) == 2);
  }

  TEST_CASE("loop words")
  {
    S3 s;
    int ab = s.mul(s.a, s.b), bab = s.mul(s.b, ab);
    auto words = loop_words_to_kernel(*s.d.atlas, {Path{{0, s.b, ab, bab, 0}}, Path{{0}}});
    CHECK(words[0] == Word{{0, s.a}, {1, s.b}, {0, s.a}, {1, s.b}});
    CHECK(evaluate_word(*s.d.group, s.d.subgroups, words[0]) == 0);
    CHECK(words[1].empty());

    auto k4 = ex::k4();
    int ka = k4.subgroups[0].generators()[0], kb = k4.subgroups[1].generators()[0];
    int kc = k4.subgroups[2].generators()[0];
    auto kw = loop_words_to_kernel(*k4.atlas, {Path{{0, ka, kb, 0}}});
    CHECK(kw[0] == Word{{1, kb}, {2, kc}, {0, ka}});
  }

  TEST_CASE("amalgam normal form")
  {
    S3 s;
    int a2 = s.mul(s.a, s.a);
    CHECK(amalgam_normal_form(s.d.subgroups, {{0, s.a}, {0, a2}, {1, s.b}, {1, s.b}}).empty());
    Word abab{{0, s.a}, {1, s.b}, {0, s.a}, {1, s.b}};
    CHECK(amalgam_normal_form(s.d.subgroups, abab) == abab);

    auto q8 = ex::q8();
    int i = q8.subgroups[0].generators()[0];
    int minus = q8.group->mul(i, i);
    CHECK(amalgam_normal_form(q8.subgroups, {{0, minus}}) ==
          amalgam_normal_form(q8.subgroups, {{1, minus}}));
    CHECK(amalgam_shape(q8.subgroups).supported);
    CHECK(amalgam_shape(q8.subgroups).center.order() == 2);
    CHECK_FALSE(amalgam_shape(ex::s4().subgroups).supported);
  }

  TEST_CASE("kernel rank oracle")
  {
    CHECK(kernel_rank_oracle(6, {3, 2}, {1}) == 2);
    CHECK(kernel_rank_oracle(4, {2, 2, 2}, {1, 1}) == 3);
    CHECK(kernel_rank_oracle(8, {4, 4, 4}, {2, 2}) == 3);
  }

  TEST_CASE("homotopy grids")
  {
    S3 s;
    int ab = s.mul(s.a, s.b);
    Path f{{0, s.b, ab}};
    CHECK(validate_homotopy(*s.d.atlas, HomotopyGrid{{f, f, f}}).ok);
    for (int at = 0; at <= f.length(); ++at)
      CHECK(validate_homotopy(*s.d.atlas, shift_grid(f, at)).ok);
    // square with corners 1, a, b: no coordinate has them in one orbit
    HomotopyGrid bad{{Path{{0, s.a, s.a}}, Path{{0, s.b, s.a}}}};
    GridCheck r = validate_homotopy(*s.d.atlas, bad);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.reason.empty());
  }

  TEST_CASE("ripple normalization")
  {
    S3 s;
    int ab = s.mul(s.a, s.b);
    RippleResult r = ripple_normalize(Path{{0, 0, s.b, s.b, ab}});
    CHECK(r.path == Path{{0, s.b, ab}});
    CHECK(validate_homotopy(*s.d.atlas, r.certificate).ok);
    CHECK(ripple_normalize(Path{{4, 4, 4}}).path == Path{{4}});
    CHECK(ripple_normalize(Path{{0, s.b, ab}}).path == Path{{0, s.b, ab}});
  }

  TEST_CASE("cancellation grid")
  {
    S3 s;
    int ab = s.mul(s.a, s.b);
    Path f{{0, s.b, ab}};
    HomotopyGrid h = cancellation_grid(f);
    CHECK(validate_homotopy(*s.d.atlas, h).ok);
    CHECK(h.rows.front().points == concat(f, reverse(f)).points);
    for (int p : h.rows.back().points)
      CHECK(p == 0);
  }

  TEST_CASE("bounded loop components")
  {
    S3 s;
    LoopComponents zero = bounded_loop_components(*s.d.atlas, 0, 0);
    CHECK(zero.loops == 1);
    CHECK(zero.components == 1);

    LoopComponents four = bounded_loop_components(*s.d.atlas, 0, 4);
    auto words = loop_words_to_kernel(*s.d.atlas, four.loop_list);
    std::map<int, Word> class_of;
    for (int li = 0; li < four.loops; ++li) {
      Word w = amalgam_normal_form(s.d.subgroups, words[li]);
      auto [it, fresh] = class_of.emplace(four.component_of[li], w);
      CHECK(it->second == w);
    }
    std::set<Word> classes;
    for (auto const &[c, w] : class_of)
      classes.insert(w);
    CHECK(classes.size() == class_of.size());

    // equal normal forms at window 4 meet in one component at window 6
    LoopComponents six = bounded_loop_components(*s.d.atlas, 0, 6);
    std::map<std::vector<int>, int> index;
    for (int li = 0; li < six.loops; ++li)
      index[six.loop_list[li].points] = li;
    std::map<Word, std::set<int>> comps;
    for (int li = 0; li < four.loops; ++li) {
      auto pts = four.loop_list[li].points;
      pts.push_back(0);
      pts.push_back(0);
      REQUIRE(index.count(pts));
      comps[amalgam_normal_form(s.d.subgroups, words[li])].insert(
          six.component_of[index[pts]]);
    }
    for (auto const &[w, c] : comps)
      CHECK(c.size() == 1);

    LoopComponents none = bounded_loop_components(*s.d.atlas, 0, 2, 0);
    CHECK(none.components == none.loops);
    CHECK_THROWS_AS(bounded_loop_components(*s.d.atlas, 0, 6, 1, 10), BoundExceeded);
  }
}
