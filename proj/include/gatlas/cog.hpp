#ifndef GATLAS_COG_HPP
#define GATLAS_COG_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gatlas/atlas.hpp"
#include "gatlas/complex.hpp"
#include "gatlas/group.hpp"
#include "gatlas/presentation.hpp"

namespace gatlas {

/// Small category without loops on the simplices of K.
///
/// Edge a = (τ ⊂ σ) has i(a) = σ and t(a) = τ. A pair (a, b) is composable
/// when t(a) = i(b); its composite ba runs from i(a) to t(b).
struct Scwol
{
  struct Edge
  {
    int initial = 0;
    int terminal = 0;
  };

  struct Composable
  {
    int a = 0;
    int b = 0;
    int ba = 0;
  };

  ComplexPtr base;
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, int> edge_index;
  std::vector<Composable> pairs;

  int object_count() const { return static_cast<int>(base->size()); }
  int edge_between(int initial, int terminal) const;
};

Scwol scwol_of_complex(ComplexPtr K);

/// Groups are subgroups of one ambient group, so ψ and g are ambient elements.
///
/// Right-action form of the axioms, for composable (a, b) and g ∈ G_{i(a)}:
///   g_{a,b}⁻¹ · ψ_{ba}(g) · g_{a,b} = ψ_b(ψ_a(g))
/// and for composable (a, b), (b, c):
///   g_{ba,c} · ψ_c(g_{a,b}) = g_{a,cb} · g_{b,c}
struct ComplexOfGroups
{
  Scwol scwol;
  GroupPtr ambient;
  std::vector<Subgroup> groups;
  std::vector<std::string> names;
  std::vector<std::map<int, int>> psi;
  std::map<std::pair<int, int>, int> twist;

  int twist_of(int a, int b) const;
};

/// Conjugation data h_a: ψ_a(g) = h_a⁻¹ g h_a and g_{a,b} = h_{ba}⁻¹ h_a h_b.
struct ActionCog
{
  ComplexOfGroups cog;
  OrbitSpace quotient;
  /// Chosen lift (as a simplex of the acted-on complex) per quotient simplex.
  std::vector<Simplex> lifts;
  std::vector<int> h;
};

/// Lifts default to the first simplex over each quotient simplex whose
/// vertex sets all contain the identity, else the first one.
ActionCog cog_from_action(GroupActionOnComplex const &act,
                          std::optional<std::vector<Simplex>> lifts = std::nullopt,
                          std::optional<std::vector<int>> h = std::nullopt);

/// Single-domain atlas: groups named H1, H2, … and H1∩H2, ….
ActionCog single_domain_cog(GroupoidAtlas const &A);

CheckResult verify_cog_axioms(ComplexOfGroups const &cog);

/// Tree edges default to a BFS tree from the last simplex; the result is
/// simplified at merge level.
Presentation cog_pi1_presentation(ComplexOfGroups const &cog,
                                  std::optional<std::set<int>> tree = std::nullopt,
                                  bool simplify = true);

} // namespace gatlas

#endif
