#ifndef GATLAS_EXAMPLES_HPP
#define GATLAS_EXAMPLES_HPP

#include <string>
#include <vector>

#include "gatlas/atlas.hpp"
#include "gatlas/complex.hpp"
#include "gatlas/covering.hpp"
#include "gatlas/group.hpp"

namespace gatlas::examples {

struct SingleDomain
{
  std::string name;
  GroupPtr group;
  std::vector<Subgroup> subgroups;
  AtlasPtr atlas;
};

/// a = (0 1 2), b = (0 1); family {⟨a⟩, ⟨b⟩}.
SingleDomain s3();
/// Klein four group with its three subgroups of order 2.
SingleDomain k4();
/// Quaternions as the regular representation; elements 1,−1,i,−i,j,−j,k,−k
/// are points 0..7. Family {⟨i⟩, ⟨j⟩, ⟨k⟩}.
SingleDomain q8();
/// S₃ with {⟨(0 1)⟩, ⟨(1 2)⟩}.
SingleDomain s3_transpositions();
/// S₄ with ⟨(0 1),(1 2)⟩, ⟨(1 2),(2 3)⟩, ⟨(0 1),(2 3)⟩.
SingleDomain s4();

std::vector<SingleDomain> all_single_domain();

GroupPtr cyclic(int n);

/// C₂ swapping {0, 1}.
AtlasPtr c2_interval();
/// C₃ acting on {0, 1, 2} by a·0 = 1, a·1 = 2.
AtlasPtr c3_cycle();

/// Three points, C₂ on each pair, mapped by the identity onto one C₃-orbit.
CoveringCandidate covering_counterexample();

/// Hexagon and its connected double cover, both as atlases of their complexes.
struct DoubleCover
{
  SimplicialComplex base;
  SimplicialCover cover;
  CoveringCandidate candidate;
};

DoubleCover hexagon_double_cover();

/// Triangles {1,2,3} and {2,3,4}, vertex labels 1..4.
SimplicialComplex two_triangles();
SimplicialComplex cycle_graph(int n);
/// Boundary of Δ[d+1] (a d-sphere).
SimplicialComplex sphere_boundary(int d);
SimplicialComplex full_simplex(int d);

} // namespace gatlas::examples

#endif
