#ifndef GATLAS_COVERING_HPP
#define GATLAS_COVERING_HPP

#include <optional>
#include <string>
#include <vector>

#include "gatlas/atlas.hpp"
#include "gatlas/complex.hpp"
#include "gatlas/homotopy.hpp"
#include "gatlas/presentation.hpp"

namespace gatlas {

/// A weak morphism p : B → A to be tested as a covering.
struct CoveringCandidate
{
  AtlasMorphism morphism;

  GroupoidAtlas const &upstairs() const { return *morphism.source; }
  GroupoidAtlas const &downstairs() const { return *morphism.target; }
  int project(int y) const { return morphism.point_map[y]; }
  std::vector<int> fiber(int x) const;
};

struct CoveringReport
{
  bool ok = true;
  std::string reason;
  /// Downstairs orbit and upstairs point of the failure (condition C), or
  /// the frame and start point (brute force).
  OrbitRef orbit{-1, -1};
  int point = -1;
  std::vector<int> frame;

  explicit operator bool() const { return ok; }
};

CoveringReport is_covering(CoveringCandidate const &c, int brute_frame_size = 3);

/// Union of the local orbits containing x.
std::vector<int> star(GroupoidAtlas const &A, int x);

/// Disjoint local stars over a common image, and Star_B(y) → Star_A(p(y)) bijective.
CheckResult star_conditions(CoveringCandidate const &c);

/// Unique lift of a downstairs path starting at y0.
Path lift_path(CoveringCandidate const &c, Path const &f, int y0);
HomotopyGrid lift_homotopy(CoveringCandidate const &c, HomotopyGrid const &h, int y0);

/// Fiber size over each downstairs point.
std::vector<int> fiber_cardinalities(CoveringCandidate const &c);

struct SimplicialCover
{
  ComplexPtr total;
  ComplexPtr base;
  SimplicialMap projection;
  int fiber = 0;
  /// total vertex = base vertex · fiber + sheet
  int vertex(int v, int sheet) const { return v * fiber + sheet; }
  /// Sheet transport along each base edge (u, v), u < v.
  std::map<std::pair<int, int>, Perm> transport;
};

/// Cover of a connected complex from permutations of {0..k-1}, one per
/// edge-path generator (acting on the right, letters applied left to right).
SimplicialCover build_cover_from_perm_rep(SimplicialComplex const &K, int base,
                                          std::vector<Perm> const &perms, int fiber_size,
                                          std::size_t cap = SimplicialComplex::default_cap);

/// Simplicial automorphisms of the total complex over the identity of the base.
GroupPtr deck_group(SimplicialCover const &sc);

struct UniversalData
{
  Presentation colimit;
  std::optional<int> kernel_rank;
  /// "finite", "infinite-certified" or "bound-exceeded".
  std::string verdict;
  int colimit_order = 0;
  GroupPtr finite_colimit;
  /// Order of the subgroup generated by the family.
  int image_order = 0;
};

UniversalData single_domain_universal_data(GroupPtr G, std::vector<Subgroup> const &family,
                                           std::size_t bound = 20000);

} // namespace gatlas

#endif
