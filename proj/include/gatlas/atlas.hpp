#ifndef GATLAS_ATLAS_HPP
#define GATLAS_ATLAS_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gatlas/group.hpp"

namespace gatlas {

struct CoordinateSystem
{
  int size = 0;
  std::vector<std::pair<int, int>> leq;

  CoordinateSystem() = default;
  /// Adds the reflexive pairs if missing.
  CoordinateSystem(int n, std::vector<std::pair<int, int>> pairs);
  static CoordinateSystem discrete(int n) { return CoordinateSystem(n, {}); }

  bool related(int a, int b) const { return rel_[static_cast<std::size_t>(a) * size + b]; }

private:
  std::vector<char> rel_;
};

struct Arrow
{
  int source = 0;
  int target = 0;
  int label = 0;

  bool operator==(Arrow const &) const = default;
  auto operator<=>(Arrow const &) const = default;
};

/// Groupoid on a subset of the underlying set.
///
/// A finite group (a subset `elements` of an ambient group) acts on the
/// objects, and a group-invariant equivalence relation given by `blocks`
/// widens each arrow: (x, y, g) is an arrow when g·x and y share a block.
/// Action groupoids have singleton blocks; equivalence relations have the
/// trivial group.
class LocalGroupoid
{
public:
  LocalGroupoid() = default;

  static LocalGroupoid action(int underlying_size, std::vector<int> objects,
                              GroupPtr ambient, std::vector<int> elements,
                              std::function<int(int, int)> const &act,
                              std::vector<int> blocks = {});
  static LocalGroupoid equivalence(int underlying_size,
                                   std::vector<std::vector<int>> const &classes);

  std::vector<int> const &objects() const { return objects_; }
  int underlying_size() const { return static_cast<int>(pos_.size()); }
  bool contains(int x) const { return pos_[x] >= 0; }
  int position(int x) const { return pos_[x]; }

  FiniteGroup const &ambient() const { return *ambient_; }
  GroupPtr ambient_ptr() const { return ambient_; }
  std::vector<int> const &elements() const { return elements_; }
  /// Position of an ambient label in `elements`, or -1.
  int element_position(int label) const;
  int act(int label, int x) const;
  bool same_block(int x, int y) const;
  bool discrete_blocks() const { return blocks_.empty(); }
  /// Block index of object x (its position when blocks are discrete).
  int block_id(int x) const;
  std::vector<int> block_members(int x) const;

  int orbit_of(int x) const { return orbit_id_[pos_[x]]; }
  std::vector<std::vector<int>> const &orbits() const { return orbits_; }

  bool is_arrow(Arrow const &a) const;
  std::vector<Arrow> arrows_from(int x) const;
  /// (x, g·x, g) for a generating set of the group, plus block arrows.
  std::vector<Arrow> generating_arrows() const;
  std::size_t arrow_count() const;

private:
  void derive_orbits();

  std::vector<int> objects_;
  std::vector<int> pos_;
  GroupPtr ambient_;
  std::vector<int> elements_;
  std::map<int, int> element_pos_;
  std::vector<int> act_;
  std::vector<int> blocks_;
  std::vector<std::vector<int>> block_lists_;
  std::vector<int> generators_;
  std::vector<int> orbit_id_;
  std::vector<std::vector<int>> orbits_;
};

class GroupoidAtlas;
using AtlasPtr = std::shared_ptr<const GroupoidAtlas>;

struct SingleDomainInfo
{
  GroupPtr group;
  std::vector<Subgroup> subgroups;
};

/// (coord, orbit id) pair.
using OrbitRef = std::pair<int, int>;

class GroupoidAtlas
{
public:
  /// Structure map for (α,β): element position in α ↦ label in β.
  using StructureMaps = std::map<std::pair<int, int>, std::vector<int>>;

  GroupoidAtlas(int underlying_size, CoordinateSystem coords,
                std::vector<LocalGroupoid> locals, StructureMaps maps = {},
                std::vector<std::string> point_labels = {});

  int size() const { return size_; }
  CoordinateSystem const &coords() const { return coords_; }
  int coord_count() const { return coords_.size; }
  LocalGroupoid const &local(int alpha) const { return locals_[alpha]; }

  /// Label of φ_{αβ}(g) for an α-label g.
  int structure_map(int alpha, int beta, int label) const;

  std::string point_label(int x) const;
  std::vector<std::string> const &point_labels() const { return labels_; }

  std::vector<OrbitRef> const &orbits_containing(int x) const { return point_orbits_[x]; }
  std::vector<int> const &orbit(OrbitRef r) const { return locals_[r.first].orbits()[r.second]; }
  bool same_local_orbit(int x, int y) const;
  /// Coordinates having x and y in one orbit.
  std::vector<int> common_coords(int x, int y) const;
  bool in_one_orbit(std::vector<int> const &pts) const;

  std::optional<int> base_point;
  std::optional<SingleDomainInfo> single_domain;

private:
  int size_;
  CoordinateSystem coords_;
  std::vector<LocalGroupoid> locals_;
  StructureMaps maps_;
  std::vector<std::string> labels_;
  std::vector<std::vector<OrbitRef>> point_orbits_;
};

/// Coordinate map plus per-coordinate arrow maps into target labels.
struct StrongWitness
{
  std::vector<int> coord_map;
  /// (source coordinate, arrow) ↦ label in the target local group, -1 if undefined.
  std::function<int(int, Arrow const &)> arrow_map;

  static StrongWitness from_table(std::vector<int> coord_map,
                                  std::map<std::pair<int, Arrow>, int> table);
  /// Regular form: each coordinate carries a map on group labels.
  static StrongWitness from_group_maps(std::vector<int> coord_map,
                                       std::vector<std::map<int, int>> maps);
};

struct AtlasMorphism
{
  AtlasPtr source;
  AtlasPtr target;
  std::vector<int> point_map;
  std::optional<StrongWitness> witness;
};

AtlasMorphism identity_morphism(AtlasPtr A, bool strong = true);

struct CheckResult
{
  bool ok = true;
  std::string reason;
  int coord = -1;
  std::vector<int> witness;

  explicit operator bool() const { return ok; }
};

CheckResult is_weak_morphism(AtlasMorphism const &f);
CheckResult is_strong_morphism(AtlasMorphism const &f);

AtlasPtr build_single_domain(GroupPtr G, std::vector<Subgroup> const &subgroups);
AtlasPtr build_relative(GroupPtr G, Subgroup const &K,
                        std::vector<Subgroup> const &subgroups);

struct IntersectionClosure
{
  AtlasPtr atlas;
  /// Coordinate index ↦ subset of subgroup indices.
  std::vector<std::vector<int>> subsets;
  std::vector<Subgroup> groups;
};

IntersectionClosure build_intersection_closure(GroupPtr G,
                                               std::vector<Subgroup> const &subgroups);

using IndexPair = std::pair<int, int>;

/// Closed subsets of Δ = {(i,j) : i ≠ j} for 1-based indices, by (size, lex).
std::vector<std::vector<IndexPair>> closed_subsets(int n);

struct GlAtlas
{
  AtlasPtr atlas;
  GeneralLinearGroup gl;
  std::vector<std::vector<IndexPair>> coords;
  std::vector<Subgroup> local_groups;
};

GlAtlas build_gl(int n, int modulus);

struct ProductAtlas
{
  AtlasPtr atlas;
  AtlasMorphism proj_a;
  AtlasMorphism proj_b;
};

ProductAtlas product_atlas(AtlasPtr A, AtlasPtr B);

struct EquivAtlas
{
  AtlasPtr atlas;
  AtlasMorphism quotient;
};

EquivAtlas equiv_atlas(AtlasPtr A);

AtlasPtr one_point_atlas();

struct InfimumReport
{
  bool ok = true;
  std::vector<int> frame;
  std::vector<int> coords;
};

InfimumReport check_infimum(GroupoidAtlas const &A, int max_frame_size);

CheckResult is_volodin_model(GroupPtr G, std::vector<Subgroup> const &subgroups,
                             CoordinateSystem const &coords);

} // namespace gatlas

#endif
