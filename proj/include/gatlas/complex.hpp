#ifndef GATLAS_COMPLEX_HPP
#define GATLAS_COMPLEX_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gatlas/atlas.hpp"
#include "gatlas/group.hpp"

namespace gatlas {

using Simplex = std::vector<int>;

class SimplicialComplex;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Downward-closed family of vertex sets, every simplex stored explicitly.
///
/// Simplices are sorted by (dimension, lexicographic); every vertex
/// 0..vertex_count-1 is a 0-simplex.
class SimplicialComplex
{
public:
  static constexpr std::size_t default_cap = 20000;

  SimplicialComplex() = default;

  /// Downward closure of `maximal`.
  static SimplicialComplex from_maximal(int vertex_count, std::vector<Simplex> maximal,
                                        std::vector<std::string> labels = {},
                                        std::size_t cap = default_cap);
  /// Exactly these simplices; fails if not downward closed.
  static SimplicialComplex from_simplices(int vertex_count, std::vector<Simplex> simplices,
                                          std::vector<std::string> labels = {},
                                          std::size_t cap = default_cap);

  int vertex_count() const { return n_; }
  std::string vertex_label(int v) const;
  std::vector<std::string> const &labels() const { return labels_; }

  std::vector<Simplex> const &simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  Simplex const &simplex(int i) const { return simplices_[i]; }
  /// Index of σ (sorted), or -1.
  int index_of(Simplex const &s) const;
  bool contains(Simplex const &s) const { return index_of(s) >= 0; }

  int dimension() const;
  std::vector<int> f_vector() const;
  std::vector<int> of_dimension(int d) const;
  std::vector<Simplex> maximal_simplices() const;

  bool operator==(SimplicialComplex const &o) const
  { return n_ == o.n_ && simplices_ == o.simplices_; }

private:
  void index();

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Simplex> simplices_;
  std::map<Simplex, int> index_;
};

ComplexPtr share(SimplicialComplex K);

struct Relation
{
  int left_size = 0;
  int right_size = 0;
  std::vector<std::pair<int, int>> pairs;

  bool related(int x, int y) const;
  Relation transposed() const;
};

struct NerveComplex
{
  SimplicialComplex complex;
  /// Point set of each vertex.
  std::vector<std::vector<int>> vertex_sets;
  /// Every (coordinate, orbit) that produced each vertex.
  std::vector<std::vector<OrbitRef>> vertex_orbits;
};

SimplicialComplex vietoris_complex(GroupoidAtlas const &A,
                                   std::size_t cap = SimplicialComplex::default_cap);
NerveComplex nerve_complex(GroupoidAtlas const &A,
                           std::size_t cap = SimplicialComplex::default_cap);

/// x R y iff point x lies in nerve vertex y.
Relation membership_relation(GroupoidAtlas const &A, NerveComplex const &N);
/// x R y iff vertex x lies in simplex y.
Relation vertex_in_simplex_relation(SimplicialComplex const &K);

struct DowkerPair
{
  SimplicialComplex K;
  SimplicialComplex L;
};

DowkerPair dowker_pair(Relation const &R, std::size_t cap = SimplicialComplex::default_cap);

SimplicialComplex barycentric_subdivision(SimplicialComplex const &K,
                                          std::size_t cap = SimplicialComplex::default_cap);

struct SimplicialMap
{
  ComplexPtr source;
  ComplexPtr target;
  std::vector<int> vertex_map;

  Simplex image(Simplex const &s) const;
  /// Image of every source simplex is a target simplex.
  bool is_simplicial() const;
};

/// Sd K → K (given Sd K as `sd`), least vertex under `rank` (default: index order).
SimplicialMap dowker_phi(ComplexPtr K, ComplexPtr sd, std::vector<int> const &rank = {});

enum class WitnessChoice { least, greatest };

/// Sd L_R → K_R: common witness in X of an L_R simplex.
SimplicialMap dowker_psi(Relation const &R, ComplexPtr K, ComplexPtr L, ComplexPtr sdL,
                         WitnessChoice choice = WitnessChoice::least);
/// Sd K_R → L_R: common witness in Y of a K_R simplex.
SimplicialMap dowker_psibar(Relation const &R, ComplexPtr K, ComplexPtr L, ComplexPtr sdK,
                            WitnessChoice choice = WitnessChoice::least);

/// Sd f : Sd K → Sd L.
SimplicialMap subdivide_map(SimplicialMap const &f, ComplexPtr sdK, ComplexPtr sdL);
SimplicialMap compose(SimplicialMap const &g, SimplicialMap const &f);
bool are_contiguous(SimplicialMap const &f, SimplicialMap const &g);

long long euler_characteristic(SimplicialComplex const &K);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct SmithForm
{
  std::vector<std::int64_t> invariants;
  int rank = 0;
};

SmithForm smith_normal_form(IntMatrix M);

struct HomologyGroup
{
  int betti = 0;
  std::vector<std::int64_t> torsion;

  bool operator==(HomologyGroup const &) const = default;
};

std::vector<HomologyGroup> homology(SimplicialComplex const &K);
/// Equal in every degree, missing degrees counting as zero.
bool same_homology(std::vector<HomologyGroup> const &a, std::vector<HomologyGroup> const &b);

int component_count(SimplicialComplex const &K);
bool is_closed_surface(SimplicialComplex const &K);

/// Right action by simplicial automorphisms: vertex_perm[g][v] = v·g.
struct GroupActionOnComplex
{
  ComplexPtr complex;
  GroupPtr group;
  std::vector<std::vector<int>> vertex_perm;
  /// Set when the complex is a nerve: point set of each vertex.
  std::vector<std::vector<int>> vertex_sets;

  Simplex act(Simplex const &s, int g) const;
  bool is_without_inversion() const;
};

GroupActionOnComplex nerve_g_action(GroupoidAtlas const &A, NerveComplex const &N);

struct OrbitSpace
{
  SimplicialComplex complex;
  std::vector<int> vertex_class;

  Simplex project(Simplex const &s) const;
};

OrbitSpace orbit_space(GroupActionOnComplex const &act);

Subgroup simplex_stabilizer(GroupActionOnComplex const &act, Simplex const &s);

/// a⁻¹(⋂ H_j)a for a nerve simplex of a single-domain atlas, where a lies
/// in the common intersection of the vertex sets.
Subgroup stabilizer_by_formula(GroupoidAtlas const &A, NerveComplex const &N,
                               Simplex const &s, int a);

SimplicialMap vietoris_on_morphism(AtlasMorphism const &f, ComplexPtr VA, ComplexPtr VB);
SimplicialMap nerve_on_morphism(AtlasMorphism const &f, NerveComplex const &NA,
                                NerveComplex const &NB, ComplexPtr nA, ComplexPtr nB);

/// One coordinate per maximal simplex, each an equivalence relation with a
/// single class.
AtlasPtr atlas_of_complex(SimplicialComplex const &K);

} // namespace gatlas

#endif
