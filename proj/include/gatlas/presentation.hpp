#ifndef GATLAS_PRESENTATION_HPP
#define GATLAS_PRESENTATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gatlas {

/// Letters are ±(i+1) for generator i; negative means inverse.
using GenWord = std::vector<int>;

struct Presentation
{
  int generator_count = 0;
  std::vector<std::string> generator_labels;
  std::vector<GenWord> relators;

  std::string label(int i) const;
  /// `<g1,...,gn | r1,...,rk>` with letters written as g^1 / g^-1.
  std::string to_string() const;
  void validate() const;
};

GenWord free_reduce(GenWord const &w);
GenWord cyclic_reduce(GenWord const &w);
GenWord invert(GenWord const &w);

enum class SimplifyLevel {
  /// Only relators of length one or two are used to drop or merge generators.
  merge,
  /// Additionally eliminate a generator occurring exactly once in a relator.
  full,
};

Presentation simplify_presentation(Presentation const &P,
                                   SimplifyLevel level = SimplifyLevel::full);

struct RankReport
{
  int free_rank = 0;
  std::vector<std::int64_t> torsion;
  /// "no relators", "complex is a graph", "no relators after simplification".
  std::optional<std::string> free_certificate;
  Presentation simplified;

  bool abelianization_trivial() const { return free_rank == 0 && torsion.empty(); }
};

RankReport presentation_rank_report(Presentation const &P, bool complex_is_graph = false);

/// Relabel generators by their labels, cyclically canonicalize relators and
/// compare as sets. Both sides are first simplified at merge level.
bool structurally_equal(Presentation const &P, Presentation const &Q);

/// Relators in label form, cyclically canonical and sorted.
std::vector<std::string> canonical_relators(Presentation const &P);

struct CosetTable
{
  int index = 0;
  /// action[g][c]: coset c times generator g.
  std::vector<std::vector<int>> action;
};

/// Enumerates cosets of the trivial subgroup; throws BoundExceeded past `bound`.
CosetTable todd_coxeter(Presentation const &P, std::size_t bound = 20000);

} // namespace gatlas

#endif
