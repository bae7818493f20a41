#ifndef GATLAS_IO_HPP
#define GATLAS_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatlas/atlas.hpp"
#include "gatlas/complex.hpp"
#include "gatlas/covering.hpp"
#include "gatlas/group.hpp"
#include "gatlas/presentation.hpp"

namespace gatlas::io {

using json = nlohmann::json;

/// Parse text; syntax errors become ValidationError with line and column.
json parse_json(std::string const &text, std::string const &source = "input");
std::string read_file(std::string const &path);

/// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(std::string const &bytes);

/// {"perm_generators": {"degree", "perms"}} | {"cayley_table": [[…]]} | {"gl": {"n", "mod"}}
GroupPtr parse_group(json const &j, std::string const &where = "group");

/// {"generators": [element indices]}, or {"perms": [[…]]} / {"matrices": [[…]]}
/// naming generators by their representation.
Subgroup parse_subgroup(GroupPtr G, json const &j, std::string const &where = "subgroup");
std::vector<Subgroup> parse_subgroups(GroupPtr G, json const &j,
                                      std::string const &where = "subgroups");

struct AtlasSpec
{
  std::string kind;
  AtlasPtr atlas;
  GroupPtr group;
  std::vector<Subgroup> subgroups;
  /// Per-coordinate description for intersection_closure and gl.
  json coordinates;
};

/// Explicit locals are {"objects", "arrows"} and read as equivalence relations,
/// or carry a "group" of permutations of the points acting on the objects,
/// the arrows then widening it by blocks.
AtlasSpec parse_atlas(json const &j, std::string const &where = "atlas");

bool is_complex_spec(json const &j);
/// {"vertices": [labels] or count, "simplices": [[…]]}; simplices are closed downward.
SimplicialComplex parse_complex(json const &j, std::string const &where = "complex");
/// One simplex per line, vertex indices separated by spaces; '#' starts a comment.
SimplicialComplex parse_complex_text(std::string const &text);

json complex_to_json(SimplicialComplex const &K);
std::string complex_to_text(SimplicialComplex const &K);

json presentation_to_json(Presentation const &P);
json homology_to_json(std::vector<HomologyGroup> const &H);

/// {"upstairs": atlas, "downstairs": atlas, "map": [...], "strong": witness?}
/// with witness {"coord_map": [...]} plus either "group_maps": [[[label, label], …]]
/// or "arrow_maps": [[[source, target, label, image], …]], one entry per coordinate.
/// Arrow tables send unlisted identity arrows to the identity.
CoveringCandidate parse_candidate(json const &j, std::string const &where = "candidate");

struct PermRep
{
  SimplicialComplex complex;
  int base = 0;
  int fiber = 0;
  std::vector<Perm> perms;
};

/// {"complex": complex spec, "base": v, "fiber": k, "perms": [[…]]}
PermRep parse_perm_rep(json const &j, std::string const &where = "perm_rep");

} // namespace gatlas::io

#endif
