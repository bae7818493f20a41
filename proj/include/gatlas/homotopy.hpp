#ifndef GATLAS_HOMOTOPY_HPP
#define GATLAS_HOMOTOPY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gatlas/atlas.hpp"
#include "gatlas/complex.hpp"
#include "gatlas/error.hpp"
#include "gatlas/group.hpp"
#include "gatlas/presentation.hpp"

namespace gatlas {

/// Points p₀,…,p_N, constant outside the window [0, N].
struct Path
{
  std::vector<int> points;

  int length() const { return static_cast<int>(points.size()) - 1; }
  int start() const { return points.front(); }
  int end() const { return points.back(); }
  /// Value at n, clamped to the window.
  int at(int n) const;

  bool operator==(Path const &) const = default;
};

class PathError : public ValidationError
{
public:
  PathError(std::string const &what, std::vector<int> steps)
  : ValidationError(what)
  , bad_steps(std::move(steps))
  {}

  std::vector<int> bad_steps;
};

/// Throws PathError naming every step n whose points share no local orbit.
Path validate_path(GroupoidAtlas const &A, std::vector<int> points);
bool is_path(GroupoidAtlas const &A, std::vector<int> const &points);

Path concat(Path const &f, Path const &g);
Path reverse(Path const &f);

/// Connected components, each sorted, ordered by least point.
std::vector<std::vector<int>> pi0(GroupoidAtlas const &A);

struct EdgePathData
{
  Presentation presentation;
  /// Edge (u, v), u < v, to its generator index, or -1 for tree edges.
  std::map<std::pair<int, int>, int> edge_generator;
  std::vector<int> bfs_parent;
};

/// Edge-path group on a BFS spanning tree from `base`.
EdgePathData edge_path_data(SimplicialComplex const &K, int base = 0);
Presentation edge_path_presentation(SimplicialComplex const &K, int base = 0);

/// Step elements f(n+1)·f(n)⁻¹ of loops at the identity of a single-domain
/// atlas, written so the last letter acts first. Identity steps are dropped.
std::vector<Word> loop_words_to_kernel(GroupoidAtlas const &A, std::vector<Path> const &loops);

/// Common pairwise intersection Z when it is central in every subgroup.
struct AmalgamShape
{
  bool supported = false;
  Subgroup center;
};

AmalgamShape amalgam_shape(std::vector<Subgroup> const &family);

/// Central prefix letter (if nontrivial) followed by alternating coset
/// representatives. Throws "unsupported amalgam shape".
Word amalgam_normal_form(std::vector<Subgroup> const &family, Word const &w);

/// 1 − |G|·(Σ 1/|H_v| − Σ 1/|H_e|) for a tree of groups.
int kernel_rank_oracle(int group_order, std::vector<int> const &vertex_orders,
                       std::vector<int> const &edge_orders);

/// Rows bottom to top; shorter rows are padded with their last point.
struct HomotopyGrid
{
  std::vector<Path> rows;

  int width() const;
};

struct GridCheck
{
  bool ok = true;
  int row = -1;
  int column = -1;
  std::string reason;

  explicit operator bool() const { return ok; }
};

GridCheck validate_homotopy(GroupoidAtlas const &A, HomotopyGrid const &h);

/// From f with a repeated point inserted at `at` down to f.
HomotopyGrid shift_grid(Path const &f, int at = 0);

struct RippleResult
{
  Path path;
  HomotopyGrid certificate;
};

/// Drops identity steps by moving each repeat to the end one square at a time.
RippleResult ripple_normalize(Path const &f);

/// f ∗ f^r down to the constant path at f(0).
HomotopyGrid cancellation_grid(Path const &f);

struct LoopComponents
{
  int loops = 0;
  int components = 0;
  std::vector<Path> loop_list;
  std::vector<int> component_of;
};

/// Loops at `base` with window [0, N], joined by valid two-row grids.
LoopComponents bounded_loop_components(GroupoidAtlas const &A, int base, int window,
                                       int step_budget = 1,
                                       std::size_t loop_bound = 200000);

} // namespace gatlas

#endif
