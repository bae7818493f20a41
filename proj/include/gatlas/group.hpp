#ifndef GATLAS_GROUP_HPP
#define GATLAS_GROUP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gatlas {

using Perm = std::vector<int>;

class FiniteGroup;
struct GeneralLinearGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Finite group on dense element indices 0..order-1 with the identity at 0.
///
/// Small groups keep a full multiplication table. Permutation, matrix and
/// product groups above the table limit multiply through their
/// representations instead.
class FiniteGroup
{
public:
  static constexpr int table_limit = 2048;

  static GroupPtr from_table(std::vector<std::vector<int>> const &table,
                             std::vector<std::string> labels = {});
  static GroupPtr trivial();
  static GroupPtr direct_product(GroupPtr a, GroupPtr b);

  int order() const { return order_; }
  int identity() const { return 0; }
  int mul(int g, int h) const;
  int inv(int g) const { return inverses_[g]; }
  int element_order(int g) const;
  std::string label(int g) const;

  std::vector<std::vector<int>> table() const;
  bool has_table() const { return !table_.empty(); }

  bool is_permutation_group() const { return kind_ == Kind::perm; }
  int degree() const { return degree_; }
  Perm const &perm(int g) const { return perms_[g]; }
  int index_of(Perm const &p) const;

  bool is_matrix_group() const { return kind_ == Kind::matrix; }
  int matrix_size() const { return mat_n_; }
  int matrix_modulus() const { return mat_m_; }
  std::vector<int> matrix(int g) const;
  int index_of_matrix(std::vector<int> const &entries) const;

  GroupPtr factor_a() const { return fa_; }
  GroupPtr factor_b() const { return fb_; }

  /// Greedy generating set in index order.
  std::vector<int> generating_set() const;

  /// Associativity check: exhaustive up to `exhaustive_limit`, strided sample above.
  bool check_associative(int exhaustive_limit = 200) const;

  friend GroupPtr closure_from_generators(int, std::vector<Perm> const &,
                                          std::size_t);
  friend GeneralLinearGroup general_linear_group(int, int);

private:
  enum class Kind { table, perm, matrix, product };

  FiniteGroup() = default;
  int compute_mul(int g, int h) const;
  void finish();

  Kind kind_ = Kind::table;
  int order_ = 1;
  std::vector<int> table_;
  std::vector<int> inverses_;
  std::vector<std::string> labels_;

  int degree_ = 0;
  std::vector<Perm> perms_;
  std::map<Perm, int> perm_index_;

  int mat_n_ = 0;
  int mat_m_ = 0;
  std::vector<std::uint32_t> codes_;
  std::vector<int> code_index_;

  GroupPtr fa_, fb_;
};

/// Permutation group generated by `perms`; products compose right to left.
GroupPtr closure_from_generators(int domain_size, std::vector<Perm> const &perms,
                                 std::size_t bound = 1000000);

class Subgroup
{
public:
  Subgroup() = default;

  static Subgroup generated(GroupPtr G, std::vector<int> const &gens);
  static Subgroup from_elements(GroupPtr G, std::vector<int> elements);
  static Subgroup trivial(GroupPtr G) { return generated(std::move(G), {}); }
  static Subgroup whole(GroupPtr G);

  FiniteGroup const &parent() const { return *parent_; }
  GroupPtr parent_ptr() const { return parent_; }
  std::vector<int> const &elements() const { return elements_; }
  std::vector<int> const &generators() const { return generators_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(int g) const { return member_[g]; }
  bool is_subset_of(Subgroup const &other) const;

  bool operator==(Subgroup const &other) const
  { return elements_ == other.elements_; }

private:
  GroupPtr parent_;
  std::vector<int> elements_;
  std::vector<int> generators_;
  std::vector<bool> member_;
};

/// Blocks {Hx}, each sorted, ordered by least element.
std::vector<std::vector<int>> left_cosets(Subgroup const &H);

Subgroup subgroup_intersection(Subgroup const &H, Subgroup const &K);

/// Subgroup generated by the union of both.
Subgroup subgroup_join(Subgroup const &H, Subgroup const &K);

/// Every subgroup of a small group, sorted by (order, elements).
std::vector<Subgroup> all_subgroups(GroupPtr G);

struct ModularRing
{
  int m = 2;

  explicit ModularRing(int modulus);
  int add(int a, int b) const { return (a + b) % m; }
  int mul(int a, int b) const { return (a * b) % m; }
  int neg(int a) const { return (m - a) % m; }
  bool is_unit(int a) const;
  std::vector<int> units() const;
};

struct Letter
{
  int subgroup = 0;
  int element = 0;

  bool operator==(Letter const &) const = default;
  auto operator<=>(Letter const &) const = default;
};

using Word = std::vector<Letter>;

/// letters[0]·letters[1]·…, so the last letter acts first.
int evaluate_word(FiniteGroup const &G, std::vector<Subgroup> const &family,
                  Word const &w);

struct GeneralLinearGroup
{
  GroupPtr group;
  int n = 0;
  ModularRing ring{2};

  /// ε_ij(r) with 1-based i, j.
  int elementary(int i, int j, int r) const;
};

GeneralLinearGroup general_linear_group(int n, int modulus);

} // namespace gatlas

#endif
