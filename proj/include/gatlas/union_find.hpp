#ifndef GATLAS_UNION_FIND_HPP
#define GATLAS_UNION_FIND_HPP

#include <cstddef>
#include <numeric>
#include <vector>

namespace gatlas {

class UnionFind
{
public:
  explicit UnionFind(std::size_t n)
  : parent_(n)
  { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x)
  {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Keeps the smaller root so representatives are least elements.
  bool unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (b < a)
      std::swap(a, b);
    parent_[b] = a;
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

} // namespace gatlas

#endif
