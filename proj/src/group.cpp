#include "gatlas/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "gatlas/error.hpp"

namespace gatlas {

namespace {

std::string cycle_string(Perm const &p)
{
  std::ostringstream out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == static_cast<int>(start))
      continue;
    out << '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first)
        out << ' ';
      out << x + 1;
      first = false;
      x = static_cast<std::size_t>(p[x]);
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

std::vector<int> decode(std::uint32_t code, int n, int m)
{
  std::vector<int> a(static_cast<std::size_t>(n * n));
  for (int i = n * n - 1; i >= 0; --i) {
    a[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint32_t>(m));
    code /= static_cast<std::uint32_t>(m);
  }
  return a;
}

std::uint32_t encode(std::vector<int> const &a, int m)
{
  std::uint32_t code = 0;
  for (int v : a)
    code = code * static_cast<std::uint32_t>(m) + static_cast<std::uint32_t>(v);
  return code;
}

std::vector<int> mat_mul(std::vector<int> const &a, std::vector<int> const &b,
                         int n, int m)
{
  std::vector<int> c(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = 0;
      for (int k = 0; k < n; ++k)
        s += a[i * n + k] * b[k * n + j];
      c[i * n + j] = s % m;
    }
  return c;
}

int mat_det(std::vector<int> const &a, int n, int m)
{
  long long d;
  if (n == 2) {
    d = static_cast<long long>(a[0]) * a[3] - static_cast<long long>(a[1]) * a[2];
  } else {
    d = static_cast<long long>(a[0]) * (a[4] * a[8] - a[5] * a[7])
      - static_cast<long long>(a[1]) * (a[3] * a[8] - a[5] * a[6])
      + static_cast<long long>(a[2]) * (a[3] * a[7] - a[4] * a[6]);
  }
  return static_cast<int>(((d % m) + m) % m);
}

int inverse_mod(int a, int m)
{
  for (int x = 1; x < m; ++x)
    if ((a * x) % m == 1)
      return x;
  return -1;
}

std::vector<int> mat_inverse(std::vector<int> const &a, int n, int m)
{
  int dinv = inverse_mod(mat_det(a, n, m), m);
  std::vector<int> adj(static_cast<std::size_t>(n * n));
  if (n == 2) {
    adj = {a[3], -a[1], -a[2], a[0]};
  } else {
    auto at = [&](int r, int c) { return a[r * 3 + c]; };
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        int r0 = (c + 1) % 3, r1 = (c + 2) % 3;
        int c0 = (r + 1) % 3, c1 = (r + 2) % 3;
        adj[r * 3 + c] = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
      }
  }
  for (int &v : adj)
    v = static_cast<int>(((static_cast<long long>(v) * dinv) % m + m) % m);
  return adj;
}

} // namespace

GroupPtr FiniteGroup::from_table(std::vector<std::vector<int>> const &table,
                                 std::vector<std::string> labels)
{
  int n = static_cast<int>(table.size());
  if (n == 0)
    throw ValidationError("cayley table is empty");
  for (auto const &row : table) {
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("cayley table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        throw ValidationError("cayley table entry out of range");
  }

  int e = -1;
  for (int g = 0; g < n && e < 0; ++g) {
    bool ok = true;
    for (int h = 0; h < n && ok; ++h)
      ok = table[g][h] == h && table[h][g] == h;
    if (ok)
      e = g;
  }
  if (e < 0)
    throw ValidationError("cayley table has no identity");

  // Relabel so the identity sits at index 0.
  std::vector<int> to(n), from(n);
  std::iota(to.begin(), to.end(), 0);
  std::swap(to[0], to[e]);
  for (int i = 0; i < n; ++i)
    from[to[i]] = i;

  auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  G->kind_ = Kind::table;
  G->order_ = n;
  G->table_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      G->table_[static_cast<std::size_t>(g) * n + h] = to[table[from[g]][from[h]]];
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != n)
      throw ValidationError("label count does not match table size");
    G->labels_.resize(n);
    for (int i = 0; i < n; ++i)
      G->labels_[i] = labels[from[i]];
  }
  G->finish();
  if (!G->check_associative())
    throw ValidationError("cayley table is not associative");
  return G;
}

GroupPtr FiniteGroup::trivial()
{
  static GroupPtr one = from_table({{0}}, {"1"});
  return one;
}

GroupPtr FiniteGroup::direct_product(GroupPtr a, GroupPtr b)
{
  long long n = static_cast<long long>(a->order()) * b->order();
  if (n > 100000000LL)
    throw BoundExceeded("direct product too large");
  auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  G->kind_ = Kind::product;
  G->order_ = static_cast<int>(n);
  G->fa_ = std::move(a);
  G->fb_ = std::move(b);
  G->finish();
  return G;
}

int FiniteGroup::compute_mul(int g, int h) const
{
  switch (kind_) {
  case Kind::table:
    return table_[static_cast<std::size_t>(g) * order_ + h];
  case Kind::perm: {
    Perm const &pg = perms_[g], &ph = perms_[h];
    Perm r(pg.size());
    for (std::size_t x = 0; x < r.size(); ++x)
      r[x] = pg[ph[x]];
    return perm_index_.at(r);
  }
  case Kind::matrix: {
    auto c = mat_mul(decode(codes_[g], mat_n_, mat_m_),
                     decode(codes_[h], mat_n_, mat_m_), mat_n_, mat_m_);
    return code_index_[encode(c, mat_m_)];
  }
  case Kind::product: {
    int nb = fb_->order();
    return fa_->mul(g / nb, h / nb) * nb + fb_->mul(g % nb, h % nb);
  }
  }
  return 0;
}

int FiniteGroup::mul(int g, int h) const
{
  if (!table_.empty())
    return table_[static_cast<std::size_t>(g) * order_ + h];
  return compute_mul(g, h);
}

void FiniteGroup::finish()
{
  if (kind_ != Kind::table && order_ <= table_limit) {
    std::vector<int> t(static_cast<std::size_t>(order_) * order_);
    for (int g = 0; g < order_; ++g)
      for (int h = 0; h < order_; ++h)
        t[static_cast<std::size_t>(g) * order_ + h] = compute_mul(g, h);
    table_ = std::move(t);
  }

  inverses_.assign(order_, -1);
  switch (kind_) {
  case Kind::table:
    for (int g = 0; g < order_; ++g) {
      for (int h = 0; h < order_; ++h)
        if (mul(g, h) == 0 && mul(h, g) == 0) {
          inverses_[g] = h;
          break;
        }
      if (inverses_[g] < 0)
        throw ValidationError("cayley table element has no inverse");
    }
    break;
  case Kind::perm:
    for (int g = 0; g < order_; ++g) {
      Perm q(perms_[g].size());
      for (std::size_t x = 0; x < q.size(); ++x)
        q[perms_[g][x]] = static_cast<int>(x);
      inverses_[g] = perm_index_.at(q);
    }
    break;
  case Kind::matrix:
    for (int g = 0; g < order_; ++g)
      inverses_[g] = code_index_[encode(
          mat_inverse(decode(codes_[g], mat_n_, mat_m_), mat_n_, mat_m_), mat_m_)];
    break;
  case Kind::product: {
    int nb = fb_->order();
    for (int g = 0; g < order_; ++g)
      inverses_[g] = fa_->inv(g / nb) * nb + fb_->inv(g % nb);
    break;
  }
  }
}

int FiniteGroup::element_order(int g) const
{
  int k = 1;
  for (int x = g; x != 0; x = mul(x, g))
    ++k;
  return k;
}

std::string FiniteGroup::label(int g) const
{
  if (!labels_.empty())
    return labels_[g];
  switch (kind_) {
  case Kind::perm:
    return cycle_string(perms_[g]);
  case Kind::matrix: {
    auto a = matrix(g);
    std::ostringstream out;
    out << '[';
    for (int i = 0; i < mat_n_; ++i) {
      out << (i ? ",[" : "[");
      for (int j = 0; j < mat_n_; ++j)
        out << (j ? "," : "") << a[i * mat_n_ + j];
      out << ']';
    }
    out << ']';
    return out.str();
  }
  case Kind::product: {
    int nb = fb_->order();
    return "(" + fa_->label(g / nb) + "," + fb_->label(g % nb) + ")";
  }
  case Kind::table:
    break;
  }
  return g == 0 ? "1" : "g" + std::to_string(g);
}

std::vector<std::vector<int>> FiniteGroup::table() const
{
  if (order_ > table_limit)
    throw BoundExceeded("multiplication table too large to materialize");
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h)
      t[g][h] = mul(g, h);
  return t;
}

int FiniteGroup::index_of(Perm const &p) const
{
  auto it = perm_index_.find(p);
  return it == perm_index_.end() ? -1 : it->second;
}

std::vector<int> FiniteGroup::matrix(int g) const
{
  return decode(codes_[g], mat_n_, mat_m_);
}

int FiniteGroup::index_of_matrix(std::vector<int> const &entries) const
{
  if (static_cast<int>(entries.size()) != mat_n_ * mat_n_)
    return -1;
  std::vector<int> a = entries;
  for (int &v : a)
    v = ((v % mat_m_) + mat_m_) % mat_m_;
  return code_index_[encode(a, mat_m_)];
}

std::vector<int> FiniteGroup::generating_set() const
{
  std::vector<int> gens;
  std::vector<bool> in(order_, false);
  std::vector<int> elems{0};
  in[0] = true;
  for (int g = 1; g < order_; ++g) {
    if (in[g])
      continue;
    gens.push_back(g);
    // Re-close under right multiplication by every generator.
    std::deque<int> queue(elems.begin(), elems.end());
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int s : gens) {
        int y = mul(x, s);
        if (!in[y]) {
          in[y] = true;
          elems.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return gens;
}

bool FiniteGroup::check_associative(int exhaustive_limit) const
{
  int n = order_;
  if (n <= exhaustive_limit) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ab = mul(a, b);
        for (int c = 0; c < n; ++c)
          if (mul(ab, c) != mul(a, mul(b, c)))
            return false;
      }
    return true;
  }
  int step = std::max(1, n / 97);
  for (int a = 0; a < n; a += step)
    for (int b = 1; b < n; b += step)
      for (int c = 2; c < n; c += step)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          return false;
  return true;
}

GroupPtr closure_from_generators(int domain_size, std::vector<Perm> const &perms,
                                 std::size_t bound)
{
  if (domain_size < 0)
    throw ValidationError("negative domain size");
  for (auto const &p : perms) {
    if (static_cast<int>(p.size()) != domain_size)
      throw ValidationError("permutation has wrong length");
    std::vector<bool> hit(domain_size, false);
    for (int v : p) {
      if (v < 0 || v >= domain_size || hit[v])
        throw ValidationError("generator is not a permutation");
      hit[v] = true;
    }
  }

  auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  G->kind_ = FiniteGroup::Kind::perm;
  G->degree_ = domain_size;
  Perm id(domain_size);
  std::iota(id.begin(), id.end(), 0);
  G->perms_.push_back(id);
  G->perm_index_[id] = 0;
  for (std::size_t head = 0; head < G->perms_.size(); ++head) {
    for (auto const &s : perms) {
      Perm const &x = G->perms_[head];
      Perm y(domain_size);
      for (int i = 0; i < domain_size; ++i)
        y[i] = s[x[i]];
      if (G->perm_index_.emplace(y, static_cast<int>(G->perms_.size())).second) {
        G->perms_.push_back(std::move(y));
        if (G->perms_.size() > bound)
          throw BoundExceeded("closure bound exceeded");
      }
    }
  }
  G->order_ = static_cast<int>(G->perms_.size());
  G->finish();
  return G;
}

Subgroup Subgroup::generated(GroupPtr G, std::vector<int> const &gens)
{
  Subgroup H;
  for (int g : gens)
    if (g < 0 || g >= G->order())
      throw ValidationError("subgroup generator out of range");
  H.member_.assign(G->order(), false);
  H.member_[0] = true;
  std::vector<int> elems{0};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (int s : gens) {
      int y = G->mul(elems[head], s);
      if (!H.member_[y]) {
        H.member_[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  H.elements_ = std::move(elems);
  H.generators_ = gens;
  H.parent_ = std::move(G);
  return H;
}

Subgroup Subgroup::from_elements(GroupPtr G, std::vector<int> elements)
{
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup H = generated(G, elements);
  if (H.elements_ != elements)
    throw ValidationError("element set is not a subgroup");
  return H;
}

Subgroup Subgroup::whole(GroupPtr G)
{
  return generated(G, G->generating_set());
}

bool Subgroup::is_subset_of(Subgroup const &other) const
{
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](int g) { return other.contains(g); });
}

std::vector<std::vector<int>> left_cosets(Subgroup const &H)
{
  FiniteGroup const &G = H.parent();
  std::vector<bool> covered(G.order(), false);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < G.order(); ++x) {
    if (covered[x])
      continue;
    std::vector<int> block;
    for (int h : H.elements()) {
      int y = G.mul(h, x);
      covered[y] = true;
      block.push_back(y);
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Subgroup subgroup_intersection(Subgroup const &H, Subgroup const &K)
{
  if (H.parent_ptr() != K.parent_ptr())
    throw ValidationError("subgroups have different parents");
  std::vector<int> common;
  std::set_intersection(H.elements().begin(), H.elements().end(),
                        K.elements().begin(), K.elements().end(),
                        std::back_inserter(common));
  return Subgroup::from_elements(H.parent_ptr(), common);
}

Subgroup subgroup_join(Subgroup const &H, Subgroup const &K)
{
  std::vector<int> gens = H.elements();
  gens.insert(gens.end(), K.elements().begin(), K.elements().end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return Subgroup::generated(H.parent_ptr(), gens);
}

std::vector<Subgroup> all_subgroups(GroupPtr G)
{
  if (G->order() > 512)
    throw BoundExceeded("subgroup lattice enumeration limited to order 512");
  std::map<std::vector<int>, Subgroup> found;
  std::vector<Subgroup> frontier;
  for (int g = 0; g < G->order(); ++g) {
    Subgroup C = Subgroup::generated(G, {g});
    if (found.emplace(C.elements(), C).second)
      frontier.push_back(C);
  }
  std::vector<Subgroup> cyclic = frontier;
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (auto const &H : frontier)
      for (auto const &C : cyclic) {
        if (C.is_subset_of(H))
          continue;
        Subgroup J = subgroup_join(H, C);
        if (found.emplace(J.elements(), J).second)
          next.push_back(J);
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto &kv : found)
    out.push_back(kv.second);
  std::stable_sort(out.begin(), out.end(), [](Subgroup const &a, Subgroup const &b) {
    return a.order() < b.order();
  });
  return out;
}

ModularRing::ModularRing(int modulus)
: m(modulus)
{
  if (modulus < 2)
    throw ValidationError("modulus must be at least 2");
}

bool ModularRing::is_unit(int a) const
{
  return std::gcd(a % m, m) == 1;
}

std::vector<int> ModularRing::units() const
{
  std::vector<int> u;
  for (int a = 0; a < m; ++a)
    if (is_unit(a))
      u.push_back(a);
  return u;
}

int evaluate_word(FiniteGroup const &G, std::vector<Subgroup> const &family,
                  Word const &w)
{
  int acc = G.identity();
  for (Letter const &l : w) {
    if (l.subgroup < 0 || l.subgroup >= static_cast<int>(family.size()))
      throw ValidationError("word letter names an unknown subgroup");
    if (l.element < 0 || l.element >= G.order() ||
        !family[l.subgroup].contains(l.element))
      throw ValidationError("word letter not in its subgroup");
    acc = G.mul(acc, l.element);
  }
  return acc;
}

int GeneralLinearGroup::elementary(int i, int j, int r) const
{
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw ValidationError("elementary matrix needs distinct indices in range");
  std::vector<int> a(static_cast<std::size_t>(n * n), 0);
  for (int k = 0; k < n; ++k)
    a[k * n + k] = 1;
  a[(i - 1) * n + (j - 1)] = ((r % ring.m) + ring.m) % ring.m;
  return group->index_of_matrix(a);
}

GeneralLinearGroup general_linear_group(int n, int modulus)
{
  if (n != 2 && n != 3)
    throw ValidationError("general linear group supports n = 2 or 3");
  ModularRing R(modulus);
  if (n == 3 && modulus > 5)
    throw BoundExceeded("enumeration bound exceeded: n = 3 needs modulus <= 5");
  if (n == 2 && modulus > 30)
    throw BoundExceeded("enumeration bound exceeded: n = 2 needs modulus <= 30");

  std::uint32_t total = 1;
  for (int k = 0; k < n * n; ++k)
    total *= static_cast<std::uint32_t>(modulus);

  auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  G->kind_ = FiniteGroup::Kind::matrix;
  G->mat_n_ = n;
  G->mat_m_ = modulus;
  G->code_index_.assign(total, -1);

  std::vector<int> id(static_cast<std::size_t>(n * n), 0);
  for (int k = 0; k < n; ++k)
    id[k * n + k] = 1;
  std::uint32_t id_code = encode(id, modulus);
  G->codes_.push_back(id_code);
  G->code_index_[id_code] = 0;
  for (std::uint32_t c = 0; c < total; ++c) {
    if (c == id_code)
      continue;
    if (R.is_unit(mat_det(decode(c, n, modulus), n, modulus))) {
      G->code_index_[c] = static_cast<int>(G->codes_.size());
      G->codes_.push_back(c);
    }
  }
  G->order_ = static_cast<int>(G->codes_.size());
  G->finish();

  GeneralLinearGroup out;
  out.group = G;
  out.n = n;
  out.ring = R;
  return out;
}

} // namespace gatlas
