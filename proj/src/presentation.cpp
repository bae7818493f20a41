#include "gatlas/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "gatlas/complex.hpp"
#include "gatlas/error.hpp"

namespace gatlas {

std::string Presentation::label(int i) const
{
  if (i < static_cast<int>(generator_labels.size()) && !generator_labels[i].empty())
    return generator_labels[i];
  return "g" + std::to_string(i + 1);
}

std::string Presentation::to_string() const
{
  std::ostringstream out;
  out << '<';
  for (int i = 0; i < generator_count; ++i)
    out << (i ? "," : "") << "g" << i + 1;
  out << " | ";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    out << (r ? "," : "");
    for (std::size_t k = 0; k < relators[r].size(); ++k) {
      int l = relators[r][k];
      out << (k ? " " : "") << "g" << std::abs(l) << (l > 0 ? "^1" : "^-1");
    }
  }
  out << '>';
  return out.str();
}

void Presentation::validate() const
{
  if (generator_count < 0)
    throw ValidationError("negative generator count");
  for (auto const &r : relators)
    for (int l : r)
      if (l == 0 || std::abs(l) > generator_count)
        throw ValidationError("relator letter out of range");
}

GenWord free_reduce(GenWord const &w)
{
  GenWord out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

GenWord cyclic_reduce(GenWord const &w)
{
  GenWord r = free_reduce(w);
  std::size_t a = 0, b = r.size();
  while (b - a >= 2 && r[a] == -r[b - 1]) {
    ++a;
    --b;
  }
  return GenWord(r.begin() + static_cast<long>(a), r.begin() + static_cast<long>(b));
}

GenWord invert(GenWord const &w)
{
  GenWord out(w.rbegin(), w.rend());
  for (int &l : out)
    l = -l;
  return out;
}

namespace {

GenWord canonical_cyclic(GenWord const &w)
{
  GenWord c = cyclic_reduce(w);
  if (c.empty())
    return c;
  GenWord best = c;
  for (GenWord const &base : {c, invert(c)}) {
    GenWord rot = base;
    for (std::size_t k = 0; k < rot.size(); ++k) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (rot < best)
        best = rot;
    }
  }
  return best;
}

class Simplifier
{
public:
  Simplifier(Presentation const &P)
  : n_(P.generator_count)
  , alive_(static_cast<std::size_t>(P.generator_count), true)
  {
    for (auto const &r : P.relators)
      rels_.push_back(r);
    normalize();
  }

  void run(SimplifyLevel level)
  {
    while (step_short() || (level == SimplifyLevel::full && step_eliminate()))
      ;
  }

  Presentation result(Presentation const &P) const
  {
    Presentation Q;
    std::vector<int> renum(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i)
      if (alive_[i]) {
        renum[i] = ++Q.generator_count;
        Q.generator_labels.push_back(P.label(i));
      }
    for (auto const &r : rels_) {
      GenWord w;
      for (int l : r)
        w.push_back(l > 0 ? renum[l - 1] : -renum[-l - 1]);
      Q.relators.push_back(w);
    }
    return Q;
  }

private:
  void normalize()
  {
    std::set<GenWord> seen;
    std::vector<GenWord> out;
    for (auto const &r : rels_) {
      GenWord c = cyclic_reduce(r);
      if (c.empty())
        continue;
      if (seen.insert(canonical_cyclic(c)).second)
        out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](GenWord const &a, GenWord const &b) { return a.size() < b.size(); });
    rels_ = std::move(out);
  }

  void substitute(int g, GenWord const &W)
  {
    GenWord Winv = invert(W);
    for (auto &r : rels_) {
      GenWord out;
      for (int l : r) {
        if (l == g + 1)
          out.insert(out.end(), W.begin(), W.end());
        else if (l == -(g + 1))
          out.insert(out.end(), Winv.begin(), Winv.end());
        else
          out.push_back(l);
      }
      r = std::move(out);
    }
    alive_[g] = false;
    normalize();
  }

  bool step_short()
  {
    for (std::size_t k = 0; k < rels_.size(); ++k) {
      GenWord const &r = rels_[k];
      if (r.size() == 1) {
        int g = std::abs(r[0]) - 1;
        substitute(g, {});
        return true;
      }
      if (r.size() == 2 && std::abs(r[0]) != std::abs(r[1])) {
        // a^e1 b^e2 = 1 gives a = b^(-e1·e2); keep the smaller index.
        int a = r[0], b = r[1];
        if (std::abs(a) < std::abs(b))
          std::swap(a, b);
        int e1 = a > 0 ? 1 : -1, e2 = b > 0 ? 1 : -1;
        int g = std::abs(a) - 1;
        substitute(g, {-e1 * e2 * std::abs(b)});
        return true;
      }
    }
    return false;
  }

  bool step_eliminate()
  {
    std::map<int, int> total;
    for (auto const &r : rels_)
      for (int l : r)
        ++total[std::abs(l)];
    for (std::size_t k = 0; k < rels_.size(); ++k) {
      GenWord const &r = rels_[k];
      std::map<int, int> count;
      for (int l : r)
        ++count[std::abs(l)];
      int pick = -1;
      for (auto [g, c] : count)
        if (c == 1 && (pick < 0 || total[g] < total[pick]))
          pick = g;
      if (pick < 0)
        continue;
      std::size_t at = 0;
      while (std::abs(r[at]) != pick)
        ++at;
      GenWord rot(r.begin() + static_cast<long>(at), r.end());
      rot.insert(rot.end(), r.begin(), r.begin() + static_cast<long>(at));
      int e = rot[0] > 0 ? 1 : -1;
      GenWord w(rot.begin() + 1, rot.end());
      GenWord value = e == 1 ? invert(w) : w;
      std::size_t growth = 0;
      for (auto const &s : rels_)
        growth += s.size();
      if (growth + total[pick] * value.size() > 2000000)
        continue;
      rels_.erase(rels_.begin() + static_cast<long>(k));
      substitute(pick - 1, value);
      return true;
    }
    return false;
  }

  int n_;
  std::vector<bool> alive_;
  std::vector<GenWord> rels_;
};

} // namespace

Presentation simplify_presentation(Presentation const &P, SimplifyLevel level)
{
  P.validate();
  Simplifier s(P);
  s.run(level);
  return s.result(P);
}

RankReport presentation_rank_report(Presentation const &P, bool complex_is_graph)
{
  P.validate();
  RankReport rep;
  IntMatrix M;
  for (auto const &r : P.relators) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(P.generator_count), 0);
    for (int l : r)
      row[std::abs(l) - 1] += l > 0 ? 1 : -1;
    M.push_back(std::move(row));
  }
  SmithForm snf = smith_normal_form(M);
  rep.free_rank = P.generator_count - snf.rank;
  for (auto d : snf.invariants)
    if (d > 1)
      rep.torsion.push_back(d);
  rep.simplified = simplify_presentation(P);
  if (complex_is_graph)
    rep.free_certificate = "complex is a graph";
  else if (P.relators.empty())
    rep.free_certificate = "no relators";
  else if (rep.simplified.relators.empty())
    rep.free_certificate = "no relators after simplification";
  return rep;
}

std::vector<std::string> canonical_relators(Presentation const &P)
{
  std::vector<std::string> out;
  for (auto const &r : P.relators) {
    GenWord c = cyclic_reduce(r);
    if (c.empty())
      continue;
    std::vector<std::string> best;
    for (GenWord const &base : {c, invert(c)}) {
      GenWord rot = base;
      for (std::size_t k = 0; k < rot.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        std::vector<std::string> tokens;
        for (int l : rot)
          tokens.push_back(P.label(std::abs(l) - 1) + (l > 0 ? "^1" : "^-1"));
        if (best.empty() || tokens < best)
          best = tokens;
      }
    }
    std::string s;
    for (std::size_t k = 0; k < best.size(); ++k)
      s += (k ? " " : "") + best[k];
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool structurally_equal(Presentation const &P, Presentation const &Q)
{
  Presentation a = simplify_presentation(P, SimplifyLevel::merge);
  Presentation b = simplify_presentation(Q, SimplifyLevel::merge);
  std::vector<std::string> la, lb;
  for (int i = 0; i < a.generator_count; ++i)
    la.push_back(a.label(i));
  for (int i = 0; i < b.generator_count; ++i)
    lb.push_back(b.label(i));
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  return la == lb && canonical_relators(a) == canonical_relators(b);
}

namespace {

class CosetEnumerator
{
public:
  CosetEnumerator(Presentation const &P, std::size_t limit)
  : cols_(2 * P.generator_count)
  , limit_(limit)
  {
    for (auto const &r : P.relators) {
      std::vector<int> w;
      for (int l : r)
        w.push_back(l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
      if (!w.empty())
        rels_.push_back(std::move(w));
    }
    new_coset();
  }

  void run()
  {
    for (int a = 0; a < static_cast<int>(p_.size()); ++a) {
      if (p_[a] != a)
        continue;
      for (auto const &w : rels_) {
        scan_and_fill(a, w);
        if (p_[a] != a)
          break;
      }
      if (p_[a] != a)
        continue;
      for (int x = 0; x < cols_; ++x)
        if (at(a, x) < 0)
          define(a, x);
    }
  }

  CosetTable table(int generators) const
  {
    std::vector<int> renum(p_.size(), -1);
    int n = 0;
    for (std::size_t c = 0; c < p_.size(); ++c)
      if (p_[c] == static_cast<int>(c))
        renum[c] = n++;
    CosetTable T;
    T.index = n;
    T.action.assign(static_cast<std::size_t>(generators), std::vector<int>(static_cast<std::size_t>(n)));
    for (std::size_t c = 0; c < p_.size(); ++c)
      if (renum[c] >= 0)
        for (int g = 0; g < generators; ++g)
          T.action[g][renum[c]] = renum[rep(at(static_cast<int>(c), 2 * g))];
    return T;
  }

private:
  int &at(int c, int x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
  int at(int c, int x) const { return table_[static_cast<std::size_t>(c) * cols_ + x]; }

  int new_coset()
  {
    if (p_.size() >= limit_)
      throw BoundExceeded("coset enumeration bound exceeded");
    int c = static_cast<int>(p_.size());
    p_.push_back(c);
    table_.resize(table_.size() + static_cast<std::size_t>(cols_), -1);
    return c;
  }

  void define(int c, int x)
  {
    int d = new_coset();
    at(c, x) = d;
    at(d, x ^ 1) = c;
  }

  int rep(int c) const
  {
    while (p_[c] != c)
      c = p_[c];
    return c;
  }

  int rep_compress(int c)
  {
    int r = rep(c);
    while (p_[c] != r) {
      int next = p_[c];
      p_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b, std::vector<int> &queue)
  {
    a = rep_compress(a);
    b = rep_compress(b);
    if (a == b)
      return;
    if (b < a)
      std::swap(a, b);
    p_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b)
  {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int g = queue[i];
      for (int x = 0; x < cols_; ++x) {
        int d = at(g, x);
        if (d < 0)
          continue;
        if (at(d, x ^ 1) == g)
          at(d, x ^ 1) = -1;
        int mu = rep_compress(g), nu = rep_compress(d);
        if (at(mu, x) >= 0)
          merge(nu, at(mu, x), queue);
        else if (at(nu, x ^ 1) >= 0)
          merge(mu, at(nu, x ^ 1), queue);
        else {
          at(mu, x) = nu;
          at(nu, x ^ 1) = mu;
        }
      }
    }
  }

  void scan_and_fill(int a, std::vector<int> const &w)
  {
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, w[i]) >= 0)
        f = at(f, w[i++]);
      if (i > j) {
        if (f != a)
          coincidence(f, a);
        return;
      }
      while (j >= i && at(b, w[j] ^ 1) >= 0)
        b = at(b, w[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  int cols_;
  std::size_t limit_;
  std::vector<std::vector<int>> rels_;
  std::vector<int> p_;
  std::vector<int> table_;
};

} // namespace

CosetTable todd_coxeter(Presentation const &P, std::size_t bound)
{
  P.validate();
  CosetEnumerator e(P, std::max<std::size_t>(bound * 64, 100000));
  e.run();
  CosetTable T = e.table(P.generator_count);
  if (static_cast<std::size_t>(T.index) > bound)
    throw BoundExceeded("coset enumeration bound exceeded");
  return T;
}

} // namespace gatlas
