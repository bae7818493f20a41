#include "gatlas/cog.hpp"

#include <algorithm>
#include <queue>

#include "gatlas/error.hpp"

namespace gatlas {

int Scwol::edge_between(int initial, int terminal) const
{
  auto it = edge_index.find({initial, terminal});
  return it == edge_index.end() ? -1 : it->second;
}

Scwol scwol_of_complex(ComplexPtr K)
{
  Scwol S;
  S.base = K;
  auto const &simp = K->simplices();
  for (int s = 0; s < static_cast<int>(simp.size()); ++s)
    for (int t = 0; t < static_cast<int>(simp.size()); ++t) {
      if (simp[t].size() >= simp[s].size())
        continue;
      if (std::includes(simp[s].begin(), simp[s].end(), simp[t].begin(), simp[t].end())) {
        S.edge_index[{s, t}] = static_cast<int>(S.edges.size());
        S.edges.push_back({s, t});
      }
    }
  for (int a = 0; a < static_cast<int>(S.edges.size()); ++a)
    for (int b = 0; b < static_cast<int>(S.edges.size()); ++b)
      if (S.edges[a].terminal == S.edges[b].initial)
        S.pairs.push_back({a, b, S.edge_between(S.edges[a].initial, S.edges[b].terminal)});
  return S;
}

int ComplexOfGroups::twist_of(int a, int b) const
{
  auto it = twist.find({a, b});
  return it == twist.end() ? ambient->identity() : it->second;
}

namespace {

std::string simplex_name(SimplicialComplex const &K, Simplex const &s)
{
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + K.vertex_label(s[i]);
  return out + "}";
}

} // namespace

ActionCog cog_from_action(GroupActionOnComplex const &act,
                          std::optional<std::vector<Simplex>> lifts,
                          std::optional<std::vector<int>> h)
{
  if (!act.is_without_inversion())
    throw ValidationError("action has inversions");
  ActionCog out;
  out.quotient = orbit_space(act);
  OrbitSpace const &Q = out.quotient;
  ComplexPtr QK = share(Q.complex);
  SimplicialComplex const &K = *act.complex;
  FiniteGroup const &G = *act.group;

  if (lifts) {
    if (lifts->size() != QK->size())
      throw ValidationError("one lift per quotient simplex required");
    for (std::size_t q = 0; q < lifts->size(); ++q) {
      Simplex s = (*lifts)[q];
      std::sort(s.begin(), s.end());
      if (!K.contains(s) || Q.project(s) != QK->simplex(static_cast<int>(q)) ||
          s.size() != QK->simplex(static_cast<int>(q)).size())
        throw ValidationError("invalid lift for quotient simplex " + std::to_string(q));
      out.lifts.push_back(s);
    }
  } else {
    out.lifts.assign(QK->size(), {});
    std::vector<bool> preferred(QK->size(), false);
    for (auto const &s : K.simplices()) {
      Simplex p = Q.project(s);
      if (p.size() != s.size())
        continue;
      int q = QK->index_of(p);
      bool pref = !act.vertex_sets.empty() &&
                  std::all_of(s.begin(), s.end(), [&](int v) {
                    auto const &set = act.vertex_sets[v];
                    return std::binary_search(set.begin(), set.end(), G.identity());
                  });
      if (out.lifts[q].empty() || (pref && !preferred[q])) {
        out.lifts[q] = s;
        preferred[q] = pref;
      }
    }
  }

  ComplexOfGroups &cog = out.cog;
  cog.scwol = scwol_of_complex(QK);
  cog.ambient = act.group;
  for (std::size_t q = 0; q < QK->size(); ++q) {
    cog.groups.push_back(simplex_stabilizer(act, out.lifts[q]));
    cog.names.push_back("G" + simplex_name(*QK, QK->simplex(static_cast<int>(q))));
  }

  auto const &edges = cog.scwol.edges;
  if (h) {
    if (h->size() != edges.size())
      throw ValidationError("one h_a per scwol edge required");
    out.h = *h;
  } else {
    out.h.assign(edges.size(), G.identity());
  }
  for (std::size_t a = 0; a < edges.size(); ++a) {
    Simplex const &sigma = out.lifts[edges[a].initial];
    Simplex const &target = out.lifts[edges[a].terminal];
    Simplex face;
    for (int v : sigma)
      if (std::binary_search(QK->simplex(edges[a].terminal).begin(),
                             QK->simplex(edges[a].terminal).end(), Q.vertex_class[v]))
        face.push_back(v);
    if (!h && face != target) {
      int found = -1;
      for (int g = 0; g < G.order() && found < 0; ++g)
        if (act.act(face, g) == target)
          found = g;
      out.h[a] = found;
    }
    if (out.h[a] < 0 || out.h[a] >= G.order() || act.act(face, out.h[a]) != target)
      throw ValidationError("invalid h for scwol edge " + std::to_string(a));
  }
  cog.psi.resize(edges.size());
  for (std::size_t a = 0; a < edges.size(); ++a) {
    int ha = out.h[a];
    for (int g : cog.groups[edges[a].initial].elements())
      cog.psi[a][g] = G.mul(G.mul(G.inv(ha), g), ha);
  }
  for (auto const &p : cog.scwol.pairs) {
    int g = G.mul(G.mul(G.inv(out.h[p.ba]), out.h[p.a]), out.h[p.b]);
    if (g != G.identity())
      cog.twist[{p.a, p.b}] = g;
  }
  if (auto r = verify_cog_axioms(cog); !r)
    throw ValidationError("constructed complex of groups fails: " + r.reason);
  return out;
}

ActionCog single_domain_cog(GroupoidAtlas const &A)
{
  NerveComplex N = nerve_complex(A);
  GroupActionOnComplex act = nerve_g_action(A, N);
  ActionCog out = cog_from_action(act);
  ComplexPtr QK = out.cog.scwol.base;
  for (std::size_t q = 0; q < QK->size(); ++q) {
    std::string name;
    for (int v : out.lifts[q])
      name += (name.empty() ? "H" : "∩H") + std::to_string(N.vertex_orbits[v][0].first + 1);
    out.cog.names[q] = name;
  }
  return out;
}

CheckResult verify_cog_axioms(ComplexOfGroups const &cog)
{
  CheckResult res;
  auto fail = [&](std::string why, std::vector<int> witness) {
    res.ok = false;
    res.reason = std::move(why);
    res.witness = std::move(witness);
    return res;
  };
  FiniteGroup const &G = *cog.ambient;
  auto const &edges = cog.scwol.edges;
  if (cog.groups.size() != static_cast<std::size_t>(cog.scwol.object_count()) ||
      cog.psi.size() != edges.size())
    return fail("data sizes do not match the scwol", {});
  for (int a = 0; a < static_cast<int>(edges.size()); ++a) {
    Subgroup const &src = cog.groups[edges[a].initial];
    Subgroup const &dst = cog.groups[edges[a].terminal];
    auto const &m = cog.psi[a];
    std::vector<int> image;
    for (int g : src.elements()) {
      auto it = m.find(g);
      if (it == m.end() || !dst.contains(it->second))
        return fail("psi does not map into the terminal group", {a, g});
      image.push_back(it->second);
    }
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end())
      return fail("psi is not injective", {a});
    for (int g : src.elements())
      for (int k : src.elements())
        if (m.at(G.mul(g, k)) != G.mul(m.at(g), m.at(k)))
          return fail("psi is not a homomorphism", {a, g, k});
  }
  for (auto const &p : cog.scwol.pairs) {
    int t = cog.twist_of(p.a, p.b);
    if (!cog.groups[edges[p.b].terminal].contains(t))
      return fail("twist outside the terminal group", {p.a, p.b});
    for (int g : cog.groups[edges[p.a].initial].elements()) {
      int lhs = G.mul(G.mul(G.inv(t), cog.psi[p.ba].at(g)), t);
      int rhs = cog.psi[p.b].at(cog.psi[p.a].at(g));
      if (lhs != rhs)
        return fail("conjugation identity fails", {p.a, p.b, g});
    }
  }
  for (auto const &p : cog.scwol.pairs)
    for (auto const &q : cog.scwol.pairs) {
      if (q.a != p.b)
        continue;
      int a = p.a, b = p.b, c = q.b;
      int ba = p.ba, cb = q.ba;
      int lhs = G.mul(cog.twist_of(ba, c), cog.psi[c].at(cog.twist_of(a, b)));
      int rhs = G.mul(cog.twist_of(a, cb), cog.twist_of(b, c));
      if (lhs != rhs)
        return fail("cocycle condition fails", {a, b, c});
    }
  return res;
}

Presentation cog_pi1_presentation(ComplexOfGroups const &cog, std::optional<std::set<int>> tree,
                                  bool simplify)
{
  Scwol const &S = cog.scwol;
  FiniteGroup const &G = *cog.ambient;
  int objects = S.object_count();
  if (objects == 0)
    throw ValidationError("empty complex");

  std::set<int> T;
  if (tree) {
    T = *tree;
  } else {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(objects));
    for (int a = 0; a < static_cast<int>(S.edges.size()); ++a) {
      adj[S.edges[a].initial].push_back({S.edges[a].terminal, a});
      adj[S.edges[a].terminal].push_back({S.edges[a].initial, a});
    }
    std::vector<bool> seen(static_cast<std::size_t>(objects), false);
    std::queue<int> queue;
    seen[objects - 1] = true;
    queue.push(objects - 1);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (auto [v, a] : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          T.insert(a);
          queue.push(v);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ValidationError("disconnected complex");
  }
  if (static_cast<int>(T.size()) != objects - 1)
    throw ValidationError("tree does not span the scwol");

  Presentation P;
  std::vector<std::map<int, int>> gen(static_cast<std::size_t>(objects));
  for (int s = 0; s < objects; ++s)
    for (int g : cog.groups[s].elements()) {
      gen[s][g] = ++P.generator_count;
      P.generator_labels.push_back(cog.names[s] + ":" + G.label(g));
    }
  std::vector<int> edge_gen;
  for (auto const &e : S.edges) {
    edge_gen.push_back(++P.generator_count);
    P.generator_labels.push_back("e" + simplex_name(*S.base, S.base->simplex(e.initial)) + ">" +
                                 simplex_name(*S.base, S.base->simplex(e.terminal)));
  }
  for (int s = 0; s < objects; ++s)
    for (int g : cog.groups[s].elements())
      for (int k : cog.groups[s].elements())
        P.relators.push_back(free_reduce({gen[s][g], gen[s][k], -gen[s][G.mul(g, k)]}));
  for (int a = 0; a < static_cast<int>(S.edges.size()); ++a) {
    int i = S.edges[a].initial, t = S.edges[a].terminal;
    for (int g : cog.groups[i].elements())
      P.relators.push_back(
          {-gen[t][cog.psi[a].at(g)], -edge_gen[a], gen[i][g], edge_gen[a]});
  }
  for (auto const &p : S.pairs)
    P.relators.push_back({edge_gen[p.ba],
                          gen[S.edges[p.b].terminal][cog.twist_of(p.a, p.b)],
                          -edge_gen[p.b], -edge_gen[p.a]});
  for (int a : T)
    P.relators.push_back({edge_gen[a]});
  return simplify ? simplify_presentation(P, SimplifyLevel::merge) : P;
}

} // namespace gatlas
