#include "gatlas/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gatlas/error.hpp"
#include "gatlas/union_find.hpp"

namespace gatlas::io {

namespace {

[[noreturn]] void fail(std::string const &where, std::string const &what)
{
  throw ValidationError(where + ": " + what);
}

json const &field(json const &j, char const *key, std::string const &where)
{
  if (!j.is_object())
    fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

int as_int(json const &j, std::string const &where)
{
  if (!j.is_number_integer())
    fail(where, "expected an integer");
  long long v = j.get<long long>();
  if (v < -(1LL << 30) || v > (1LL << 30))
    fail(where, "integer out of range");
  return static_cast<int>(v);
}

int as_positive(json const &j, std::string const &where)
{
  int v = as_int(j, where);
  if (v <= 0)
    fail(where, "expected a positive integer");
  return v;
}

std::vector<int> as_ints(json const &j, std::string const &where)
{
  if (!j.is_array())
    fail(where, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<int>> as_int_lists(json const &j, std::string const &where)
{
  if (!j.is_array())
    fail(where, "expected an array");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_ints(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::pair<int, int>> as_pairs(json const &j, std::string const &where)
{
  std::vector<std::pair<int, int>> out;
  auto lists = as_int_lists(j, where);
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (lists[i].size() != 2)
      fail(where + "[" + std::to_string(i) + "]", "expected a pair");
    out.push_back({lists[i][0], lists[i][1]});
  }
  return out;
}

std::string only_key(json const &j, std::string const &where,
                     std::vector<std::string> const &allowed)
{
  std::vector<std::string> keys;
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "citation" && it.key() != "description")
        keys.push_back(it.key());
  if (keys.size() != 1)
    fail(where, "expected an object with exactly one kind key");
  std::string key = keys[0];
  for (auto const &a : allowed)
    if (a == key)
      return key;
  std::string list;
  for (auto const &a : allowed)
    list += (list.empty() ? "" : ", ") + a;
  fail(where, "unknown kind \"" + key + "\" (expected one of " + list + ")");
}

AtlasPtr explicit_atlas(json const &e, std::string const &where)
{
  json const &pts = field(e, "points", where);
  int n = 0;
  std::vector<std::string> labels;
  if (pts.is_array()) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].is_string())
        fail(where + ".points[" + std::to_string(i) + "]", "expected a string label");
      labels.push_back(pts[i].get<std::string>());
    }
    n = static_cast<int>(labels.size());
  } else {
    n = as_int(pts, where + ".points");
    if (n < 0)
      fail(where + ".points", "negative point count");
  }
  int m = as_int(field(e, "coords", where), where + ".coords");
  std::vector<std::pair<int, int>> leq;
  if (e.contains("leq_pairs"))
    leq = as_pairs(e["leq_pairs"], where + ".leq_pairs");
  json const &local = field(e, "local", where);
  if (!local.is_array() || static_cast<int>(local.size()) != m)
    fail(where + ".local", "expected one entry per coordinate");

  std::vector<LocalGroupoid> locals;
  for (int a = 0; a < m; ++a) {
    std::string w = where + ".local[" + std::to_string(a) + "]";
    std::vector<int> objects = as_ints(field(local[a], "objects", w), w + ".objects");
    std::map<int, std::size_t> pos;
    for (int x : objects) {
      if (x < 0 || x >= n)
        fail(w + ".objects", "point out of range");
      if (!pos.emplace(x, pos.size()).second)
        fail(w + ".objects", "repeated point");
    }
    UnionFind uf(objects.size());
    if (local[a].contains("arrows"))
      for (auto [x, y] : as_pairs(local[a]["arrows"], w + ".arrows")) {
        if (!pos.count(x) || !pos.count(y))
          fail(w + ".arrows", "arrow endpoint is not an object");
        uf.unite(pos[x], pos[y]);
      }
    if (local[a].contains("group")) {
      GroupPtr G = parse_group(local[a]["group"], w + ".group");
      if (!G->is_permutation_group() || G->degree() != n)
        fail(w + ".group", "expected permutations of the underlying set");
      std::sort(objects.begin(), objects.end());
      std::vector<int> blocks;
      if (local[a].contains("arrows"))
        for (int x : objects)
          blocks.push_back(static_cast<int>(uf.find(pos[x])));
      std::vector<int> elements(static_cast<std::size_t>(G->order()));
      std::iota(elements.begin(), elements.end(), 0);
      try {
        locals.push_back(LocalGroupoid::action(
            n, objects, G, elements, [G](int g, int x) { return G->perm(g)[x]; }, blocks));
      } catch (ValidationError const &e) {
        fail(w, e.what());
      }
      continue;
    }
    std::map<std::size_t, std::vector<int>> classes;
    for (int x : objects)
      classes[uf.find(pos[x])].push_back(x);
    std::vector<std::vector<int>> cls;
    for (auto &[r, c] : classes)
      cls.push_back(std::move(c));
    locals.push_back(LocalGroupoid::equivalence(n, cls));
  }
  try {
    return std::make_shared<GroupoidAtlas>(n, CoordinateSystem(m, leq), std::move(locals),
                                           GroupoidAtlas::StructureMaps{}, std::move(labels));
  } catch (ValidationError const &e) {
    fail(where, e.what());
  }
}

json subset_json(std::vector<int> const &s)
{
  json a = json::array();
  for (int i : s)
    a.push_back(i + 1);
  return a;
}

} // namespace

json parse_json(std::string const &text, std::string const &source)
{
  try {
    return json::parse(text);
  } catch (json::parse_error const &e) {
    // e.what() already names line and column
    throw ValidationError(source + ": malformed JSON: " + e.what());
  }
}

std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(std::string const &bytes)
{
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GroupPtr parse_group(json const &j, std::string const &where)
{
  std::string kind = only_key(j, where, {"perm_generators", "cayley_table", "gl"});
  json const &body = j[kind];
  std::string w = where + "." + kind;
  if (kind == "perm_generators") {
    int degree = as_int(field(body, "degree", w), w + ".degree");
    if (degree < 1)
      fail(w + ".degree", "expected a positive integer");
    auto perms = as_int_lists(field(body, "perms", w), w + ".perms");
    try {
      return closure_from_generators(degree, perms);
    } catch (ValidationError const &e) {
      fail(w, e.what());
    }
  }
  if (kind == "cayley_table") {
    try {
      return FiniteGroup::from_table(as_int_lists(body, w));
    } catch (ValidationError const &e) {
      fail(w, e.what());
    }
  }
  int n = as_int(field(body, "n", w), w + ".n");
  int mod = as_int(field(body, "mod", w), w + ".mod");
  if (mod < 2)
    fail(w + ".mod", "modulus must be at least 2");
  try {
    return general_linear_group(n, mod).group;
  } catch (ValidationError const &e) {
    fail(w, e.what());
  }
}

Subgroup parse_subgroup(GroupPtr G, json const &j, std::string const &where)
{
  std::string kind = only_key(j, where, {"generators", "perms", "matrices"});
  std::string w = where + "." + kind;
  std::vector<int> gens;
  if (kind == "generators") {
    gens = as_ints(j[kind], w);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i] < 0 || gens[i] >= G->order())
        fail(w + "[" + std::to_string(i) + "]", "element index out of range");
  } else {
    auto lists = as_int_lists(j[kind], w);
    for (std::size_t i = 0; i < lists.size(); ++i) {
      int g = -1;
      if (kind == "perms" && G->is_permutation_group())
        g = G->index_of(lists[i]);
      else if (kind == "matrices" && G->is_matrix_group())
        g = G->index_of_matrix(lists[i]);
      else
        fail(w, "group has no such representation");
      if (g < 0)
        fail(w + "[" + std::to_string(i) + "]", "not an element of the group");
      gens.push_back(g);
    }
  }
  return Subgroup::generated(std::move(G), gens);
}

std::vector<Subgroup> parse_subgroups(GroupPtr G, json const &j, std::string const &where)
{
  if (!j.is_array() || j.empty())
    fail(where, "expected a nonempty array of subgroups");
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_subgroup(G, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

AtlasSpec parse_atlas(json const &j, std::string const &where)
{
  AtlasSpec s;
  s.kind = only_key(j, where,
                    {"single_domain", "relative", "intersection_closure", "gl", "explicit"});
  json const &body = j[s.kind];
  std::string w = where + "." + s.kind;
  if (s.kind == "explicit") {
    s.atlas = explicit_atlas(body, w);
    return s;
  }
  if (s.kind == "gl") {
    int n = as_int(field(body, "n", w), w + ".n");
    int mod = as_int(field(body, "mod", w), w + ".mod");
    if (mod < 2)
      fail(w + ".mod", "modulus must be at least 2");
    GlAtlas gl;
    try {
      gl = build_gl(n, mod);
    } catch (ValidationError const &e) {
      fail(w, e.what());
    }
    s.atlas = gl.atlas;
    s.group = gl.gl.group;
    s.subgroups = gl.local_groups;
    s.coordinates = json::array();
    for (auto const &alpha : gl.coords) {
      json c = json::array();
      for (auto [a, b] : alpha)
        c.push_back({a, b});
      s.coordinates.push_back(c);
    }
    return s;
  }
  s.group = parse_group(field(body, "group", w), w + ".group");
  s.subgroups = parse_subgroups(s.group, field(body, "subgroups", w), w + ".subgroups");
  if (s.kind == "single_domain") {
    s.atlas = build_single_domain(s.group, s.subgroups);
  } else if (s.kind == "relative") {
    Subgroup K = parse_subgroup(s.group, field(body, "k", w), w + ".k");
    s.atlas = build_relative(s.group, K, s.subgroups);
  } else {
    IntersectionClosure ic = build_intersection_closure(s.group, s.subgroups);
    s.atlas = ic.atlas;
    s.subgroups = ic.groups;
    s.coordinates = json::array();
    for (auto const &sub : ic.subsets)
      s.coordinates.push_back(subset_json(sub));
  }
  return s;
}

bool is_complex_spec(json const &j)
{
  return j.is_object() && j.contains("simplices");
}

SimplicialComplex parse_complex(json const &j, std::string const &where)
{
  auto simplices = as_int_lists(field(j, "simplices", where), where + ".simplices");
  std::vector<std::string> labels;
  int n = 0;
  if (j.contains("vertices")) {
    json const &v = j["vertices"];
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i)
        labels.push_back(v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      n = static_cast<int>(labels.size());
    } else {
      n = as_int(v, where + ".vertices");
    }
  } else {
    for (auto const &s : simplices)
      for (int x : s)
        n = std::max(n, x + 1);
  }
  for (auto &s : simplices)
    std::sort(s.begin(), s.end());
  try {
    return SimplicialComplex::from_maximal(n, simplices, labels);
  } catch (ValidationError const &e) {
    fail(where, e.what());
  }
}

SimplicialComplex parse_complex_text(std::string const &text)
{
  std::istringstream in(text);
  std::string line;
  std::vector<Simplex> simplices;
  int n = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream ls(line);
    Simplex s;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0)
          throw std::invalid_argument(tok);
        s.push_back(v);
        n = std::max(n, v + 1);
      } catch (std::exception const &) {
        fail("line " + std::to_string(lineno), "bad vertex \"" + tok + "\"");
      }
    }
    if (!s.empty()) {
      std::sort(s.begin(), s.end());
      simplices.push_back(s);
    }
  }
  return SimplicialComplex::from_maximal(n, simplices);
}

json complex_to_json(SimplicialComplex const &K)
{
  json v = json::array();
  for (int i = 0; i < K.vertex_count(); ++i)
    v.push_back(K.vertex_label(i));
  return {{"vertices", v}, {"simplices", K.simplices()}};
}

std::string complex_to_text(SimplicialComplex const &K)
{
  std::string out;
  for (auto const &s : K.simplices()) {
    for (std::size_t i = 0; i < s.size(); ++i)
      out += (i ? " " : "") + std::to_string(s[i]);
    out += "\n";
  }
  return out;
}

json presentation_to_json(Presentation const &P)
{
  json labels = json::array();
  for (int i = 0; i < P.generator_count; ++i)
    labels.push_back(P.label(i));
  return {{"generators", P.generator_count},
          {"relators", P.relators.size()},
          {"generator_labels", labels},
          {"relator_words", P.relators},
          {"text", P.to_string()}};
}

json homology_to_json(std::vector<HomologyGroup> const &H)
{
  json betti = json::array(), torsion = json::array();
  for (auto const &h : H) {
    betti.push_back(h.betti);
    torsion.push_back(h.torsion);
  }
  return {{"betti", betti}, {"torsion", torsion}};
}

CoveringCandidate parse_candidate(json const &j, std::string const &where)
{
  AtlasSpec up = parse_atlas(field(j, "upstairs", where), where + ".upstairs");
  AtlasSpec down = parse_atlas(field(j, "downstairs", where), where + ".downstairs");
  std::vector<int> map = as_ints(field(j, "map", where), where + ".map");
  if (static_cast<int>(map.size()) != up.atlas->size())
    fail(where + ".map", "expected one image per upstairs point");
  for (int y : map)
    if (y < 0 || y >= down.atlas->size())
      fail(where + ".map", "image out of range");
  std::optional<StrongWitness> witness;
  if (j.contains("strong") && !j["strong"].is_null()) {
    std::string w = where + ".strong";
    json const &st = j["strong"];
    std::vector<int> coord_map = as_ints(field(st, "coord_map", w), w + ".coord_map");
    if (static_cast<int>(coord_map.size()) != up.atlas->coord_count())
      fail(w + ".coord_map", "expected one image per upstairs coordinate");
    for (int b : coord_map)
      if (b < 0 || b >= down.atlas->coord_count())
        fail(w + ".coord_map", "coordinate out of range");
    if (st.contains("arrow_maps")) {
      json const &am = st["arrow_maps"];
      if (!am.is_array() || am.size() != coord_map.size())
        fail(w + ".arrow_maps", "expected one arrow table per coordinate");
      std::map<std::pair<int, Arrow>, int> table;
      for (std::size_t a = 0; a < am.size(); ++a) {
        std::string wa = w + ".arrow_maps[" + std::to_string(a) + "]";
        auto rows = as_int_lists(am[a], wa);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r].size() != 4)
            fail(wa + "[" + std::to_string(r) + "]", "expected [source, target, label, image]");
          table[{static_cast<int>(a), Arrow{rows[r][0], rows[r][1], rows[r][2]}}] = rows[r][3];
        }
        for (int x : up.atlas->local(static_cast<int>(a)).objects())
          table.emplace(std::pair{static_cast<int>(a), Arrow{x, x, 0}}, 0);
      }
      witness = StrongWitness::from_table(coord_map, std::move(table));
    } else {
      json const &gm = field(st, "group_maps", w);
      if (!gm.is_array() || gm.size() != coord_map.size())
        fail(w + ".group_maps", "expected one label map per coordinate");
      std::vector<std::map<int, int>> maps;
      for (std::size_t a = 0; a < gm.size(); ++a) {
        std::map<int, int> m;
        for (auto [x, y] : as_pairs(gm[a], w + ".group_maps[" + std::to_string(a) + "]"))
          m[x] = y;
        maps.push_back(std::move(m));
      }
      witness = StrongWitness::from_group_maps(coord_map, maps);
    }
  }
  return CoveringCandidate{AtlasMorphism{up.atlas, down.atlas, map, witness}};
}

PermRep parse_perm_rep(json const &j, std::string const &where)
{
  PermRep r;
  r.complex = parse_complex(field(j, "complex", where), where + ".complex");
  r.base = j.contains("base") ? as_int(j["base"], where + ".base") : 0;
  if (r.base < 0 || r.base >= r.complex.vertex_count())
    fail(where + ".base", "base vertex out of range");
  r.fiber = as_positive(field(j, "fiber", where), where + ".fiber");
  r.perms = as_int_lists(field(j, "perms", where), where + ".perms");
  for (std::size_t i = 0; i < r.perms.size(); ++i) {
    std::vector<bool> hit(static_cast<std::size_t>(r.fiber), false);
    if (static_cast<int>(r.perms[i].size()) != r.fiber)
      fail(where + ".perms[" + std::to_string(i) + "]", "wrong length");
    for (int v : r.perms[i]) {
      if (v < 0 || v >= r.fiber || hit[v])
        fail(where + ".perms[" + std::to_string(i) + "]", "not a permutation");
      hit[v] = true;
    }
  }
  return r;
}

} // namespace gatlas::io
