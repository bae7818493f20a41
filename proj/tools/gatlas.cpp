// gatlas: command-line front end.
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gatlas/atlas.hpp"
#include "gatlas/cog.hpp"
#include "gatlas/complex.hpp"
#include "gatlas/covering.hpp"
#include "gatlas/error.hpp"
#include "gatlas/homotopy.hpp"
#include "gatlas/io.hpp"
#include "gatlas/presentation.hpp"

using namespace gatlas;
using io::json;

namespace {

constexpr char const *tool_version = "0.3.0";

struct Options
{
  std::string input;
  std::string out;
  std::string export_complex;
  std::string complex_choice = "nerve";
  std::string candidate;
  std::string perm_rep;
  std::string group;
  std::string subgroups;
  int window = 3;
  int base = 0;
  int max_frame = 3;
  int step_budget = 1;
  std::size_t bound = 20000;
  std::size_t loop_bound = 200000;
  std::size_t cap = SimplicialComplex::default_cap;
  std::size_t sd_cap = 200000;
};

/// Every byte read, in order, feeds the input hash.
struct Inputs
{
  std::string bytes;

  std::string load(std::string const &path)
  {
    std::string text = io::read_file(path);
    bytes += text;
    return text;
  }

  json load_json(std::string const &path)
  {
    return io::parse_json(load(path), path);
  }

  /// Inline JSON or a file name.
  json load_inline(std::string const &arg, std::string const &what)
  {
    auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
      bytes += arg;
      return io::parse_json(arg, what);
    }
    return load_json(arg);
  }
};

std::string require(std::string const &value, char const *flag)
{
  if (value.empty())
    throw ValidationError(std::string("missing ") + flag);
  return value;
}

json complex_summary(SimplicialComplex const &K)
{
  return {{"vertices", K.vertex_count()},
          {"f_vector", K.f_vector()},
          {"dimension", K.dimension()},
          {"euler", euler_characteristic(K)},
          {"components", component_count(K)}};
}

void export_complex(Options const &o, SimplicialComplex const &K)
{
  if (o.export_complex.empty())
    return;
  std::ofstream out(o.export_complex, std::ios::binary);
  if (!out)
    throw ValidationError("cannot write " + o.export_complex);
  std::string const &p = o.export_complex;
  if (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0)
    out << io::complex_to_json(K).dump(2) << "\n";
  else
    out << io::complex_to_text(K);
}

struct Loaded
{
  std::optional<io::AtlasSpec> atlas;
  std::optional<SimplicialComplex> complex;
};

/// Atlas spec, complex spec (JSON with "simplices") or text complex.
Loaded load_input(Options const &o, Inputs &in)
{
  std::string text = in.load(require(o.input, "--input"));
  Loaded l;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    l.complex = io::parse_complex_text(text);
    return l;
  }
  json j = io::parse_json(text, o.input);
  if (io::is_complex_spec(j))
    l.complex = io::parse_complex(j);
  else
    l.atlas = io::parse_atlas(j);
  return l;
}

io::AtlasSpec load_atlas(Options const &o, Inputs &in)
{
  Loaded l = load_input(o, in);
  if (!l.atlas)
    throw ValidationError(o.input + ": expected an atlas spec");
  return *l.atlas;
}

/// The complex of the input: given directly, or V(A) / N(A) of an atlas.
SimplicialComplex input_complex(Options const &o, Inputs &in, json &report)
{
  Loaded l = load_input(o, in);
  if (l.complex) {
    report["complex"] = "input";
    return *l.complex;
  }
  report["complex"] = o.complex_choice;
  if (o.complex_choice == "vietoris")
    return vietoris_complex(*l.atlas->atlas, o.cap);
  return nerve_complex(*l.atlas->atlas, o.cap).complex;
}

json check_json(CheckResult const &r)
{
  json j = {{"ok", r.ok}};
  if (!r.ok) {
    j["reason"] = r.reason;
    if (r.coord >= 0)
      j["coord"] = r.coord;
    if (!r.witness.empty())
      j["witness"] = r.witness;
  }
  return j;
}

json pi0_json(GroupoidAtlas const &A)
{
  auto comps = pi0(A);
  json sizes = json::array(), reps = json::array();
  for (auto const &c : comps) {
    sizes.push_back(c.size());
    reps.push_back(c.front());
  }
  return {{"points", A.size()},
          {"components", comps.size()},
          {"sizes", sizes},
          {"representatives", reps}};
}

json cmd_vietoris(Options const &o, Inputs &in)
{
  io::AtlasSpec s = load_atlas(o, in);
  SimplicialComplex V = vietoris_complex(*s.atlas, o.cap);
  export_complex(o, V);
  json r = complex_summary(V);
  r["maximal_simplices"] = V.maximal_simplices().size();
  return r;
}

json cmd_nerve(Options const &o, Inputs &in)
{
  io::AtlasSpec s = load_atlas(o, in);
  NerveComplex N = nerve_complex(*s.atlas, o.cap);
  export_complex(o, N.complex);
  json r = complex_summary(N.complex);
  r["vertex_sets"] = N.vertex_sets;
  json refs = json::array();
  for (auto const &v : N.vertex_orbits) {
    json a = json::array();
    for (auto [c, orb] : v)
      a.push_back({c, orb});
    refs.push_back(a);
  }
  r["vertex_orbits"] = refs;
  return r;
}

json cmd_pi0(Options const &o, Inputs &in)
{
  return pi0_json(*load_atlas(o, in).atlas);
}

json cmd_k1(Options const &o, Inputs &in)
{
  io::AtlasSpec s = load_atlas(o, in);
  if (s.kind != "gl")
    throw ValidationError(o.input + ": k1 needs a gl atlas spec");
  json r = pi0_json(*s.atlas);
  r["group_order"] = s.group->order();
  r["k1_order"] = r["components"];
  r["identity_component_order"] = r["sizes"][0];
  return r;
}

json cmd_pi1(Options const &o, Inputs &in)
{
  json r;
  SimplicialComplex K = input_complex(o, in, r);
  if (o.base < 0 || o.base >= K.vertex_count())
    throw ValidationError("--base out of range");
  export_complex(o, K);
  Presentation P = edge_path_presentation(K, o.base);
  RankReport rep = presentation_rank_report(P, K.dimension() <= 1);
  r["generators"] = rep.simplified.generator_count;
  r["relators"] = rep.simplified.relators.size();
  r["abelianization"] = {{"free_rank", rep.free_rank}, {"torsion", rep.torsion}};
  r["free_certificate"] = rep.free_certificate ? json(*rep.free_certificate) : json(nullptr);
  r["presentation"] = rep.simplified.to_string();
  r["edge_path"] = {{"generators", P.generator_count}, {"relators", P.relators.size()}};
  return r;
}

json cmd_homology(Options const &o, Inputs &in)
{
  json r;
  SimplicialComplex K = input_complex(o, in, r);
  export_complex(o, K);
  json h = io::homology_to_json(homology(K));
  r["betti"] = h["betti"];
  r["torsion"] = h["torsion"];
  r["euler"] = euler_characteristic(K);
  r["f_vector"] = K.f_vector();
  return r;
}

/// Sd² contiguity of the Dowker maps, or null past the cap.
json contiguity(Relation const &R, std::size_t cap)
{
  try {
    DowkerPair d = dowker_pair(R, cap);
    ComplexPtr K = share(d.K), L = share(d.L);
    ComplexPtr sdK = share(barycentric_subdivision(*K, cap));
    ComplexPtr sd2K = share(barycentric_subdivision(*sdK, cap));
    ComplexPtr sdL = share(barycentric_subdivision(*L, cap));
    SimplicialMap left = compose(dowker_phi(K, sdK), dowker_phi(sdK, sd2K));
    SimplicialMap psibar = dowker_psibar(R, K, L, sdK);
    SimplicialMap right = compose(dowker_psi(R, K, L, sdL), subdivide_map(psibar, sd2K, sdL));
    return are_contiguous(left, right);
  } catch (BoundExceeded const &) {
    return nullptr;
  }
}

json cmd_check_dowker(Options const &o, Inputs &in)
{
  Loaded l = load_input(o, in);
  json r;
  Relation R;
  bool ok = true;
  if (l.complex) {
    R = vertex_in_simplex_relation(*l.complex);
    DowkerPair d = dowker_pair(R, o.cap);
    r["k_equals_input"] = d.K == *l.complex;
    r["homology_equal"] = same_homology(homology(d.K), homology(d.L));
    ok = d.K == *l.complex && r["homology_equal"].get<bool>();
  } else {
    GroupoidAtlas const &A = *l.atlas->atlas;
    NerveComplex N = nerve_complex(A, o.cap);
    SimplicialComplex V = vietoris_complex(A, o.cap);
    R = membership_relation(A, N);
    DowkerPair d = dowker_pair(R, o.cap);
    bool kv = d.K == V, ln = d.L == N.complex;
    bool hom = same_homology(homology(V), homology(N.complex));
    r["k_equals_vietoris"] = kv;
    r["l_equals_nerve"] = ln;
    r["homology_equal"] = hom;
    ok = kv && ln && hom;
  }
  json forward = contiguity(R, o.sd_cap), backward = contiguity(R.transposed(), o.sd_cap);
  r["contiguous_sd2_k"] = forward;
  r["contiguous_sd2_l"] = backward;
  if (forward.is_boolean())
    ok = ok && forward.get<bool>();
  if (backward.is_boolean())
    ok = ok && backward.get<bool>();
  r["ok"] = ok;
  return r;
}

json cmd_check_infimum(Options const &o, Inputs &in)
{
  io::AtlasSpec s = load_atlas(o, in);
  if (o.max_frame < 1)
    throw ValidationError("--max-frame must be positive");
  InfimumReport rep = check_infimum(*s.atlas, o.max_frame);
  json r = {{"ok", rep.ok}, {"max_frame", o.max_frame}};
  if (!rep.ok)
    r["counterexample"] = {{"frame", rep.frame}, {"coords", rep.coords}};
  return r;
}

json cmd_check_volodin(Options const &o, Inputs &in)
{
  json j = in.load_json(require(o.input, "--input"));
  if (!j.is_object() || !j.contains("group") || !j.contains("subgroups"))
    throw ValidationError(o.input + ": expected {\"group\", \"subgroups\", \"leq_pairs\"?}");
  GroupPtr G = io::parse_group(j["group"]);
  auto family = io::parse_subgroups(G, j["subgroups"]);
  int n = static_cast<int>(family.size());
  std::vector<std::pair<int, int>> leq;
  if (j.contains("leq_pairs")) {
    for (auto const &p : j["leq_pairs"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
          !p[1].is_number_integer())
        throw ValidationError(o.input + ": leq_pairs: expected integer pairs");
      leq.push_back({p[0].get<int>(), p[1].get<int>()});
    }
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (family[a].is_subset_of(family[b]))
          leq.push_back({a, b});
  }
  return check_json(is_volodin_model(G, family, CoordinateSystem(n, leq)));
}

json cmd_check_covering(Options const &o, Inputs &in)
{
  std::string path = o.candidate.empty() ? o.input : o.candidate;
  CoveringCandidate c = io::parse_candidate(in.load_json(require(path, "--candidate")));
  json r;
  CheckResult weak = is_weak_morphism(c.morphism);
  r["weak_morphism"] = check_json(weak);
  if (c.morphism.witness)
    r["strong_morphism"] = check_json(is_strong_morphism(c.morphism));
  if (!weak.ok) {
    r["covering"] = {{"ok", false}, {"reason", "not a weak morphism"}};
    return r;
  }
  CoveringReport cov = is_covering(c, o.max_frame);
  json cj = {{"ok", cov.ok}};
  if (!cov.ok) {
    cj["reason"] = cov.reason;
    if (cov.orbit.first >= 0)
      cj["orbit"] = {cov.orbit.first, cov.orbit.second};
    if (cov.point >= 0)
      cj["point"] = cov.point;
    if (!cov.frame.empty())
      cj["frame"] = cov.frame;
  }
  r["covering"] = cj;
  r["star_conditions"] = check_json(star_conditions(c));
  r["fibers"] = fiber_cardinalities(c);
  return r;
}

json cmd_build_cover(Options const &o, Inputs &in)
{
  std::string path = o.perm_rep.empty() ? o.input : o.perm_rep;
  io::PermRep p = io::parse_perm_rep(in.load_json(require(path, "--perm-rep")));
  SimplicialCover sc = build_cover_from_perm_rep(p.complex, p.base, p.perms, p.fiber, o.cap);
  export_complex(o, *sc.total);
  json r = {{"fiber", sc.fiber},
            {"base", complex_summary(*sc.base)},
            {"total", complex_summary(*sc.total)}};
  r["euler_multiplies"] =
      euler_characteristic(*sc.total) == sc.fiber * euler_characteristic(*sc.base);
  if (sc.fiber <= 8) {
    GroupPtr D = deck_group(sc);
    r["deck_group_order"] = D->order();
    r["regular"] = D->order() == sc.fiber;
  } else {
    r["deck_group_order"] = nullptr;
  }
  return r;
}

json cmd_universal(Options const &o, Inputs &in)
{
  GroupPtr G;
  std::vector<Subgroup> family;
  if (!o.group.empty()) {
    G = io::parse_group(in.load_inline(o.group, "--group"));
    family = io::parse_subgroups(G, in.load_inline(require(o.subgroups, "--subgroups"),
                                                   "--subgroups"));
  } else {
    io::AtlasSpec s = load_atlas(o, in);
    if (s.kind != "single_domain")
      throw ValidationError(o.input + ": universal needs a single_domain spec or --group");
    G = s.group;
    family = s.subgroups;
  }
  UniversalData u = single_domain_universal_data(G, family, o.bound);
  json r = {{"colimit", io::presentation_to_json(u.colimit)},
            {"verdict", u.verdict},
            {"group_order", G->order()},
            {"image_order", u.image_order}};
  r["kernel_rank"] = u.kernel_rank ? json(*u.kernel_rank) : json(nullptr);
  r["colimit_order"] = u.verdict == "finite" ? json(u.colimit_order) : json(nullptr);
  return r;
}

json cog_json(ComplexOfGroups const &cog)
{
  json simplices = json::array();
  for (int s = 0; s < cog.scwol.object_count(); ++s)
    simplices.push_back({{"simplex", cog.scwol.base->simplex(s)},
                         {"group", cog.names[s]},
                         {"elements", cog.groups[s].elements()}});
  json edges = json::array();
  for (std::size_t a = 0; a < cog.scwol.edges.size(); ++a) {
    json table = json::array();
    for (auto [g, h] : cog.psi[a])
      table.push_back({g, h});
    edges.push_back({{"initial", cog.scwol.edges[a].initial},
                     {"terminal", cog.scwol.edges[a].terminal},
                     {"hom", table}});
  }
  json twists = json::array();
  for (auto const &p : cog.scwol.pairs)
    twists.push_back({{"a", p.a}, {"b", p.b}, {"element", cog.twist_of(p.a, p.b)}});
  return {{"simplices", simplices}, {"edges", edges}, {"twists", twists}};
}

json cmd_cog_pi1(Options const &o, Inputs &in)
{
  io::AtlasSpec s = load_atlas(o, in);
  ActionCog ac = single_domain_cog(*s.atlas);
  export_complex(o, *ac.cog.scwol.base);
  Presentation P = cog_pi1_presentation(ac.cog);
  RankReport rep = presentation_rank_report(P);
  return {{"axioms", check_json(verify_cog_axioms(ac.cog))},
          {"base", complex_summary(*ac.cog.scwol.base)},
          {"cog", cog_json(ac.cog)},
          {"presentation", io::presentation_to_json(P)},
          {"abelianization", {{"free_rank", rep.free_rank}, {"torsion", rep.torsion}}}};
}

json cmd_loops(Options const &o, Inputs &in)
{
  io::AtlasSpec s = load_atlas(o, in);
  if (o.window < 0)
    throw ValidationError("--window must be nonnegative");
  if (o.base < 0 || o.base >= s.atlas->size())
    throw ValidationError("--base out of range");
  LoopComponents lc = bounded_loop_components(*s.atlas, o.base, o.window, o.step_budget,
                                              o.loop_bound);
  return {{"base", o.base},
          {"window", o.window},
          {"step_budget", o.step_budget},
          {"loops", lc.loops},
          {"components", lc.components}};
}

void emit(Options const &o, json const &report)
{
  std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out)
    throw ValidationError("cannot write " + o.out);
  out << text;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Global actions and groupoid atlases: complexes, pi0, pi1, coverings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  Options o;
  using Handler = std::function<json(Options const &, Inputs &)>;
  std::vector<std::pair<CLI::App *, Handler>> commands;

  auto add = [&](char const *name, char const *help, Handler h) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", o.input, "input spec file");
    sub->add_option("--out,-o", o.out, "write the report here instead of stdout");
    commands.push_back({sub, std::move(h)});
    return sub;
  };
  auto complexes = [&](CLI::App *sub) {
    sub->add_option("--complex", o.complex_choice, "complex of an atlas input")
        ->check(CLI::IsMember({"vietoris", "nerve"}));
  };
  auto exporting = [&](CLI::App *sub) {
    sub->add_option("--export-complex", o.export_complex,
                    "also write the complex (.json, else text)");
  };
  auto capped = [&](CLI::App *sub) {
    sub->add_option("--cap", o.cap, "simplex cap")->check(CLI::PositiveNumber);
  };

  auto *v = add("vietoris", "Vietoris complex V(A)", cmd_vietoris);
  exporting(v);
  capped(v);
  auto *n = add("nerve", "nerve N(A) of the local orbits", cmd_nerve);
  exporting(n);
  capped(n);
  add("pi0", "connected components", cmd_pi0);
  add("k1", "pi0 of a gl atlas, GL_n(R)/E_n(R)", cmd_k1);
  auto *p1 = add("pi1", "edge-path presentation of pi1", cmd_pi1);
  complexes(p1);
  exporting(p1);
  capped(p1);
  p1->add_option("--base", o.base, "base vertex");
  auto *h = add("homology", "integral homology", cmd_homology);
  complexes(h);
  exporting(h);
  capped(h);
  auto *d = add("check-dowker", "Dowker duality and Sd^2 contiguity", cmd_check_dowker);
  capped(d);
  d->add_option("--sd-cap", o.sd_cap, "simplex cap for subdivisions")
      ->check(CLI::PositiveNumber);
  auto *inf = add("check-infimum", "infimum condition on frames", cmd_check_infimum);
  inf->add_option("--max-frame", o.max_frame, "largest frame size");
  add("check-volodin", "Volodin model conditions", cmd_check_volodin);
  auto *cc = add("check-covering", "covering map checks", cmd_check_covering);
  cc->add_option("--candidate", o.candidate, "candidate file");
  cc->add_option("--max-frame", o.max_frame, "frame size for brute-force lifting");
  auto *bc = add("build-cover", "cover from a permutation representation", cmd_build_cover);
  bc->add_option("--perm-rep", o.perm_rep, "permutation representation file");
  exporting(bc);
  capped(bc);
  auto *u = add("universal", "colimit of the subgroup family", cmd_universal);
  u->add_option("--group", o.group, "group spec file or inline JSON");
  u->add_option("--subgroups", o.subgroups, "subgroup list file or inline JSON");
  u->add_option("--bound", o.bound, "coset enumeration bound")->check(CLI::PositiveNumber);
  auto *cg = add("cog-pi1", "complex of groups and its pi1", cmd_cog_pi1);
  exporting(cg);
  auto *lp = add("loops", "bounded loop components", cmd_loops);
  lp->add_option("--window", o.window, "window length N");
  lp->add_option("--base", o.base, "base point");
  lp->add_option("--step-budget", o.step_budget, "squares per neighbour move");
  lp->add_option("--loop-bound", o.loop_bound, "largest loop count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (auto const &[sub, handler] : commands) {
    if (!sub->parsed())
      continue;
    Inputs in;
    try {
      json report = handler(o, in);
      report["command"] = sub->get_name();
      report["tool_version"] = tool_version;
      report["input_hash"] = io::fnv1a_hex(in.bytes);
      emit(o, report);
      return report.value("verdict", "") == "bound-exceeded" ? 3 : 0;
    } catch (BoundExceeded const &e) {
      std::cerr << "bound exceeded: " << e.what() << "\n";
      return 3;
    } catch (ValidationError const &e) {
      std::cerr << "validation error: " << e.what() << "\n";
      return 2;
    } catch (json::exception const &e) {
      std::cerr << "validation error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
