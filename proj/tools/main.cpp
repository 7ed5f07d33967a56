// Command-line front end: build windows and wall systems, analyze median
// subalgebras, run the discrete classification procedures. Reports are
// deterministic JSON for a given (config, seed).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cubemedian/builders.hpp"
#include "cubemedian/classification.hpp"
#include "cubemedian/errors.hpp"
#include "cubemedian/io.hpp"
#include "cubemedian/subalgebra.hpp"

using namespace cubemedian;

namespace {

struct CommonOpts {
  std::string out = ".";
  long long seed = 0;
  long long budget_states = 1'000'000;
  long long budget_geodesics = 100'000;
  bool dot = false;
  bool timing = false;
  bool alpha_enumerate = false;
};

void add_common(CLI::App* app, CommonOpts& c) {
  app->add_option("--out", c.out, "output directory");
  app->add_option("--seed", c.seed, "seed for randomized sweeps");
  app->add_option("--budget-states", c.budget_states,
                  "state budget for word-problem searches");
  app->add_option("--budget-geodesics", c.budget_geodesics,
                  "budget for geodesic enumeration");
  app->add_flag("--dot", c.dot, "also write DOT artifacts");
  app->add_flag("--timing", c.timing,
                "include wall-clock timing in the report (breaks "
                "byte-for-byte reproducibility)");
}

long long env_budget(long long fallback) {
  if (const char* e = std::getenv("CUBEMEDIAN_BUDGET")) {
    try {
      return std::stoll(e);
    } catch (const std::exception&) {
      throw InputError("CUBEMEDIAN_BUDGET is not an integer");
    }
  }
  return fallback;
}

DefiningGraph graph_from_mask(int n, unsigned long long mask) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1) edges.emplace_back(labels[i], labels[j]);
  return DefiningGraph(std::move(labels), edges);
}

std::string out_path(const CommonOpts& c, const std::string& name) {
  std::filesystem::create_directories(c.out);
  return (std::filesystem::path(c.out) / name).string();
}

void emit_report(const CommonOpts& c, const std::string& command,
                 const Json& config, const Json& payload, int certified,
                 int truncated, double elapsed_ms) {
  Json rep = make_report(command, config, payload, c.seed, certified,
                         truncated);
  if (c.timing) rep["timing_ms"] = elapsed_ms;
  std::string text = rep.dump(2) + "\n";
  write_text_file(out_path(c, "report.json"), text);
  std::cout << text;
}

GroupPresentation load_presentation(const std::string& path, Kind expect,
                                    long long budget) {
  Json j = load_json_file(path);
  GroupPresentation p =
      j.contains("kind")
          ? presentation_from_json(j)
          : (expect == Kind::RACG
                 ? GroupPresentation::racg(graph_from_json(j))
                 : expect == Kind::RAAG
                       ? GroupPresentation::raag(graph_from_json(j))
                       : throw InputError(
                             "file needs a presentation 'kind' field"));
  if (p.kind() != expect)
    throw InputError("presentation kind mismatch: expected " +
                     kind_name(expect) + ", got " + kind_name(p.kind()));
  p.set_state_budget(budget);
  return p;
}

// ---- build ----

int cmd_build(const CommonOpts& c, const std::string& racg,
              const std::string& raag, const std::string& gp,
              const std::string& tiling, int hexagon, const std::string& nr,
              bool sageev, int radius, int halfwidth) {
  auto t0 = std::chrono::steady_clock::now();
  Json config{{"radius", radius}, {"halfwidth", halfwidth}};
  Json payload;
  long long budget = env_budget(c.budget_states);

  auto ball_artifacts = [&](const CubeBall& b, const std::string& stem) {
    write_text_file(out_path(c, stem + ".json"), ball_to_json(b).dump(2) + "\n");
    if (c.dot) write_text_file(out_path(c, stem + ".dot"), b.to_dot());
    Json j{{"artifact", stem + ".json"},
           {"vertices", b.vertex_count()},
           {"edges", b.edge_count()},
           {"squares", (int)b.squares().size()}};
    if (b.has_theta()) {
      j["theta_classes"] = b.theta_class_count();
      j["dimension"] = b.dimension();
    }
    return j;
  };

  if (!racg.empty() || !raag.empty()) {
    config["input"] = racg.empty() ? raag : racg;
    auto p = load_presentation(racg.empty() ? raag : racg,
                               racg.empty() ? Kind::RAAG : Kind::RACG, budget);
    payload["ball"] = ball_artifacts(standard_ball(p, radius), "ball");
  } else if (!gp.empty()) {
    config["input"] = gp;
    Json j = load_json_file(gp);
    GroupPresentation p = presentation_from_json(j);
    if (p.kind() != Kind::GraphProductFinite && p.kind() != Kind::RACG)
      throw InputError("graph-product build needs finite vertex groups");
    p.set_state_budget(budget);
    payload["ball"] = ball_artifacts(graph_product_ball(p, radius), "coset_ball");
  } else if (!tiling.empty()) {
    config["input"] = tiling;
    AffineAction a = affine_action_from_json(load_json_file(tiling));
    TilingWindow w = tiling_window(a, halfwidth);
    payload["ball"] = ball_artifacts(w.ball, "window");
    Json rels = Json::array();
    bool all_ok = true;
    for (auto& [rel, ok] : w.relation_checks) {
      rels.push_back({{"relation", rel}, {"holds", ok}});
      all_ok = all_ok && ok;
    }
    payload["relations"] = std::move(rels);
    payload["q"] = w.q;
    if (!all_ok) throw InputError("a declared relation fails exactly");
  } else if (hexagon >= 0) {
    config["n"] = hexagon;
    SquareComplexPresentation cx = hexagon_complex(hexagon);
    NpcResult npc = npc_link_check(cx);
    Json sq = Json::array();
    for (const auto& s : cx.squares) {
      Json w = Json::array();
      for (auto [e, sign] : s)
        w.push_back(cx.edge_labels[e] + (sign > 0 ? "" : "^-1"));
      sq.push_back(std::move(w));
    }
    payload["edges"] = cx.edge_labels;
    payload["squares"] = std::move(sq);
    payload["square_count"] = (int)cx.squares.size();
    payload["npc"] = {{"pass", npc.pass},
                      {"reason", npc.reason},
                      {"witness", npc.witness_cycle},
                      {"reduced_link_degrees", npc.reduced_link_degree}};
    write_text_file(out_path(c, "hexagon.json"), payload.dump(2) + "\n");
  } else if (!nr.empty()) {
    config["input"] = nr;
    Json j = load_json_file(nr);
    GroupPresentation p = j.contains("kind") && j["kind"] == "RACG"
                              ? racg_as_coxeter(graph_from_json(j))
                              : presentation_from_json(j);
    if (p.kind() != Kind::Coxeter)
      throw InputError("wall systems need a Coxeter presentation");
    p.set_state_budget(budget);
    WallSystem ws = niblo_reeves_walls(p, radius);
    write_text_file(out_path(c, "walls.json"),
                    wall_system_to_json(ws).dump(2) + "\n");
    payload["walls"] = {{"artifact", "walls.json"},
                        {"host_vertices", (int)ws.host.elements.size()},
                        {"cells", (int)ws.cells.size()},
                        {"walls", (int)ws.walls.size()}};
    if (sageev) {
      CubeBall dual = sageev_dual(ws);
      payload["dual"] = ball_artifacts(dual, "dual");
    }
  } else {
    throw InputError("build needs one of --racg/--raag/--graph-product/"
                     "--tiling/--hexagon/--nr");
  }

  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit_report(c, "build", config, payload, 0, 0, ms);
  return 0;
}

// ---- analyze ----

Halfspace parse_halfspace(const std::string& s) {
  if (s.size() < 2 || (s.back() != '+' && s.back() != '-'))
    throw InputError("halfspace spec must look like '12+' or '3-'");
  return {std::stoi(s.substr(0, s.size() - 1)), s.back() == '+'};
}

int cmd_analyze(const CommonOpts& c, const std::string& ball_file,
                const std::string& tiling_file, int halfwidth,
                const std::string& members_file,
                const std::string& orbit_gens, int max_grid, int max_len,
                const std::string& alpha_h, const std::string& alpha_k) {
  auto t0 = std::chrono::steady_clock::now();
  Json config{{"max_grid", max_grid}, {"max_len", max_len}};
  int certified = 0, truncated = 0;
  auto track = [&](const Certification& cert) {
    (cert.ok() ? certified : truncated)++;
  };

  std::optional<TilingWindow> tw;
  std::optional<CubeBall> loaded;
  std::optional<AffineAction> action;
  if (!tiling_file.empty()) {
    config["tiling"] = tiling_file;
    config["halfwidth"] = halfwidth;
    action = affine_action_from_json(load_json_file(tiling_file));
    tw = tiling_window(*action, halfwidth);
  } else if (!ball_file.empty()) {
    config["ball"] = ball_file;
    loaded = ball_from_json(load_json_file(ball_file));
  } else {
    throw InputError("analyze needs --ball or --tiling");
  }
  const CubeBall& host = tw ? tw->ball : *loaded;

  Bits members(host.vertex_count());
  if (!orbit_gens.empty()) {
    if (!tw) throw InputError("--orbit needs --tiling");
    config["orbit"] = orbit_gens;
    std::vector<int> gens;
    std::istringstream is(orbit_gens);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      bool named = false;
      for (int i = 0; i < (int)action->generators.size(); ++i)
        if (action->generators[i].name == tok) {
          gens.push_back(i);
          named = true;
        }
      if (!named) gens.push_back(std::stoi(tok));
    }
    members = orbit_in_window(*tw, gens, host.base());
  } else if (!members_file.empty()) {
    config["members"] = members_file;
    Json j = load_json_file(members_file);
    for (const auto& m : j) {
      if (m.is_number_integer()) {
        int v = m.get<int>();
        if (v < 0 || v >= host.vertex_count())
          throw InputError("member vertex id out of range");
        members.set(v);
      } else {
        int v = host.find_label(m.get<std::string>());
        if (v < 0) throw InputError("unknown member label: " +
                                    m.get<std::string>());
        members.set(v);
      }
    }
  } else {
    throw InputError("analyze needs --members or --orbit");
  }

  Json payload;
  auto [cls, ccert] = host.classify_subset(members);
  track(ccert);
  payload["classification"] =
      cls == CubeBall::SubsetClass::Convex
          ? "convex"
          : cls == CubeBall::SubsetClass::SubalgebraNotConvex
                ? "subalgebra_not_convex"
                : "not_subalgebra";
  if (cls == CubeBall::SubsetClass::NotSubalgebra) {
    // surface a witness triple, then fail with an input error
    auto pts = members.to_vector();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i; j < pts.size(); ++j)
        for (std::size_t k = j; k < pts.size(); ++k) {
          auto m = host.median(pts[i], pts[j], pts[k]);
          if (m.cert.ok() && m.vertex >= 0 && !members.test(m.vertex)) {
            throw InputError("members are not a subalgebra: median of " +
                             host.label(pts[i]) + ", " + host.label(pts[j]) +
                             ", " + host.label(pts[k]) + " is " +
                             host.label(m.vertex));
          }
        }
    throw InputError("members are not a subalgebra");
  }

  SubalgebraView view = analyze_subalgebra(host, members);
  track(view.cert);
  payload["members"] = members.count();
  payload["edge_connected"] = view.edge_connected;
  payload["res_injective"] = view.res_injective;
  payload["walls_of_subset"] = (int)view.walls.size();
  payload["restricting_classes"] = (int)view.restricting_classes.size();
  payload["carrier_density"] = view.carrier_density;

  auto hull = host.hull(members);
  track(hull.cert);
  auto dm = host.dist_to_set(members);
  int escape = 0;
  hull.set.for_each([&](int v) { escape = std::max(escape, dm[v]); });
  payload["hull_size"] = hull.set.count();
  payload["hull_iterations"] = hull.iterations_used;
  payload["hull_escape"] = escape;
  {
    // empirical coarse bound: hull within 2^dim * R of the one-step medians
    Bits step = members;
    auto pts = members.to_vector();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        step |= host.interval_set(pts[i], pts[j]);
    int r1 = 0;
    step.for_each([&](int v) { r1 = std::max(r1, dm[v]); });
    long long bound = (1LL << host.dimension()) * std::max(r1, 1);
    payload["hull_escape_2deltaR"] = {{"step_radius", r1},
                                      {"bound", bound},
                                      {"within", escape <= bound}};
  }

  Json grids = Json::array();
  std::vector<Halfspace> colored;
  for (int n = 0; n <= max_grid; ++n) {
    auto res = find_grid(view, n);
    Json g{{"n", n}};
    g["status"] = res.status == FindGridStatus::Found
                      ? "found"
                      : res.status == FindGridStatus::None ? "none"
                                                           : "inconclusive";
    if (res.witness) {
      Json hc = Json::array(), kc = Json::array();
      for (const auto& h : res.witness->h_chain) {
        hc.push_back({{"class", h.cls}, {"side", h.plus ? "+" : "-"}});
        colored.push_back(h);
      }
      for (const auto& k : res.witness->k_chain) {
        kc.push_back({{"class", k.cls}, {"side", k.plus ? "+" : "-"}});
        colored.push_back(k);
      }
      g["h_chain"] = std::move(hc);
      g["k_chain"] = std::move(kc);
      g["escape_distance"] = res.witness->escape_distance;
      g["covering_ok"] = res.witness->covering_ok;
    }
    grids.push_back(std::move(g));
  }
  payload["grid_witnesses"] = std::move(grids);
  payload["qc_profile"] = qc_profile(view, max_len);

  if (!alpha_h.empty() || !alpha_k.empty()) {
    if (alpha_h.empty() || alpha_k.empty())
      throw InputError("--alpha-h and --alpha-k go together");
    long long geo_budget = env_budget(c.budget_geodesics);
    AlphaReport rep =
        c.alpha_enumerate
            ? minimal_geodesic_alpha_enumerated(
                  view, parse_halfspace(alpha_h), parse_halfspace(alpha_k),
                  geo_budget)
            : minimal_geodesic_alpha(view, parse_halfspace(alpha_h),
                                     parse_halfspace(alpha_k));
    Json segs = Json::array();
    for (const auto& s : rep.segments)
      segs.push_back({{"type", s.perp ? "perp" : "par"}, {"len", s.length}});
    Json path = Json::array();
    for (int v : rep.path) path.push_back(host.label(v));
    payload["alpha"] = {{"path", path},
                        {"segments", segs},
                        {"profile", rep.distance_profile},
                        {"omega_perp", (int)rep.omega_perp.size()},
                        {"omega_par", (int)rep.omega_par.size()},
                        {"transversality_ok", rep.transversality_ok},
                        {"empty_corner_ok", rep.empty_corner_ok},
                        {"max_segment_length", rep.max_segment_length},
                        {"exact", rep.exact},
                        {"geodesics_enumerated", rep.geodesics_enumerated}};
  }

  if (c.dot)
    write_text_file(out_path(c, "analysis.dot"),
                    host.to_dot(&members, &colored));

  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit_report(c, "analyze", config, payload, certified, truncated, ms);
  return 0;
}

// ---- classify ----

int cmd_classify_vb(const CommonOpts& c, const std::string& matrix,
                    const std::string& act) {
  auto t0 = std::chrono::steady_clock::now();
  Json config{{"matrix", matrix}};
  MatQ m = matrix_from_json(Json::parse(matrix));
  Json payload;
  if (act.empty()) {
    payload["virtual_basis"] = virtual_basis_to_json(virtual_basis_of_matrix(m));
  } else {
    config["act_on"] = act;
    VirtualBasis vb;
    Json jv = Json::parse(act);
    vb.n = m.rows;
    for (const auto& v : jv)
      vb.vectors.push_back(v.get<std::vector<long long>>());
    payload["virtual_basis"] = virtual_basis_to_json(pgl_act(m, vb));
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit_report(c, "classify vb", config, payload, 0, 0, ms);
  return 0;
}

int cmd_classify_dinf(const CommonOpts& c, const std::string& images) {
  auto t0 = std::chrono::steady_clock::now();
  Json config{{"images", images}};
  Json j = images.front() == '[' ? Json::parse(images)
                                 : load_json_file(images);
  std::vector<MatQ> mats;
  for (const auto& m : j) mats.push_back(matrix_from_json(m));
  DinfStructure s = dinf_classify(mats);
  Json payload;
  payload["k"] = s.k();
  payload["factor_pairs"] = s.factor_pairs;
  payload["factor_singletons"] = s.factor_singletons;
  payload["coordinate_pairs"] = s.coordinate_pairs;
  payload["coordinate_singletons"] = s.coordinate_singletons;
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit_report(c, "classify dinf", config, payload, 0, 0, ms);
  return 0;
}

int cmd_classify_squares(const CommonOpts& c, const std::string& graph_file,
                         const std::string& graph6, int all_graphs) {
  auto t0 = std::chrono::steady_clock::now();
  Json config;
  Json payload;
  auto sweep_graph = [&](const DefiningGraph& g) {
    Json out = Json::array();
    for (const auto& sq : induced_squares(g)) {
      auto res = loose_square(g, sq);
      Json names = Json::array();
      for (int v : res.square) names.push_back(g.label(v));
      out.push_back({{"square", names},
                     {"loose", res.loose},
                     {"verdicts", res.verdicts}});
    }
    return out;
  };
  if (all_graphs > 0) {
    config["all_graphs"] = all_graphs;
    if (all_graphs > 6)
      throw InputError("exhaustive sweep supports up to 6 vertices");
    long long pairs = all_graphs * (all_graphs - 1) / 2;
    long long disagreements = 0, squares = 0, loose = 0;
    for (unsigned long long mask = 0; mask < (1ull << pairs); ++mask) {
      DefiningGraph g = graph_from_mask(all_graphs, mask);
      try {
        for (const auto& res : classify_all_squares(g)) {
          ++squares;
          if (res.loose) ++loose;
        }
      } catch (const StructuralError&) {
        ++disagreements;
      }
    }
    payload["graphs"] = (long long)(1ull << pairs);
    payload["squares_checked"] = squares;
    payload["loose"] = loose;
    payload["condition_disagreements"] = disagreements;
  } else if (!graph6.empty()) {
    config["graph6"] = graph6;
    payload["squares"] = sweep_graph(graph_from_graph6(graph6));
  } else if (!graph_file.empty()) {
    config["graph"] = graph_file;
    payload["squares"] = sweep_graph(graph_from_json(load_json_file(graph_file)));
  } else {
    throw InputError("squares needs --graph, --graph6 or --all-graphs");
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit_report(c, "classify squares", config, payload, 0, 0, ms);
  return 0;
}

int cmd_classify_twists(const CommonOpts& c, const std::string& graph_file) {
  auto t0 = std::chrono::steady_clock::now();
  DefiningGraph g = graph_from_json(load_json_file(graph_file));
  Json pairs = Json::array();
  for (auto [v, w] : twist_pairs(g))
    pairs.push_back({g.label(v), g.label(w)});
  Json payload{{"twist_pairs", pairs}, {"twistless", is_twistless(g)}};
  Json kappas;
  for (int v = 0; v < g.n(); ++v) {
    Json ks = Json::array();
    for (int w : kappa(g, v)) ks.push_back(g.label(w));
    kappas[g.label(v)] = std::move(ks);
  }
  payload["kappa"] = std::move(kappas);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit_report(c, "classify twists", {{"graph", graph_file}}, payload, 0, 0,
              ms);
  return 0;
}

int cmd_classify_richardson(const CommonOpts& c, const std::string& type,
                            const std::string& cox_file) {
  auto t0 = std::chrono::steady_clock::now();
  Json config;
  GroupPresentation p = [&] {
    if (!type.empty()) {
      config["type"] = type;
      return coxeter_preset(type);
    }
    if (!cox_file.empty()) {
      config["coxeter"] = cox_file;
      return presentation_from_json(load_json_file(cox_file));
    }
    throw InputError("richardson needs --type or --coxeter");
  }();
  long long budget = env_budget(c.budget_states);
  RichardsonReport rep = richardson_check(p, budget);
  Json payload;
  payload["enumeration_complete"] = rep.enumeration_complete;
  payload["group_order"] = rep.group_order;
  payload["all_certified"] = rep.all_certified;
  if (!rep.note.empty()) payload["note"] = rep.note;
  Json inv = Json::array();
  for (const auto& e : rep.involutions) {
    Json one{{"involution", p.word_str(e.involution)}};
    if (!e.parabolic.empty()) {
      one["parabolic"] = e.parabolic;
      one["conjugator"] = p.word_str(e.conjugator);
    }
    inv.push_back(std::move(one));
  }
  payload["involutions"] = std::move(inv);
  if (!rep.enumeration_complete)
    throw ResourceError("group enumeration exceeded the budget",
                        rep.group_order);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit_report(c, "classify richardson", config, payload, 0, 0, ms);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubemedian: finite windows of cube complexes and their "
               "median machinery"};
  app.require_subcommand(1);
  CommonOpts common;

  // build
  auto* build = app.add_subcommand("build", "construct windows and walls");
  std::string b_racg, b_raag, b_gp, b_tiling, b_nr;
  int b_hexagon = -1, b_radius = 2, b_halfwidth = 4;
  bool b_sageev = false;
  build->add_option("--racg", b_racg, "RACG graph or presentation JSON");
  build->add_option("--raag", b_raag, "RAAG graph or presentation JSON");
  build->add_option("--graph-product", b_gp, "graph product presentation JSON");
  build->add_option("--tiling", b_tiling, "affine action JSON");
  build->add_option("--hexagon", b_hexagon, "hexagon complex parameter n");
  build->add_option("--nr", b_nr, "Coxeter presentation for Niblo-Reeves walls");
  build->add_flag("--sageev", b_sageev, "also dualize the wall system");
  build->add_option("--radius", b_radius, "ball radius");
  build->add_option("--halfwidth", b_halfwidth, "tiling window halfwidth");
  add_common(build, common);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "median subalgebra reports");
  std::string a_ball, a_tiling, a_members, a_orbit, a_alpha_h, a_alpha_k;
  int a_halfwidth = 16, a_max_grid = 4, a_max_len = 16;
  analyze->add_option("--ball", a_ball, "CubeBall artifact JSON");
  analyze->add_option("--tiling", a_tiling, "affine action JSON");
  analyze->add_option("--halfwidth", a_halfwidth, "tiling window halfwidth");
  analyze->add_option("--members", a_members,
                      "JSON list of member ids or labels");
  analyze->add_option("--orbit", a_orbit,
                      "comma-separated action generator indices");
  analyze->add_option("--max-grid", a_max_grid, "largest grid order tried");
  analyze->add_option("--max-len", a_max_len, "profile length bound");
  analyze->add_option("--alpha-h", a_alpha_h, "halfspace spec like '3+'");
  analyze->add_option("--alpha-k", a_alpha_k, "halfspace spec like '7-'");
  analyze->add_flag("--alpha-enumerate", common.alpha_enumerate,
                    "minimize by exhaustive geodesic enumeration");
  add_common(analyze, common);

  // classify
  auto* classify = app.add_subcommand("classify", "discrete classifications");
  classify->require_subcommand(1);
  auto* vb = classify->add_subcommand("vb", "virtual basis of a matrix");
  std::string v_matrix, v_act;
  vb->add_option("--matrix", v_matrix, "integer matrix JSON")->required();
  vb->add_option("--act-on", v_act, "apply projectively to this basis");
  add_common(vb, common);
  auto* dinf = classify->add_subcommand("dinf", "dihedral product structure");
  std::string d_images;
  dinf->add_option("--images", d_images, "JSON list of matrices or a file")
      ->required();
  add_common(dinf, common);
  auto* squares = classify->add_subcommand("squares", "loose/bonded squares");
  std::string s_graph, s_graph6;
  int s_all = 0;
  squares->add_option("--graph", s_graph, "graph JSON file");
  squares->add_option("--graph6", s_graph6, "graph6 line");
  squares->add_option("--all-graphs", s_all, "sweep all graphs of this size");
  add_common(squares, common);
  auto* twists = classify->add_subcommand("twists", "twist pairs and kappa");
  std::string t_graph;
  twists->add_option("--graph", t_graph, "graph JSON file")->required();
  add_common(twists, common);
  auto* rich = classify->add_subcommand("richardson",
                                        "involutions as longest elements");
  std::string r_type, r_cox;
  rich->add_option("--type", r_type, "preset name, e.g. A3, B3, 333");
  rich->add_option("--coxeter", r_cox, "Coxeter presentation JSON");
  add_common(rich, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build)
      return cmd_build(common, b_racg, b_raag, b_gp, b_tiling, b_hexagon,
                       b_nr, b_sageev, b_radius, b_halfwidth);
    if (*analyze)
      return cmd_analyze(common, a_ball, a_tiling, a_halfwidth, a_members,
                         a_orbit, a_max_grid, a_max_len, a_alpha_h,
                         a_alpha_k);
    if (*vb) return cmd_classify_vb(common, v_matrix, v_act);
    if (*dinf) return cmd_classify_dinf(common, d_images);
    if (*squares)
      return cmd_classify_squares(common, s_graph, s_graph6, s_all);
    if (*twists) return cmd_classify_twists(common, t_graph);
    if (*rich) return cmd_classify_richardson(common, r_type, r_cox);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
