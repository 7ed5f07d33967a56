#include "cubemedian/io.hpp"

#include <fstream>
#include <sstream>

#include "cubemedian/errors.hpp"

namespace cubemedian {

namespace {
constexpr int kSchemaVersion = 1;
}

Json ball_to_json(const CubeBall& b) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["window"] = b.window_kind() == WindowKind::Ball ? "ball" : "convex";
  j["base"] = b.base();
  j["radius"] = b.radius();
  Json verts = Json::array();
  for (int v = 0; v < b.vertex_count(); ++v)
    verts.push_back({{"id", v}, {"label", b.label(v)}});
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (int e = 0; e < b.edge_count(); ++e)
    edges.push_back({b.edge(e)[0], b.edge(e)[1], b.edge_label(e)});
  j["edges"] = std::move(edges);
  Json squares = Json::array();
  for (const auto& s : b.squares()) squares.push_back({s[0], s[1], s[2], s[3]});
  j["squares"] = std::move(squares);
  j["shell"] = b.boundary_shell();
  return j;
}

CubeBall ball_from_json(const Json& j) {
  if (!j.contains("vertices") || !j.contains("edges"))
    throw InputError("ball JSON needs vertices and edges");
  int n = (int)j["vertices"].size();
  std::vector<std::string> labels(n);
  for (const auto& v : j["vertices"]) {
    int id = v.at("id").get<int>();
    if (id < 0 || id >= n) throw InputError("vertex id out of range");
    labels[id] = v.value("label", std::to_string(id));
  }
  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> edge_labels;
  for (const auto& e : j["edges"]) {
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    edge_labels.push_back(e.size() > 2 ? e.at(2).get<std::string>() : "");
  }
  std::vector<std::array<int, 4>> squares;
  if (j.contains("squares"))
    for (const auto& s : j["squares"])
      squares.push_back({s.at(0).get<int>(), s.at(1).get<int>(),
                         s.at(2).get<int>(), s.at(3).get<int>()});
  WindowKind kind = j.value("window", "ball") == std::string("convex")
                        ? WindowKind::ConvexWindow
                        : WindowKind::Ball;
  std::vector<int> shell;
  if (j.contains("shell")) shell = j["shell"].get<std::vector<int>>();
  return CubeBall(std::move(labels), std::move(edges), std::move(edge_labels),
                  j.value("base", 0), j.value("radius", 0), kind,
                  std::move(squares), std::move(shell));
}

Json graph_to_json(const DefiningGraph& g) {
  Json j;
  j["vertices"] = g.labels();
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
  j["edges"] = std::move(edges);
  return j;
}

DefiningGraph graph_from_json(const Json& j) {
  std::vector<std::string> vertices =
      j.at("vertices").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("edges"))
    for (const auto& e : j["edges"])
      edges.emplace_back(e.at(0).get<std::string>(),
                         e.at(1).get<std::string>());
  return DefiningGraph(std::move(vertices), edges);
}

DefiningGraph graph_from_graph6(const std::string& line) {
  if (line.empty()) throw InputError("empty graph6 line");
  std::size_t pos = 0;
  auto byte = [&](std::size_t i) -> int {
    if (i >= line.size()) throw InputError("truncated graph6 line");
    int b = (unsigned char)line[i] - 63;
    if (b < 0 || b > 63) throw InputError("bad graph6 byte");
    return b;
  };
  long long n;
  if (line[0] != '~') {
    n = byte(0);
    pos = 1;
  } else if (line.size() > 1 && line[1] != '~') {
    n = ((long long)byte(1) << 12) | ((long long)byte(2) << 6) | byte(3);
    pos = 4;
  } else {
    throw InputError("graph6 graphs this large are unsupported");
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  std::vector<std::pair<std::string, std::string>> edges;
  int bit = 0;
  for (int col = 1; col < n; ++col)
    for (int row = 0; row < col; ++row) {
      int b = byte(pos + bit / 6);
      if ((b >> (5 - bit % 6)) & 1) edges.emplace_back(labels[row], labels[col]);
      ++bit;
    }
  return DefiningGraph(std::move(labels), edges);
}

Json presentation_to_json(const GroupPresentation& p) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = kind_name(p.kind());
  j["vertices"] = p.generator_labels();
  if (p.kind() != Kind::Coxeter) {
    Json edges = Json::array();
    for (auto [u, v] : p.graph().edges())
      edges.push_back({p.generator_label(u), p.generator_label(v)});
    j["edges"] = std::move(edges);
  }
  if (p.kind() == Kind::GraphProductFinite) {
    Json orders;
    for (int i = 0; i < p.generator_count(); ++i)
      orders[p.generator_label(i)] = p.order(i);
    j["orders"] = std::move(orders);
  }
  if (p.kind() == Kind::Coxeter) {
    Json m = Json::array();
    for (int i = 0; i < p.generator_count(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < p.generator_count(); ++k)
        row.push_back(p.coxeter_m(i, k));
      m.push_back(std::move(row));
    }
    j["coxeter_matrix"] = std::move(m);
  }
  return j;
}

GroupPresentation presentation_from_json(const Json& j) {
  Kind kind = kind_from_name(j.at("kind").get<std::string>());
  std::vector<std::string> vertices =
      j.at("vertices").get<std::vector<std::string>>();
  if (kind == Kind::Coxeter) {
    auto m = j.at("coxeter_matrix").get<std::vector<std::vector<int>>>();
    return GroupPresentation::coxeter(std::move(vertices), std::move(m));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("edges"))
    for (const auto& e : j["edges"])
      edges.emplace_back(e.at(0).get<std::string>(),
                         e.at(1).get<std::string>());
  DefiningGraph g(std::move(vertices), edges);
  switch (kind) {
    case Kind::RACG: return GroupPresentation::racg(std::move(g));
    case Kind::RAAG: return GroupPresentation::raag(std::move(g));
    case Kind::GraphProductFinite: {
      std::map<std::string, int> orders;
      if (j.contains("orders"))
        for (auto it = j["orders"].begin(); it != j["orders"].end(); ++it)
          orders[it.key()] = it.value().get<int>();
      return GroupPresentation::graph_product(std::move(g), orders);
    }
    default: throw InputError("unreachable kind");
  }
}

MatQ matrix_from_json(const Json& j) {
  int rows = (int)j.size();
  if (rows == 0) throw InputError("empty matrix");
  int cols = (int)j.at(0).size();
  MatQ m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if ((int)j.at(r).size() != cols)
      throw InputError("ragged matrix rows");
    for (int c = 0; c < cols; ++c) {
      const auto& v = j.at(r).at(c);
      m.at(r, c) = v.is_string() ? Rat::parse(v.get<std::string>())
                                 : Rat(v.get<long long>());
    }
  }
  return m;
}

AffineAction affine_action_from_json(const Json& j) {
  AffineAction a;
  a.n = j.at("n").get<int>();
  for (const auto& g : j.at("generators")) {
    AffineGenerator gen;
    gen.name = g.at("name").get<std::string>();
    gen.map.linear = matrix_from_json(g.at("matrix"));
    for (const auto& t : g.at("translation"))
      gen.map.translation.push_back(
          t.is_string() ? Rat::parse(t.get<std::string>())
                        : Rat(t.get<long long>()));
    a.generators.push_back(std::move(gen));
  }
  if (j.contains("relations"))
    a.relations_declared = j["relations"].get<std::vector<std::string>>();
  return a;
}

Json affine_action_to_json(const AffineAction& a) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["n"] = a.n;
  Json gens = Json::array();
  for (const auto& g : a.generators) {
    Json m = Json::array();
    for (int r = 0; r < g.map.linear.rows; ++r) {
      Json row = Json::array();
      for (int c = 0; c < g.map.linear.cols; ++c)
        row.push_back(g.map.linear.at(r, c).str());
      m.push_back(std::move(row));
    }
    Json t = Json::array();
    for (const auto& x : g.map.translation) t.push_back(x.str());
    gens.push_back({{"name", g.name}, {"matrix", m}, {"translation", t}});
  }
  j["generators"] = std::move(gens);
  j["relations"] = a.relations_declared;
  return j;
}

Json wall_system_to_json(const WallSystem& ws) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json verts = Json::array();
  for (std::size_t i = 0; i < ws.host.names.size(); ++i)
    verts.push_back({{"id", (int)i},
                     {"label", i == 0 ? std::string("1") : ws.host.names[i]}});
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (std::size_t e = 0; e < ws.host.edges.size(); ++e)
    edges.push_back(
        {ws.host.edges[e][0], ws.host.edges[e][1], ws.host.edge_labels[e]});
  j["edges"] = std::move(edges);
  j["cells"] = ws.cells;
  j["walls"] = ws.walls;
  Json refl = Json::array();
  for (const auto& r : ws.wall_reflections)
    refl.push_back(ws.pres.word_str(r));
  j["wall_reflections"] = std::move(refl);
  j["wall_stabilizers"] = ws.stabilizers;
  return j;
}

Json virtual_basis_to_json(const VirtualBasis& vb) {
  Json j;
  j["n"] = vb.n;
  j["vectors"] = vb.vectors;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

Json make_report(const std::string& command, const Json& config,
                 const Json& payload, long long seed, int certified_queries,
                 int truncated_queries) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = "cubemedian";
  j["version"] = "0.1.0";
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  j["certification"] = {{"certified", certified_queries},
                        {"truncated", truncated_queries}};
  j["payload"] = payload;
  return j;
}

}  // namespace cubemedian
