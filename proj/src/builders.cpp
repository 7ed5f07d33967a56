#include "cubemedian/builders.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cubemedian/errors.hpp"

namespace cubemedian {

namespace {

bool shortlex_less(const GroupPresentation& pres, const Word& a,
                   const Word& b) {
  long long la = pres.word_length(a), lb = pres.word_length(b);
  if (la != lb) return la < lb;
  for (std::size_t i = 0; i < std::min(a.syllables.size(), b.syllables.size());
       ++i) {
    const auto& x = a.syllables[i];
    const auto& y = b.syllables[i];
    if (x.gen != y.gen) return x.gen < y.gen;
    if (x.exp != y.exp) return x.exp < y.exp;
  }
  return a.syllables.size() < b.syllables.size();
}

}  // namespace

CubeBall standard_ball(const GroupPresentation& pres, int radius) {
  if (pres.kind() != Kind::RACG && pres.kind() != Kind::RAAG)
    throw InputError("standard_ball expects a RACG or RAAG presentation");
  EnumeratedBall b = enumerate_ball(pres, radius);
  std::map<std::pair<int, int>, int> edge_at;
  for (int e = 0; e < (int)b.edges.size(); ++e) {
    auto [u, v] = b.edges[e];
    edge_at[std::minmax({u, v})] = e;
  }
  auto gens = pres.ball_generators();
  std::set<std::array<int, 4>> seen;
  std::vector<std::array<int, 4>> squares;
  for (int v = 0; v < (int)b.elements.size(); ++v) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int a1 = b.find(pres.word_str(pres.concat(b.elements[v], gens[i].word)));
      if (a1 < 0 || a1 == v) continue;
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        const Word& gi = gens[i].word;
        const Word& gj = gens[j].word;
        if (gi.syllables[0].gen == gj.syllables[0].gen) continue;
        if (!pres.commutes(gi.syllables[0].gen, gj.syllables[0].gen)) continue;
        int a2 =
            b.find(pres.word_str(pres.concat(b.elements[v], gj)));
        if (a2 < 0 || a2 == v) continue;
        int a3 = b.find(
            pres.word_str(pres.concat(pres.concat(b.elements[v], gi), gj)));
        if (a3 < 0) continue;
        std::array<int, 4> key{v, a1, a3, a2};
        std::array<int, 4> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        if (seen.insert(sorted).second) squares.push_back(key);
      }
    }
  }
  std::vector<std::string> labels = b.names;
  labels[0] = "1";
  return CubeBall(std::move(labels), b.edges, b.edge_labels, 0, radius,
                  WindowKind::Ball, std::move(squares));
}

// ---- graph product coset complex ----

namespace {

std::vector<Word> finite_subgroup_elements(const GroupPresentation& pres,
                                           const std::vector<int>& clique) {
  std::vector<Word> out{Word{}};
  for (int v : clique) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (int e = 0; e < pres.order(v); ++e) {
        Word c = w;
        if (e) c.syllables.push_back({v, (long long)e});
        next.push_back(pres.normalize(c));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

CosetBall graph_product_coset_ball(const GroupPresentation& pres, int radius) {
  if (pres.kind() != Kind::GraphProductFinite && pres.kind() != Kind::RACG)
    throw InputError("graph_product_ball expects finite vertex groups");
  const DefiningGraph& graph = pres.graph();
  int ng = graph.n();

  auto clique_key = [&](const Bits& c) {
    std::string s;
    c.for_each([&](int v) { s += graph.label(v) + ","; });
    return s;
  };
  auto canonical_rep = [&](const Word& g, const Bits& c) {
    Word best;
    bool have = false;
    for (const auto& h : finite_subgroup_elements(pres, c.to_vector())) {
      Word cand = pres.concat(g, h);
      if (!have || shortlex_less(pres, cand, best)) {
        best = cand;
        have = true;
      }
    }
    return best;
  };

  struct Node {
    Word rep;
    Bits clique;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> index;
  auto key_of = [&](const Word& rep, const Bits& c) {
    return pres.word_str(rep) + "|" + clique_key(c);
  };
  auto intern = [&](const Word& g, const Bits& c) {
    Word rep = canonical_rep(g, c);
    std::string key = key_of(rep, c);
    auto it = index.find(key);
    if (it != index.end()) return std::make_pair(it->second, false);
    nodes.push_back({rep, c});
    index.emplace(std::move(key), (int)nodes.size() - 1);
    return std::make_pair((int)nodes.size() - 1, true);
  };

  auto neighbors = [&](int id) {
    std::vector<std::pair<int, std::string>> out;  // (node, vertex label)
    Word g = nodes[id].rep;
    Bits c = nodes[id].clique;
    for (int v = 0; v < ng; ++v) {
      if (c.test(v)) continue;
      bool cl = true;
      c.for_each([&](int u) { cl = cl && graph.adjacent(u, v); });
      if (!cl) continue;
      Bits cu = c;
      cu.set(v);
      out.emplace_back(intern(g, cu).first, graph.label(v));
    }
    c.for_each([&](int v) {
      Bits cd = c;
      cd.reset(v);
      for (int e = 0; e < pres.order(v); ++e) {
        Word gv = g;
        if (e) gv.syllables.push_back({v, (long long)e});
        out.emplace_back(intern(pres.normalize(gv), cd).first, graph.label(v));
      }
    });
    return out;
  };

  intern(Word{}, Bits(ng));
  std::vector<int> dist{0};
  std::deque<int> q{0};
  while (!q.empty()) {
    int id = q.front();
    q.pop_front();
    if (dist[id] == radius) continue;
    for (auto& [nb, lab] : neighbors(id)) {
      if (nb >= (int)dist.size()) dist.resize(nb + 1, -1);
      if (dist[nb] < 0) {
        dist[nb] = dist[id] + 1;
        q.push_back(nb);
      }
    }
  }
  // interned-but-unreached nodes may exist past the radius: drop them.
  // Later lookups can intern further nodes, so the remap is bounds-checked.
  std::vector<int> keep;
  std::vector<int> remap(nodes.size(), -1);
  dist.resize(nodes.size(), -1);
  for (int i = 0; i < (int)nodes.size(); ++i)
    if (dist[i] >= 0) {
      remap[i] = (int)keep.size();
      keep.push_back(i);
    }
  auto mapped = [&](int idx) {
    return idx >= 0 && idx < (int)remap.size() ? remap[idx] : -1;
  };

  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> edge_labels;
  std::set<std::pair<int, int>> eseen;
  for (int i : keep) {
    for (auto& [nb, lab] : neighbors(i)) {
      if (mapped(nb) < 0) continue;
      auto key = std::minmax({remap[i], mapped(nb)});
      if (key.first == key.second) continue;
      if (eseen.insert(key).second) {
        edges.push_back({key.first, key.second});
        edge_labels.push_back(lab);
      }
    }
  }

  std::set<std::array<int, 4>> sqseen;
  std::vector<std::array<int, 4>> squares;
  for (int i : keep) {
    Word g = nodes[i].rep;
    Bits c = nodes[i].clique;
    for (int v = 0; v < ng; ++v) {
      if (c.test(v)) continue;
      for (int w = v + 1; w < ng; ++w) {
        if (c.test(w) || !graph.adjacent(v, w)) continue;
        bool cl = true;
        c.for_each([&](int u) {
          cl = cl && graph.adjacent(u, v) && graph.adjacent(u, w);
        });
        if (!cl) continue;
        Bits cv = c, cw = c, cvw = c;
        cv.set(v);
        cw.set(w);
        cvw.set(v);
        cvw.set(w);
        auto kv = index.find(key_of(canonical_rep(g, cv), cv));
        auto kw = index.find(key_of(canonical_rep(g, cw), cw));
        auto kvw = index.find(key_of(canonical_rep(g, cvw), cvw));
        if (kv == index.end() || kw == index.end() || kvw == index.end())
          continue;
        int a = remap[i], b1 = mapped(kv->second), c1 = mapped(kvw->second),
            d1 = mapped(kw->second);
        if (b1 < 0 || c1 < 0 || d1 < 0) continue;
        std::array<int, 4> cyc{a, b1, c1, d1};
        std::array<int, 4> sorted = cyc;
        std::sort(sorted.begin(), sorted.end());
        if (sqseen.insert(sorted).second) squares.push_back(cyc);
      }
    }
  }

  std::vector<std::string> labels;
  std::vector<Word> reps;
  std::vector<Bits> cliques;
  for (int i : keep) {
    std::string nm = pres.word_str(nodes[i].rep);
    if (nm.empty()) nm = "1";
    std::string ck = clique_key(nodes[i].clique);
    labels.push_back(nm + (ck.empty() ? "" : ("." + ck)));
    reps.push_back(nodes[i].rep);
    cliques.push_back(nodes[i].clique);
  }
  CubeBall ball(std::move(labels), edges, edge_labels, 0, radius,
                WindowKind::Ball, std::move(squares));
  return CosetBall{std::move(ball), std::move(reps), std::move(cliques)};
}

CubeBall graph_product_ball(const GroupPresentation& pres, int radius) {
  return graph_product_coset_ball(pres, radius).ball;
}

// ---- tilings ----

int TilingWindow::vertex_at(const std::vector<long long>& c) const {
  long long idx = 0;
  long long side = 2LL * halfwidth + 1;
  for (int i = n - 1; i >= 0; --i) {
    if (c[i] < -halfwidth || c[i] > halfwidth) return -1;
    idx = idx * side + (c[i] + halfwidth);
  }
  return (int)idx;
}

TilingWindow tiling_window(const AffineAction& action, int halfwidth) {
  int n = action.n;
  if (n < 1) throw InputError("tiling dimension must be positive");
  if (halfwidth < 1) throw InputError("halfwidth must be positive");
  long long q = 1;
  for (const auto& g : action.generators) {
    if (g.map.linear.rows != n || g.map.linear.cols != n ||
        (int)g.map.translation.size() != n)
      throw InputError("affine generator has wrong dimension");
    if (!g.map.linear.is_signed_permutation())
      throw InputError("generator '" + g.name +
                       "' does not preserve the tiling: linear part is not a "
                       "signed permutation");
    for (const auto& t : g.map.translation) q = std::lcm(q, (long long)t.den);
  }

  long long side = 2LL * halfwidth + 1;
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= side;
    if (total > 40'000'000) throw ResourceError("tiling window too large", i);
  }
  std::vector<std::vector<long long>> coords(total,
                                             std::vector<long long>(n));
  std::vector<std::string> labels(total);
  for (long long idx = 0; idx < total; ++idx) {
    long long r = idx;
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < n; ++i) {
      coords[idx][i] = r % side - halfwidth;
      r /= side;
      os << (i ? "," : "") << coords[idx][i];
    }
    os << ")";
    labels[idx] = os.str();
  }
  auto vertex_at = [&](const std::vector<long long>& c) -> int {
    long long idx = 0;
    for (int i = n - 1; i >= 0; --i) {
      if (c[i] < -halfwidth || c[i] > halfwidth) return -1;
      idx = idx * side + (c[i] + halfwidth);
    }
    return (int)idx;
  };

  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> edge_labels;
  for (long long idx = 0; idx < total; ++idx)
    for (int i = 0; i < n; ++i) {
      if (coords[idx][i] == halfwidth) continue;
      auto c = coords[idx];
      c[i] += 1;
      edges.push_back({(int)idx, vertex_at(c)});
      edge_labels.push_back("e" + std::to_string(i + 1));
    }

  std::vector<std::array<int, 4>> squares;
  for (long long idx = 0; idx < total; ++idx)
    for (int i = 0; i < n; ++i) {
      if (coords[idx][i] == halfwidth) continue;
      for (int j = i + 1; j < n; ++j) {
        if (coords[idx][j] == halfwidth) continue;
        auto c = coords[idx];
        c[i] += 1;
        int vi = vertex_at(c);
        c[j] += 1;
        int vij = vertex_at(c);
        c[i] -= 1;
        int vj = vertex_at(c);
        squares.push_back({(int)idx, vi, vij, vj});
      }
    }

  std::vector<int> shell;
  for (long long idx = 0; idx < total; ++idx) {
    bool frame = false;
    for (int i = 0; i < n; ++i)
      if (coords[idx][i] == halfwidth || coords[idx][i] == -halfwidth)
        frame = true;
    if (frame) shell.push_back((int)idx);
  }

  std::vector<long long> origin(n, 0);
  int base = vertex_at(origin);

  // Refined partial action: x -> A x + q t on lattice coordinates.
  std::vector<std::vector<int>> images;
  for (const auto& g : action.generators) {
    std::vector<int> img(total, -1);
    for (long long idx = 0; idx < total; ++idx) {
      std::vector<long long> c(n);
      for (int i = 0; i < n; ++i) {
        Rat acc = g.map.translation[i] * Rat(q);
        for (int j = 0; j < n; ++j)
          acc = acc + g.map.linear.at(i, j) * Rat(coords[idx][j]);
        if (!acc.is_integer())
          throw StructuralError("refined action left the lattice");
        c[i] = acc.num;
      }
      img[idx] = vertex_at(c);
    }
    images.push_back(std::move(img));
  }

  std::vector<std::pair<std::string, bool>> relation_checks;
  for (const auto& rel : action.relations_declared)
    relation_checks.emplace_back(rel, affine_word(action, rel).is_identity());

  CubeBall ball(std::move(labels), std::move(edges), std::move(edge_labels),
                base, halfwidth, WindowKind::ConvexWindow, std::move(squares),
                std::move(shell));
  return TilingWindow{std::move(ball),      n,
                      (int)q,               halfwidth,
                      std::move(coords),    std::move(images),
                      std::move(relation_checks)};
}

AffineMap affine_word(const AffineAction& action, const std::string& word) {
  std::map<std::string, int> by_name;
  for (int i = 0; i < (int)action.generators.size(); ++i)
    by_name[action.generators[i].name] = i;
  AffineMap m = AffineMap::identity(action.n);
  std::istringstream is(word);
  std::string tok;
  while (is >> tok) {
    long long e = 1;
    std::string name = tok;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      e = std::stoll(tok.substr(caret + 1));
    }
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw InputError("unknown action generator: " + name);
    AffineMap g = action.generators[it->second].map;
    if (e < 0) {
      g = g.inverse();
      e = -e;
    }
    for (long long k = 0; k < e; ++k) m = m * g;
  }
  return m;
}

Bits orbit_in_window(const TilingWindow& w, const std::vector<int>& gens,
                     int start) {
  int total = w.ball.vertex_count();
  // forward and inverse partial permutations
  std::vector<const std::vector<int>*> maps;
  std::vector<std::vector<int>> inverses;
  for (int g : gens) {
    maps.push_back(&w.action[g]);
    std::vector<int> inv(total, -1);
    for (int v = 0; v < total; ++v)
      if (w.action[g][v] >= 0) inv[w.action[g][v]] = v;
    inverses.push_back(std::move(inv));
  }
  Bits orbit(total);
  orbit.set(start);
  std::deque<int> q{start};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    auto visit = [&](int u) {
      if (u >= 0 && !orbit.test(u)) {
        orbit.set(u);
        q.push_back(u);
      }
    };
    for (std::size_t i = 0; i < maps.size(); ++i) {
      visit((*maps[i])[v]);
      visit(inverses[i][v]);
    }
  }
  return orbit;
}

// ---- hexagon complexes ----

SquareComplexPresentation hexagon_complex(int n) {
  if (n < 0) throw InputError("hexagon complex parameter must be >= 0");
  SquareComplexPresentation c;
  for (int i = 1; i <= 6; ++i) c.edge_labels.push_back("a" + std::to_string(i));
  for (int i = 1; i <= n; ++i) c.edge_labels.push_back("e" + std::to_string(i));
  auto commutator = [&](int x, int y) {
    c.squares.push_back({std::pair<int, int>{x, 1},
                         {y, 1},
                         {x, -1},
                         {y, -1}});
  };
  for (int j = 0; j < 5; ++j) commutator(j, j + 1);  // [a_j, a_{j+1}]
  // staircase over b_1 ... b_{n+1} = a1 a3 ... a3 with e_0 = e_{n+1} = a6
  auto stair_edge = [&](int i) { return i == 0 || i == n + 1 ? 5 : 5 + i; };
  for (int i = 1; i <= n + 1; ++i) {
    int b = (i == 1) ? 0 : 2;
    c.squares.push_back({std::pair<int, int>{stair_edge(i - 1), 1},
                         {b, 1},
                         {stair_edge(i), -1},
                         {b, -1}});
  }
  return c;
}

NpcResult npc_link_check(const SquareComplexPresentation& c) {
  NpcResult res;
  int ne = (int)c.edge_labels.size();
  auto germ = [&](int e, int dir) { return 2 * e + (dir > 0 ? 0 : 1); };
  for (int e = 0; e < ne; ++e) {
    res.link_nodes.push_back(c.edge_labels[e] + "+");
    res.link_nodes.push_back(c.edge_labels[e] + "-");
  }
  std::map<std::pair<int, int>, int> mult;
  for (const auto& sq : c.squares) {
    for (int k = 0; k < 4; ++k) {
      auto [e1, s1] = sq[k];
      auto [e2, s2] = sq[(k + 1) % 4];
      int u = germ(e1, -s1);  // direction back along the letter just read
      int v = germ(e2, s2);   // direction out along the next letter
      auto key = std::minmax({u, v});
      res.link_edges.emplace_back(key.first, key.second);
      ++mult[{key.first, key.second}];
    }
  }
  for (const auto& [k, m] : mult) {
    if (k.first == k.second) {
      res.pass = false;
      res.reason = "link has a loop at " + res.link_nodes[k.first];
      res.witness_cycle = {res.link_nodes[k.first]};
      return res;
    }
    if (m > 1) {
      res.pass = false;
      res.reason = "link has a bigon";
      res.witness_cycle = {res.link_nodes[k.first], res.link_nodes[k.second]};
      return res;
    }
  }
  int nn = 2 * ne;
  std::vector<Bits> adj(nn, Bits(nn));
  for (const auto& [k, m] : mult) {
    adj[k.first].set(k.second);
    adj[k.second].set(k.first);
  }
  for (int a = 0; a < nn; ++a)
    for (int b = a + 1; b < nn; ++b) {
      if (!adj[a].test(b)) continue;
      Bits common = adj[a] & adj[b];
      int w = common.find_first();
      if (w >= 0) {
        res.pass = false;
        res.reason = "link has a triangle";
        res.witness_cycle = {res.link_nodes[a], res.link_nodes[b],
                             res.link_nodes[w]};
        return res;
      }
    }
  // reduced link: collapse the two germs of each edge, identify parallels
  for (int e = 0; e < ne; ++e) {
    std::set<int> nb;
    for (const auto& [k, m] : mult) {
      if (k.first / 2 == e) nb.insert(k.second / 2);
      if (k.second / 2 == e) nb.insert(k.first / 2);
    }
    nb.erase(e);
    res.reduced_link_degree[c.edge_labels[e]] = (int)nb.size();
  }
  res.pass = true;
  res.reason = "link is simple with no triangles";
  return res;
}

// ---- free presentations and Tietze verification ----

namespace {

using FWord = std::vector<int>;

FWord freduce(const FWord& w) {
  FWord r;
  for (int x : w) {
    if (!r.empty() && r.back() == -x)
      r.pop_back();
    else
      r.push_back(x);
  }
  return r;
}

FWord finverse(const FWord& w) {
  FWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

FWord cyclic_reduce(FWord w) {
  w = freduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
    w = freduce(w);
  }
  return w;
}

std::string fword_str(const FreePresentation& p, const FWord& w) {
  std::ostringstream os;
  bool first = true;
  for (int x : w) {
    if (!first) os << ' ';
    first = false;
    os << p.generators[std::abs(x) - 1];
    if (x < 0) os << "^-1";
  }
  return first ? "1" : os.str();
}

std::string fkey(const FWord& w) {
  std::string s;
  s.reserve(w.size());
  for (int x : w) s.push_back((char)(x + 100));
  return s;
}

/// A presentation whose relators are all commutators of two distinct
/// generators presents a RAAG; its word problem is exact.
std::optional<GroupPresentation> commutator_presentation(
    const FreePresentation& p) {
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& r : p.relators) {
    FWord w = cyclic_reduce(r);
    if (w.empty()) continue;
    if (w.size() != 4) return std::nullopt;
    if (w[2] != -w[0] || w[3] != -w[1]) return std::nullopt;
    int a = std::abs(w[0]) - 1, b = std::abs(w[1]) - 1;
    if (a == b) return std::nullopt;
    edges.insert({p.generators[std::min(a, b)], p.generators[std::max(a, b)]});
  }
  std::vector<std::pair<std::string, std::string>> es(edges.begin(),
                                                      edges.end());
  return GroupPresentation::raag(DefiningGraph(p.generators, es));
}

bool raag_trivial(const GroupPresentation& pres, const FreePresentation& p,
                  const FWord& w) {
  Word word;
  for (int x : w)
    word.syllables.push_back(
        {pres.generator_index(p.generators[std::abs(x) - 1]),
         x > 0 ? 1LL : -1LL});
  return pres.is_identity(word);
}

/// Certified non-triviality in the abelianization: the exponent vector of w
/// must lie in the rational span of the relator exponent vectors.
bool nontrivial_in_abelianization(const FreePresentation& p, const FWord& w) {
  int g = (int)p.generators.size();
  std::vector<std::vector<Rat>> rows;
  for (const auto& r : p.relators) {
    std::vector<Rat> row(g);
    for (int x : r) {
      int i = std::abs(x) - 1;
      row[i] = row[i] + Rat(x > 0 ? 1 : -1);
    }
    rows.push_back(std::move(row));
  }
  std::vector<Rat> target(g);
  for (int x : w) {
    int i = std::abs(x) - 1;
    target[i] = target[i] + Rat(x > 0 ? 1 : -1);
  }
  // Eliminate; target must reduce to zero within the row span.
  std::size_t lead = 0;
  for (int col = 0; col < g && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[lead]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col].is_zero()) continue;
      Rat f = rows[r][col] / rows[lead][col];
      for (int cx = 0; cx < g; ++cx)
        rows[r][cx] = rows[r][cx] - f * rows[lead][cx];
    }
    if (!target[col].is_zero()) {
      Rat f = target[col] / rows[lead][col];
      for (int cx = 0; cx < g; ++cx)
        target[cx] = target[cx] - f * rows[lead][cx];
    }
    ++lead;
  }
  for (const auto& t : target)
    if (!t.is_zero()) return true;
  return false;
}

/// Budgeted relator-insertion search driving w to the empty word. Greedy
/// strictly-shortening passes first, then breadth-first with small slack.
bool insertion_search(FWord w, const FreePresentation& p, long long budget,
                      long long& states) {
  std::vector<FWord> moves;
  for (const auto& r0 : p.relators) {
    FWord r = freduce(r0);
    if (r.empty()) continue;
    for (int sign = 0; sign < 2; ++sign) {
      FWord base = sign ? finverse(r) : r;
      for (std::size_t k = 0; k < base.size(); ++k) {
        FWord rot(base.begin() + k, base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + k);
        moves.push_back(rot);
      }
    }
  }
  std::sort(moves.begin(), moves.end());
  moves.erase(std::unique(moves.begin(), moves.end()), moves.end());

  w = freduce(w);
  bool improved = true;
  while (improved && !w.empty()) {
    improved = false;
    for (const auto& r : moves) {
      for (std::size_t pos = 0; pos <= w.size() && !improved; ++pos) {
        FWord cand(w.begin(), w.begin() + pos);
        cand.insert(cand.end(), r.begin(), r.end());
        cand.insert(cand.end(), w.begin() + pos, w.end());
        cand = freduce(cand);
        if (cand.size() < w.size()) {
          w = std::move(cand);
          improved = true;
        }
      }
      if (improved) break;
    }
  }
  if (w.empty()) return true;

  std::size_t cap = w.size() + 4;
  std::unordered_set<std::string> visited{fkey(w)};
  std::queue<FWord> q;
  q.push(w);
  while (!q.empty()) {
    FWord u = q.front();
    q.pop();
    for (const auto& r : moves) {
      for (std::size_t pos = 0; pos <= u.size(); ++pos) {
        FWord cand(u.begin(), u.begin() + pos);
        cand.insert(cand.end(), r.begin(), r.end());
        cand.insert(cand.end(), u.begin() + pos, u.end());
        cand = freduce(cand);
        if (cand.empty()) return true;
        if (cand.size() > cap) continue;
        auto key = fkey(cand);
        if (visited.count(key)) continue;
        if (++states > budget) return false;
        visited.insert(std::move(key));
        q.push(std::move(cand));
      }
    }
  }
  return false;
}

FWord substitute(const FWord& w, const std::vector<FWord>& images) {
  FWord out;
  for (int x : w) {
    const FWord& img = images[std::abs(x) - 1];
    if (x > 0)
      out.insert(out.end(), img.begin(), img.end());
    else {
      FWord inv = finverse(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return freduce(out);
}

}  // namespace

FreePresentation complex_presentation(const SquareComplexPresentation& c) {
  FreePresentation p;
  p.generators = c.edge_labels;
  for (const auto& sq : c.squares) {
    FWord r;
    for (const auto& [e, s] : sq) r.push_back(s > 0 ? e + 1 : -(e + 1));
    p.relators.push_back(std::move(r));
  }
  return p;
}

FreePresentation raag_presentation(const DefiningGraph& g) {
  FreePresentation p;
  p.generators = g.labels();
  for (auto [u, v] : g.edges())
    p.relators.push_back({u + 1, v + 1, -(u + 1), -(v + 1)});
  return p;
}

FreePresentation hexagon_pi1(int n) {
  FreePresentation p;
  for (int i = 1; i <= 6; ++i) p.generators.push_back("a" + std::to_string(i));
  for (int j = 1; j <= 5; ++j)
    p.relators.push_back({j, j + 1, -j, -(j + 1)});
  FWord last{6, 1};
  for (int k = 0; k < n; ++k) last.push_back(3);
  last.push_back(-6);
  for (int k = 0; k < n; ++k) last.push_back(-3);
  last.push_back(-1);
  p.relators.push_back(std::move(last));
  return p;
}

TietzeResult tietze_verify(const FreePresentation& source,
                           const FreePresentation& target,
                           const Substitution& subst, long long budget) {
  if (subst.forward.size() != source.generators.size() ||
      subst.inverse.size() != target.generators.size())
    throw InputError("substitution arity mismatch");
  TietzeResult res;
  res.status = TietzeStatus::Verified;

  auto check_direction = [&](const FreePresentation& src,
                             const FreePresentation& tgt,
                             const std::vector<FWord>& images) {
    auto exact = commutator_presentation(tgt);
    for (const auto& r : src.relators) {
      FWord w = substitute(r, images);
      if (w.empty()) continue;
      std::string rname = fword_str(src, r);
      if (exact) {
        if (!raag_trivial(*exact, tgt, w)) {
          res.status = TietzeStatus::Failed;
          res.relator = rname;
          res.detail = "image is nontrivial (exact word problem)";
          return false;
        }
        continue;
      }
      if (nontrivial_in_abelianization(tgt, w)) {
        res.status = TietzeStatus::Failed;
        res.relator = rname;
        res.detail = "image is nontrivial in the abelianization";
        return false;
      }
      if (!insertion_search(w, tgt, budget, res.states_used)) {
        if (res.status == TietzeStatus::Verified) {
          res.status = TietzeStatus::Inconclusive;
          res.relator = rname;
          res.detail = "insertion search budget exhausted";
        }
      }
    }
    return true;
  };

  if (!check_direction(source, target, subst.forward)) return res;
  check_direction(target, source, subst.inverse);
  return res;
}

// ---- Niblo-Reeves walls ----

WallSystem niblo_reeves_walls(const GroupPresentation& coxeter, int radius) {
  if (coxeter.kind() != Kind::Coxeter)
    throw InputError("niblo_reeves_walls expects a Coxeter presentation");
  WallSystem ws{coxeter, enumerate_ball(coxeter, radius), {}, {}, {}, {}, {},
                {}, {}};
  const auto& host = ws.host;
  int nv = (int)host.elements.size();
  int ne = (int)host.edges.size();

  std::map<std::pair<int, int>, int> edge_at;
  for (int e = 0; e < ne; ++e)
    edge_at[std::minmax({host.edges[e][0], host.edges[e][1]})] = e;

  // 2m-gon cells: one per coset of each finite dihedral <s,t> inside the ball.
  int ngen = coxeter.generator_count();
  std::set<std::vector<int>> cell_seen;
  for (int s = 0; s < ngen; ++s)
    for (int t = s + 1; t < ngen; ++t) {
      int m = coxeter.coxeter_m(s, t);
      if (m == 0) continue;
      for (int v = 0; v < nv; ++v) {
        std::vector<int> cycle{v};
        Word cur = host.elements[v];
        bool ok = true;
        for (int k = 0; k < 2 * m - 1; ++k) {
          cur = coxeter.concat(cur, Word{{{k % 2 == 0 ? s : t, 1}}});
          int u = host.find(coxeter.word_str(cur));
          if (u < 0) {
            ok = false;
            break;
          }
          cycle.push_back(u);
        }
        if (!ok) continue;
        std::vector<int> key = cycle;
        std::sort(key.begin(), key.end());
        if (!cell_seen.insert(key).second) continue;
        ws.cells.push_back(cycle);
      }
    }

  // Walls: edges grouped by their reflection; opposite edges of every cell
  // must land in the same group (checked below).
  std::map<std::string, int> wall_of_reflection;
  ws.edge_wall.assign(ne, -1);
  for (int e = 0; e < ne; ++e) {
    int x = host.edges[e][0];
    int gen = coxeter.generator_index(host.edge_labels[e]);
    Word r = coxeter.conjugate(host.elements[x], Word{{{gen, 1}}});
    std::string key = coxeter.word_str(r);
    auto it = wall_of_reflection.find(key);
    if (it == wall_of_reflection.end()) {
      it = wall_of_reflection.emplace(key, (int)ws.walls.size()).first;
      ws.walls.push_back({});
      ws.wall_reflections.push_back(r);
    }
    ws.edge_wall[e] = it->second;
    ws.walls[it->second].push_back(e);
  }
  for (const auto& cell : ws.cells) {
    int m = (int)cell.size() / 2;
    for (int k = 0; k < m; ++k) {
      int e1 = edge_at.at(std::minmax({cell[k], cell[(k + 1) % (2 * m)]}));
      int e2 = edge_at.at(
          std::minmax({cell[k + m], cell[(k + m + 1) % (2 * m)]}));
      if (ws.edge_wall[e1] != ws.edge_wall[e2])
        throw StructuralError("opposite cell edges on different walls");
    }
  }

  // Halfspaces by length comparison with the reflection: exact, no window
  // truncation involved.
  for (std::size_t wi = 0; wi < ws.walls.size(); ++wi) {
    Bits near(nv), far(nv);
    const Word& r = ws.wall_reflections[wi];
    for (int v = 0; v < nv; ++v) {
      long long lv = coxeter.word_length(host.elements[v]);
      long long lrv = coxeter.word_length(coxeter.concat(r, host.elements[v]));
      if (lrv > lv)
        near.set(v);
      else
        far.set(v);
    }
    ws.side_identity.push_back(std::move(near));
    ws.side_other.push_back(std::move(far));
  }

  // In-ball setwise stabilizers under the partial left action.
  for (std::size_t wi = 0; wi < ws.walls.size(); ++wi) {
    std::vector<int> stab;
    for (int h = 0; h < nv; ++h) {
      bool any = false, ok = true;
      for (int e : ws.walls[wi]) {
        int ix = host.find(coxeter.word_str(
            coxeter.concat(host.elements[h], host.elements[host.edges[e][0]])));
        int iy = host.find(coxeter.word_str(
            coxeter.concat(host.elements[h], host.elements[host.edges[e][1]])));
        if (ix < 0 || iy < 0) continue;
        any = true;
        auto it = edge_at.find(std::minmax({ix, iy}));
        if (it == edge_at.end() || ws.edge_wall[it->second] != (int)wi) {
          ok = false;
          break;
        }
      }
      if (any && ok) stab.push_back(h);
    }
    ws.stabilizers.push_back(std::move(stab));
  }
  return ws;
}

// ---- Sageev duals ----

CubeBall dual_of_wallspace(const Wallspace& ws, long long vertex_budget) {
  int np = ws.n_points;
  if (np <= 0) throw InputError("wallspace needs at least one point");
  Bits all(np);
  all.set_all();

  // validate + dedupe walls (identical partitions merge)
  std::vector<std::array<Bits, 2>> sides;  // [0] = side with base point
  std::set<std::string> keys;
  for (const auto& [a, b] : ws.walls) {
    if ((a & b).any() || (a | b) != all)
      throw StructuralError("wall sides do not partition the points");
    if (!a.any() || !b.any())
      throw StructuralError("wall with an empty side");
    const Bits& nearb = a.test(ws.base_point) ? a : b;
    const Bits& farb = a.test(ws.base_point) ? b : a;
    std::string key;
    nearb.for_each([&](int v) { key += std::to_string(v) + ","; });
    if (keys.insert(key).second) sides.push_back({nearb, farb});
  }
  int nw = (int)sides.size();

  // pairwise side-intersection table
  std::vector<std::array<char, 4>> compat(nw * nw);
  for (int i = 0; i < nw; ++i)
    for (int j = 0; j < nw; ++j)
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj)
          compat[i * nw + j][si * 2 + sj] =
              sides[i][si].intersects(sides[j][sj]);

  std::unordered_map<Bits, int, BitsHash> index;
  std::vector<Bits> verts;
  auto intern = [&](const Bits& o) {
    auto it = index.find(o);
    if (it != index.end()) return it->second;
    if ((long long)verts.size() >= vertex_budget)
      throw ResourceError("dual grew past the vertex budget",
                          (long long)verts.size());
    verts.push_back(o);
    index.emplace(o, (int)verts.size() - 1);
    return (int)verts.size() - 1;
  };

  Bits base(nw);  // all zero: sides containing the base point
  intern(base);
  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> edge_labels;
  std::deque<int> q{0};
  std::set<std::pair<int, int>> eseen;
  while (!q.empty()) {
    int vid = q.front();
    q.pop_front();
    Bits o = verts[vid];
    for (int w = 0; w < nw; ++w) {
      int sw = o.test(w) ? 0 : 1;  // flipped choice
      bool ok = true;
      for (int u = 0; u < nw && ok; ++u) {
        if (u == w) continue;
        ok = compat[w * nw + u][sw * 2 + (o.test(u) ? 1 : 0)];
      }
      if (!ok) continue;
      Bits o2 = o;
      o2.assign(w, !o.test(w));
      int prev = (int)verts.size();
      int uid = intern(o2);
      if (uid == prev) q.push_back(uid);
      auto key = std::minmax({vid, uid});
      if (eseen.insert(key).second) {
        edges.push_back({key.first, key.second});
        edge_labels.push_back("w" + std::to_string(w));
      }
    }
  }

  // squares: flips on two walls commuting at a vertex
  std::set<std::array<int, 4>> sqseen;
  std::vector<std::array<int, 4>> squares;
  for (int vid = 0; vid < (int)verts.size(); ++vid) {
    const Bits& o = verts[vid];
    std::vector<std::pair<int, int>> flips;  // (wall, neighbor)
    for (const auto& e : edges) {
      int other = -1;
      if (e[0] == vid) other = e[1];
      if (e[1] == vid) other = e[0];
      if (other < 0) continue;
      Bits d = verts[other] ^ o;
      flips.emplace_back(d.find_first(), other);
    }
    for (std::size_t i = 0; i < flips.size(); ++i)
      for (std::size_t j = i + 1; j < flips.size(); ++j) {
        Bits o2 = o;
        o2.assign(flips[i].first, !o.test(flips[i].first));
        o2.assign(flips[j].first, !o.test(flips[j].first));
        auto it = index.find(o2);
        if (it == index.end()) continue;
        std::array<int, 4> cyc{vid, flips[i].second, it->second,
                               flips[j].second};
        std::array<int, 4> sorted = cyc;
        std::sort(sorted.begin(), sorted.end());
        if (sqseen.insert(sorted).second) squares.push_back(cyc);
      }
  }

  // labels: realized orientations take the host point's name
  std::vector<std::string> labels(verts.size());
  int synth = 0;
  for (int vid = 0; vid < (int)verts.size(); ++vid) {
    Bits common = all;
    for (int w = 0; w < nw; ++w) common &= sides[w][verts[vid].test(w) ? 1 : 0];
    int p = common.find_first();
    labels[vid] = p >= 0 ? "p" + std::to_string(p)
                         : "u" + std::to_string(synth++);
  }

  // eccentricity of the base for the radius metadata
  int radius = 0;
  {
    std::vector<std::vector<std::pair<int, int>>> adj(verts.size());
    for (int e = 0; e < (int)edges.size(); ++e) {
      adj[edges[e][0]].emplace_back(edges[e][1], e);
      adj[edges[e][1]].emplace_back(edges[e][0], e);
    }
    std::vector<int> d(verts.size(), -1);
    std::deque<int> bq{0};
    d[0] = 0;
    while (!bq.empty()) {
      int v = bq.front();
      bq.pop_front();
      radius = std::max(radius, d[v]);
      for (auto [u, e] : adj[v])
        if (d[u] < 0) {
          d[u] = d[v] + 1;
          bq.push_back(u);
        }
    }
  }

  return CubeBall(std::move(labels), std::move(edges), std::move(edge_labels),
                  0, radius, WindowKind::ConvexWindow, std::move(squares));
}

CubeBall sageev_dual(const WallSystem& ws, long long vertex_budget) {
  Wallspace sp;
  sp.n_points = (int)ws.host.elements.size();
  sp.base_point = 0;
  for (std::size_t w = 0; w < ws.walls.size(); ++w)
    sp.walls.emplace_back(ws.side_identity[w], ws.side_other[w]);
  CubeBall dual = dual_of_wallspace(sp, vertex_budget);
  return dual;
}

CubeBall product_window(const CubeBall& a, const CubeBall& b) {
  if (a.window_kind() != WindowKind::ConvexWindow ||
      b.window_kind() != WindowKind::ConvexWindow)
    throw InputError("product_window expects fully trusted windows");
  int na = a.vertex_count(), nb = b.vertex_count();
  auto id = [&](int i, int j) { return i * nb + j; };
  std::vector<std::string> labels(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      labels[id(i, j)] = "(" + a.label(i) + "," + b.label(j) + ")";
  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> edge_labels;
  for (int e = 0; e < a.edge_count(); ++e)
    for (int j = 0; j < nb; ++j) {
      edges.push_back({id(a.edge(e)[0], j), id(a.edge(e)[1], j)});
      edge_labels.push_back("L." + a.edge_label(e));
    }
  for (int e = 0; e < b.edge_count(); ++e)
    for (int i = 0; i < na; ++i) {
      edges.push_back({id(i, b.edge(e)[0]), id(i, b.edge(e)[1])});
      edge_labels.push_back("R." + b.edge_label(e));
    }
  std::vector<std::array<int, 4>> squares;
  for (const auto& sq : a.squares())
    for (int j = 0; j < nb; ++j)
      squares.push_back(
          {id(sq[0], j), id(sq[1], j), id(sq[2], j), id(sq[3], j)});
  for (const auto& sq : b.squares())
    for (int i = 0; i < na; ++i)
      squares.push_back(
          {id(i, sq[0]), id(i, sq[1]), id(i, sq[2]), id(i, sq[3])});
  for (int ea = 0; ea < a.edge_count(); ++ea)
    for (int eb = 0; eb < b.edge_count(); ++eb) {
      auto [u, v] = a.edge(ea);
      auto [x, y] = b.edge(eb);
      squares.push_back({id(u, x), id(v, x), id(v, y), id(u, y)});
    }
  return CubeBall(std::move(labels), std::move(edges), std::move(edge_labels),
                  id(a.base(), b.base()), a.radius() + b.radius(),
                  WindowKind::ConvexWindow, std::move(squares));
}

}  // namespace cubemedian
