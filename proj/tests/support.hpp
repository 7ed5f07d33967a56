#pragma once

// Shared test fixtures and independent oracles. Everything here recomputes
// results from first principles (plain BFS, exhaustive closures) so library
// outputs are checked against code that shares no implementation path.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "cubemedian/builders.hpp"
#include "cubemedian/classification.hpp"
#include "cubemedian/cube_ball.hpp"
#include "cubemedian/presentation.hpp"

namespace testsupport {

using namespace cubemedian;

// ---- plain graph utilities, independent of CubeBall internals ----

struct PlainGraph {
  int n = 0;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::vector<int>> adj;  // by vertex: neighbor list

  static PlainGraph of(const CubeBall& b) {
    PlainGraph g;
    g.n = b.vertex_count();
    g.adj.resize(g.n);
    for (int e = 0; e < b.edge_count(); ++e) {
      auto [u, v] = b.edge(e);
      g.edges.push_back({u, v});
      g.adj[u].push_back(v);
      g.adj[v].push_back(u);
    }
    return g;
  }
};

inline std::vector<int> plain_bfs(const PlainGraph& g, int s) {
  std::vector<int> d(g.n, -1);
  std::deque<int> q{s};
  d[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.adj[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
  }
  return d;
}

inline std::vector<std::vector<int>> all_pairs(const PlainGraph& g) {
  std::vector<std::vector<int>> d;
  for (int v = 0; v < g.n; ++v) d.push_back(plain_bfs(g, v));
  return d;
}

/// Brute-force Djokovic relation with transitive closure: the oracle for
/// theta classes. Returns the partition of edge ids, each class sorted.
inline std::vector<std::vector<int>> djokovic_oracle(const CubeBall& b) {
  PlainGraph g = PlainGraph::of(b);
  auto d = all_pairs(g);
  int m = (int)g.edges.size();
  std::vector<int> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  for (int e = 0; e < m; ++e)
    for (int f = e + 1; f < m; ++f) {
      auto [x, y] = g.edges[e];
      auto [u, v] = g.edges[f];
      if (d[x][u] + d[y][v] != d[x][v] + d[y][u]) uf[find(e)] = find(f);
    }
  std::map<int, std::vector<int>> classes;
  for (int e = 0; e < m; ++e) classes[find(e)].push_back(e);
  std::vector<std::vector<int>> out;
  for (auto& [r, es] : classes) {
    std::sort(es.begin(), es.end());
    out.push_back(es);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<int>> theta_partition(const CubeBall& b) {
  std::vector<std::vector<int>> out;
  for (const auto& c : b.theta_classes()) {
    auto es = c.edges;
    std::sort(es.begin(), es.end());
    out.push_back(es);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- exhaustive shuffle closure: the word oracle for graph products ----

struct Letter {
  int gen;
  long long exp;
  bool operator<(const Letter& o) const {
    return gen != o.gen ? gen < o.gen : exp < o.exp;
  }
  bool operator==(const Letter& o) const {
    return gen == o.gen && exp == o.exp;
  }
};
using LWord = std::vector<Letter>;

inline LWord to_lword(const Word& w) {
  LWord out;
  for (const auto& s : w.syllables) out.push_back({s.gen, s.exp});
  return out;
}

/// All words reachable by swapping adjacent commuting syllables and merging
/// or cancelling adjacent same-generator syllables.
inline std::set<LWord> shuffle_closure(const GroupPresentation& p,
                                       const LWord& start) {
  std::set<LWord> seen{start};
  std::deque<LWord> q{start};
  auto reduce_exp = [&](int gen, long long e) {
    int o = p.order(gen);
    if (o == 0) return e;
    e %= o;
    if (e < 0) e += o;
    return e;
  };
  while (!q.empty()) {
    LWord w = q.front();
    q.pop_front();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen) {
        LWord v(w.begin(), w.begin() + i);
        long long e = reduce_exp(w[i].gen, w[i].exp + w[i + 1].exp);
        if (e != 0) v.push_back({w[i].gen, e});
        v.insert(v.end(), w.begin() + i + 2, w.end());
        if (seen.insert(v).second) q.push_back(v);
      } else if (p.commutes(w[i].gen, w[i + 1].gen)) {
        LWord v = w;
        std::swap(v[i], v[i + 1]);
        if (seen.insert(v).second) q.push_back(v);
      }
    }
  }
  return seen;
}

inline bool oracle_equal(const GroupPresentation& p, const Word& a,
                         const Word& b) {
  auto ca = shuffle_closure(p, to_lword(a));
  auto cb = shuffle_closure(p, to_lword(b));
  for (const auto& w : ca)
    if (cb.count(w)) return true;
  return false;
}

// ---- hosts ----

inline CubeBall grid_window(int dims, int halfwidth) {
  AffineAction a;
  a.n = dims;
  return tiling_window(a, halfwidth).ball;
}

inline TilingWindow grid_tiling(int dims, int halfwidth) {
  AffineAction a;
  a.n = dims;
  return tiling_window(a, halfwidth);
}

inline int grid_vertex(const TilingWindow& w, std::vector<long long> c) {
  return w.vertex_at(c);
}

/// Whole random tree as a fully trusted window.
inline CubeBall random_tree(int n, std::mt19937_64& rng) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("t" + std::to_string(i));
  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> elabs;
  for (int v = 1; v < n; ++v) {
    int p = (int)(rng() % v);
    edges.push_back({p, v});
    elabs.push_back("e" + std::to_string(v));
  }
  return CubeBall(std::move(labels), std::move(edges), std::move(elabs), 0, n,
                  WindowKind::ConvexWindow);
}

inline DefiningGraph pentagon() { return DefiningGraph::cycle(5, "v"); }
inline DefiningGraph hexagon() { return DefiningGraph::cycle(6, "x"); }

// ---- graph isomorphism (refinement + backtracking) oracle ----

inline bool graphs_isomorphic(const PlainGraph& a, const PlainGraph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
  auto color_rounds = [&](const PlainGraph& g) {
    std::vector<long long> col(g.n, 0);
    for (int round = 0; round < g.n; ++round) {
      std::vector<std::vector<long long>> sig(g.n);
      for (int v = 0; v < g.n; ++v) {
        for (int w : g.adj[v]) sig[v].push_back(col[w]);
        std::sort(sig[v].begin(), sig[v].end());
        sig[v].push_back(col[v]);
      }
      std::map<std::vector<long long>, long long> remap;
      for (int v = 0; v < g.n; ++v)
        if (!remap.count(sig[v])) remap[sig[v]] = (long long)remap.size();
      std::vector<long long> nxt(g.n);
      for (int v = 0; v < g.n; ++v) nxt[v] = remap[sig[v]];
      if (nxt == col) break;
      col = nxt;
    }
    return col;
  };
  auto ca = color_rounds(a);
  auto cb = color_rounds(b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<std::set<int>> adjb(b.n);
  for (auto [u, v] : b.edges) {
    adjb[u].insert(v);
    adjb[v].insert(u);
  }
  std::vector<int> map_ab(a.n, -1), used(b.n, 0);
  std::function<bool(int)> assign = [&](int v) -> bool {
    if (v == a.n) return true;
    for (int w = 0; w < b.n; ++w) {
      if (used[w] || ca[v] != cb[w]) continue;
      bool ok = true;
      for (int u : a.adj[v])
        if (map_ab[u] >= 0 && !adjb[w].count(map_ab[u])) ok = false;
      for (int u = 0; u < v; ++u)
        if (std::find(a.adj[v].begin(), a.adj[v].end(), u) == a.adj[v].end() &&
            map_ab[u] >= 0 && adjb[w].count(map_ab[u]))
          ok = false;
      if (!ok) continue;
      map_ab[v] = w;
      used[w] = 1;
      if (assign(v + 1)) return true;
      map_ab[v] = -1;
      used[w] = 0;
    }
    return false;
  };
  return assign(0);
}

// ---- random labeled graphs for classification sweeps ----

inline DefiningGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < p) edges.emplace_back(labels[i], labels[j]);
  return DefiningGraph(std::move(labels), edges);
}

inline DefiningGraph graph_from_mask(int n, unsigned long long mask) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1) edges.emplace_back(labels[i], labels[j]);
  return DefiningGraph(std::move(labels), edges);
}

}  // namespace testsupport
