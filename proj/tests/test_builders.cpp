#include <doctest.h>

#include <random>

#include "cubemedian/builders.hpp"
#include "cubemedian/errors.hpp"
#include "support.hpp"

using namespace cubemedian;
using namespace testsupport;

namespace {

// Independent mini affine arithmetic on integer signed permutations:
// permutation array, sign array, integer translation (doubled to stay
// integral for 1/2 translations if ever needed).
struct MiniAffine {
  std::vector<int> perm, sign;
  std::vector<long long> trans;

  static MiniAffine from(const AffineMap& m) {
    int n = m.linear.rows;
    MiniAffine r;
    r.perm.assign(n, -1);
    r.sign.assign(n, 1);
    r.trans.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!m.linear.at(i, j).is_zero()) {
          r.perm[i] = j;
          r.sign[i] = m.linear.at(i, j).num;
        }
    for (int i = 0; i < n; ++i) {
      REQUIRE(m.translation[i].is_integer());
      r.trans[i] = m.translation[i].num;
    }
    return r;
  }
  std::vector<long long> apply(const std::vector<long long>& x) const {
    std::vector<long long> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = sign[i] * x[perm[i]] + trans[i];
    return y;
  }
};

AffineAction action_333xZ() {
  AffineAction a;
  a.n = 3;
  auto perm_map = [](std::vector<int> rows) {
    MatQ m(3, 3);
    for (int i = 0; i < 3; ++i) m.at(i, rows[i]) = Rat(1);
    return m;
  };
  a.generators.push_back({"rho", {perm_map({0, 2, 1}), {Rat(0), Rat(0), Rat(0)}}});
  a.generators.push_back({"sigma", {perm_map({1, 2, 0}), {Rat(0), Rat(0), Rat(0)}}});
  a.generators.push_back({"T0", {MatQ::identity(3), {Rat(1), Rat(1), Rat(1)}}});
  a.generators.push_back({"T1", {MatQ::identity(3), {Rat(-2), Rat(1), Rat(1)}}});
  a.relations_declared = {"T0 rho T0^-1 rho^-1", "T0 sigma T0^-1 sigma^-1",
                          "T0 T1 T0^-1 T1^-1"};
  return a;
}

std::string cyclic_canon(std::vector<int> w) {
  // canonical representative of a cyclic word up to rotation and inversion
  auto best_of = [](const std::vector<int>& v) {
    std::vector<int> best = v;
    for (std::size_t r = 1; r < v.size(); ++r) {
      std::vector<int> rot(v.begin() + r, v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + r);
      if (rot < best) best = rot;
    }
    return best;
  };
  std::vector<int> inv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(-*it);
  std::vector<int> a = best_of(w), b = best_of(inv);
  const std::vector<int>& c = a < b ? a : b;
  std::string s;
  for (int x : c) s += std::to_string(x) + ".";
  return s;
}

std::vector<int> free_reduce_test(std::vector<int> w) {
  std::vector<int> r;
  for (int x : w) {
    if (!r.empty() && r.back() == -x)
      r.pop_back();
    else
      r.push_back(x);
  }
  return r;
}

/// Tietze elimination oracle: substitute away every generator that appears
/// exactly once in some relator, then compare cyclic relators.
std::multiset<std::string> eliminate_all(FreePresentation p,
                                         const std::set<std::string>& keep) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t ri = 0; ri < p.relators.size() && !changed; ++ri) {
      auto r = free_reduce_test(p.relators[ri]);
      for (std::size_t pos = 0; pos < r.size(); ++pos) {
        int g = std::abs(r[pos]) - 1;
        if (keep.count(p.generators[g])) continue;
        int occurrences = 0;
        for (int x : r)
          if (std::abs(x) - 1 == g) ++occurrences;
        bool elsewhere = false;
        for (std::size_t rj = 0; rj < p.relators.size(); ++rj) {
          if (rj == ri) continue;
          for (int x : p.relators[rj])
            if (std::abs(x) - 1 == g) elsewhere = true;
        }
        if (occurrences != 1) continue;
        // solve r = u g^eps v = 1 for g
        std::vector<int> u(r.begin(), r.begin() + pos);
        std::vector<int> v(r.begin() + pos + 1, r.end());
        int eps = r[pos] > 0 ? 1 : -1;
        // g^eps = u^-1 v^-1
        std::vector<int> image;
        for (auto it = u.rbegin(); it != u.rend(); ++it) image.push_back(-*it);
        for (auto it = v.rbegin(); it != v.rend(); ++it) image.push_back(-*it);
        if (eps < 0) {
          std::vector<int> inv;
          for (auto it = image.rbegin(); it != image.rend(); ++it)
            inv.push_back(-*it);
          image = inv;
        }
        // substitute in all other relators, drop this one
        FreePresentation np;
        np.generators = p.generators;
        for (std::size_t rj = 0; rj < p.relators.size(); ++rj) {
          if (rj == ri) continue;
          std::vector<int> out;
          for (int x : p.relators[rj]) {
            if (std::abs(x) - 1 != g) {
              out.push_back(x);
              continue;
            }
            if (x > 0)
              out.insert(out.end(), image.begin(), image.end());
            else
              for (auto it = image.rbegin(); it != image.rend(); ++it)
                out.push_back(-*it);
          }
          np.relators.push_back(free_reduce_test(out));
        }
        p = np;
        changed = true;
        (void)elsewhere;
        break;
      }
    }
  }
  std::multiset<std::string> out;
  for (auto& r : p.relators) {
    auto rr = free_reduce_test(r);
    if (!rr.empty()) out.insert(cyclic_canon(rr));
  }
  return out;
}

}  // namespace

TEST_CASE("standard balls") {
  SUBCASE("one involution") {
    auto p = GroupPresentation::racg(DefiningGraph::edgeless(1, "s"));
    CubeBall b = standard_ball(p, 1);
    CHECK(b.vertex_count() == 2);
    CHECK(b.edge_count() == 1);
    CHECK(b.squares().empty());
  }
  SUBCASE("pentagon radius 2: 21 vertices, 5 squares at the base") {
    auto p = GroupPresentation::racg(pentagon());
    CubeBall b = standard_ball(p, 2);
    CHECK(b.vertex_count() == 21);
    int at_base = 0;
    for (const auto& sq : b.squares())
      for (int v : sq)
        if (v == 0) ++at_base;
    CHECK(at_base == 5);
    CHECK(b.dimension() == 2);
  }
  SUBCASE("hexagon raag radius 1") {
    auto p = GroupPresentation::raag(hexagon());
    CubeBall b = standard_ball(p, 1);
    CHECK(b.vertex_count() == 13);
  }
}

TEST_CASE("graph product coset balls") {
  SUBCASE("free product of Z/2 and Z/3, radius 1") {
    std::map<std::string, int> orders{{"a", 2}, {"b", 3}};
    DefiningGraph g({"a", "b"}, {});
    auto p = GroupPresentation::graph_product(g, orders);
    CubeBall b = graph_product_ball(p, 1);
    CHECK(b.vertex_count() == 3);  // 1, G_a, G_b
  }
  SUBCASE("single Z/2: radius 1 is half the subdivided segment") {
    std::map<std::string, int> orders{{"a", 2}};
    DefiningGraph g({"a"}, {});
    auto p = GroupPresentation::graph_product(g, orders);
    CubeBall b1 = graph_product_ball(p, 1);
    CHECK(b1.vertex_count() == 2);
    CubeBall b2 = graph_product_ball(p, 2);
    CHECK(b2.vertex_count() == 3);  // 1 - G_a - a
  }
  SUBCASE("pentagon orders 2: subdivision count oracle") {
    std::map<std::string, int> orders;
    for (int i = 1; i <= 5; ++i) orders["v" + std::to_string(i)] = 2;
    auto gp = GroupPresentation::graph_product(pentagon(), orders);
    auto rc = GroupPresentation::racg(pentagon());
    // The coset complex is the cubical subdivision of the Davis complex:
    // distance of a cell's coset vertex = 2 d(corner) + dim(cell).
    CubeBall davis = standard_ball(rc, 3);
    PlainGraph pg = PlainGraph::of(davis);
    auto dist = plain_bfs(pg, 0);
    for (int radius = 2; radius <= 4; ++radius) {
      long long expect = 0;
      for (int v = 0; v < davis.vertex_count(); ++v)
        if (2 * dist[v] <= radius) ++expect;
      for (int e = 0; e < davis.edge_count(); ++e) {
        int m = std::min(dist[davis.edge(e)[0]], dist[davis.edge(e)[1]]);
        if (2 * m + 1 <= radius) ++expect;
      }
      for (const auto& sq : davis.squares()) {
        int m = std::min(std::min(dist[sq[0]], dist[sq[1]]),
                         std::min(dist[sq[2]], dist[sq[3]]));
        if (2 * m + 2 <= radius) ++expect;
      }
      CubeBall coset = graph_product_ball(gp, radius);
      CHECK(coset.vertex_count() == expect);
    }
  }
}

TEST_CASE("graph product hyperplane stabilizers match the link conjugates") {
  std::map<std::string, int> orders;
  for (int i = 1; i <= 5; ++i) orders["v" + std::to_string(i)] = 2;
  auto gp = GroupPresentation::graph_product(pentagon(), orders);
  CosetBall cb = graph_product_coset_ball(gp, 3);
  const CubeBall& b = cb.ball;
  const auto& d0 = b.dist_from(b.base());

  // group elements present in the window (empty-clique cosets)
  std::vector<int> elements;
  for (int v = 0; v < b.vertex_count(); ++v)
    if (!cb.cliques[v].any()) elements.push_back(v);

  int deep_walls = 0;
  for (const auto& cls : b.theta_classes()) {
    // the wall is dual to edges [gG_c, gG_{c+v}]; find one deep edge
    int rep = -1;
    for (int e : cls.edges)
      if (d0[b.edge(e)[0]] <= b.radius() - 2 &&
          d0[b.edge(e)[1]] <= b.radius() - 2)
        rep = e;
    if (rep < 0) continue;
    ++deep_walls;
    auto [lo, hi] = b.edge(rep);
    if (cb.cliques[lo].count() > cb.cliques[hi].count()) std::swap(lo, hi);
    Bits added = cb.cliques[hi].andnot(cb.cliques[lo]);
    REQUIRE(added.count() == 1);
    int vgen = added.find_first();
    Word g = cb.reps[lo];
    std::vector<std::string> lk;
    for (int u : gp.graph().link(vgen)) lk.push_back(gp.generator_label(u));

    // in-ball setwise stabilizer under the partial action
    std::set<int> stab;
    for (int hv : elements) {
      const Word& h = cb.reps[hv];
      bool any = false, ok = true;
      for (int e : cls.edges) {
        auto [x, y] = b.edge(e);
        // act: h (rep_x, clique_x)
        Word hx = gp.concat(h, cb.reps[x]);
        Word hy = gp.concat(h, cb.reps[y]);
        auto find_coset = [&](const Word& w, const Bits& c) {
          // canonicalize by scanning all vertices with this clique
          for (int u = 0; u < b.vertex_count(); ++u) {
            if (!(cb.cliques[u] == c)) continue;
            // same coset iff rep^-1 w uses only clique generators
            Word diff = gp.concat(gp.inverse(cb.reps[u]), w);
            bool inside = true;
            for (int s : gp.support(diff))
              if (!c.test(s)) inside = false;
            if (inside) return u;
          }
          return -1;
        };
        int ix = find_coset(hx, cb.cliques[x]);
        int iy = find_coset(hy, cb.cliques[y]);
        if (ix < 0 || iy < 0) continue;
        any = true;
        int eid = -1;
        for (auto [w2, e2] : b.neighbors(ix))
          if (w2 == iy) eid = e2;
        if (eid < 0 || b.edge_class(eid) != cls.id) {
          ok = false;
          break;
        }
      }
      if (any && ok) stab.insert(hv);
    }

    // prediction: g G_lk(v) g^-1 intersected with the window elements
    std::set<int> predicted;
    for (int hv : elements) {
      Word conj = gp.concat(gp.concat(gp.inverse(g), cb.reps[hv]), g);
      if (gp.in_special_subgroup(conj, lk)) predicted.insert(hv);
    }
    CHECK(stab == predicted);
  }
  CHECK(deep_walls > 0);
}

TEST_CASE("tiling windows") {
  SUBCASE("plain grid") {
    auto t = grid_tiling(2, 3);
    CHECK(t.ball.vertex_count() == 49);
    CHECK(t.ball.dimension() == 2);
    CHECK(t.q == 1);
  }
  SUBCASE("333 x Z matrices: exact relations and the dihedral") {
    AffineAction a = action_333xZ();
    auto t = tiling_window(a, 3);
    for (auto& [rel, ok] : t.relation_checks) CHECK(ok);

    // <rho, sigma> has exactly 6 elements (oracle: independent mini affine)
    std::vector<MiniAffine> seen;
    std::vector<MiniAffine> frontier{MiniAffine::from(AffineMap::identity(3))};
    auto same = [](const MiniAffine& x, const MiniAffine& y) {
      return x.perm == y.perm && x.sign == y.sign && x.trans == y.trans;
    };
    MiniAffine rho = MiniAffine::from(a.generators[0].map);
    MiniAffine sigma = MiniAffine::from(a.generators[1].map);
    auto compose = [](const MiniAffine& f, const MiniAffine& g) {
      MiniAffine r;
      int n = (int)f.perm.size();
      r.perm.resize(n);
      r.sign.resize(n);
      r.trans.resize(n);
      for (int i = 0; i < n; ++i) {
        r.perm[i] = g.perm[f.perm[i]];
        r.sign[i] = f.sign[i] * g.sign[f.perm[i]];
        r.trans[i] = f.sign[i] * g.trans[f.perm[i]] + f.trans[i];
      }
      return r;
    };
    while (!frontier.empty()) {
      MiniAffine cur = frontier.back();
      frontier.pop_back();
      bool known = false;
      for (const auto& s : seen)
        if (same(s, cur)) known = true;
      if (known) continue;
      seen.push_back(cur);
      frontier.push_back(compose(cur, rho));
      frontier.push_back(compose(cur, sigma));
    }
    CHECK(seen.size() == 6);

    // the three named reflections satisfy the (3,3,3) relations
    AffineMap r1 = a.generators[0].map;
    AffineMap s = a.generators[1].map;
    AffineMap t1 = a.generators[3].map;
    AffineMap r2 = s * r1 * s.inverse();
    AffineMap c = t1 * s * s;
    AffineMap r3 = c * r1 * c.inverse();
    for (const auto& r : {r1, r2, r3}) CHECK((r * r).is_identity());
    auto order3 = [](const AffineMap& x) {
      return (x * x * x).is_identity() && !x.is_identity();
    };
    CHECK(order3(r1 * r2));
    CHECK(order3(r1 * r3));
    CHECK(order3(r2 * r3));
  }
  SUBCASE("rotated dihedral squared window builds") {
    AffineAction a;
    a.n = 2;
    MatQ swap(2, 2), nswap(2, 2);
    swap.at(0, 1) = Rat(1);
    swap.at(1, 0) = Rat(1);
    nswap.at(0, 1) = Rat(-1);
    nswap.at(1, 0) = Rat(-1);
    a.generators.push_back({"r1", {swap, {Rat(0), Rat(0)}}});
    a.generators.push_back({"r1b", {swap, {Rat(-1), Rat(1)}}});
    a.generators.push_back({"r2", {nswap, {Rat(0), Rat(0)}}});
    a.generators.push_back({"r2b", {nswap, {Rat(1), Rat(1)}}});
    a.relations_declared = {"r1 r1", "r2 r2", "r1 r2 r1^-1 r2^-1"};
    auto t = tiling_window(a, 16);
    CHECK(t.ball.vertex_count() == 33 * 33);
    for (auto& [rel, ok] : t.relation_checks) CHECK(ok);
    Bits orbit = orbit_in_window(t, {0, 1}, t.ball.base());
    // factor orbit of the base is the antidiagonal
    CHECK(orbit.count() == 33);
    orbit.for_each([&](int v) {
      CHECK(t.coords[v][0] == -t.coords[v][1]);
    });
  }
  SUBCASE("bad generator is an input error") {
    AffineAction a;
    a.n = 2;
    MatQ shear = MatQ::identity(2);
    shear.at(0, 1) = Rat(1);
    a.generators.push_back({"g", {shear, {Rat(0), Rat(0)}}});
    CHECK_THROWS_AS(tiling_window(a, 2), InputError);
  }
}

TEST_CASE("hexagon complexes") {
  SUBCASE("square counts and the salvetti case") {
    CHECK(hexagon_complex(0).squares.size() == 6);
    CHECK(hexagon_complex(3).squares.size() == 9);
    CHECK(hexagon_complex(3).edge_labels.size() == 9);
  }
  SUBCASE("staircase eliminates to the displayed relator") {
    for (int n = 0; n <= 4; ++n) {
      auto raw = complex_presentation(hexagon_complex(n));
      std::set<std::string> keep;
      for (int i = 1; i <= 6; ++i) keep.insert("a" + std::to_string(i));
      auto got = eliminate_all(raw, keep);
      std::multiset<std::string> want;
      for (const auto& r : hexagon_pi1(n).relators)
        want.insert(cyclic_canon(r));
      CHECK(got == want);
    }
  }
  SUBCASE("npc link checks") {
    for (int n = 0; n <= 4; ++n) {
      auto res = npc_link_check(hexagon_complex(n));
      CHECK(res.pass);
    }
    // two squares with the same [a,b] boundary make a bigon
    SquareComplexPresentation bad;
    bad.edge_labels = {"a", "b"};
    bad.squares.push_back({std::pair<int, int>{0, 1}, {1, 1}, {0, -1}, {1, -1}});
    bad.squares.push_back({std::pair<int, int>{0, 1}, {1, 1}, {0, -1}, {1, -1}});
    auto res = npc_link_check(bad);
    CHECK(!res.pass);
    // the square skeleton of the Z^3 torus has a link triangle at the
    // missing 3-cube corner, so the square-complex condition rejects it
    SquareComplexPresentation tri;
    tri.edge_labels = {"a", "b", "c"};
    auto comm = [&](int x, int y) {
      tri.squares.push_back({std::pair<int, int>{x, 1}, {y, 1}, {x, -1}, {y, -1}});
    };
    comm(0, 1);
    comm(1, 2);
    comm(0, 2);
    auto rt = npc_link_check(tri);
    CHECK(!rt.pass);
    CHECK(rt.witness_cycle.size() == 3);
    // a path raag salvetti has no triangles and passes
    SquareComplexPresentation pathc;
    pathc.edge_labels = {"a", "b", "c"};
    pathc.squares.push_back(
        {std::pair<int, int>{0, 1}, {1, 1}, {0, -1}, {1, -1}});
    pathc.squares.push_back(
        {std::pair<int, int>{1, 1}, {2, 1}, {1, -1}, {2, -1}});
    CHECK(npc_link_check(pathc).pass);
  }
}

TEST_CASE("tietze verification") {
  SUBCASE("identity substitution at n = 0") {
    auto src = raag_presentation(hexagon());
    auto tgt = hexagon_pi1(0);
    Substitution s;
    for (int i = 0; i < 6; ++i) s.forward.push_back({i + 1});
    for (int i = 0; i < 6; ++i) s.inverse.push_back({i + 1});
    auto r = tietze_verify(src, tgt, s, 100000);
    CHECK(r.status == TietzeStatus::Verified);
  }
  SUBCASE("the hexagon isomorphism x1 -> a1 a3^n") {
    for (int n = 1; n <= 4; ++n) {
      auto src = raag_presentation(hexagon());
      auto tgt = hexagon_pi1(n);
      Substitution s;
      for (int i = 0; i < 6; ++i) {
        std::vector<int> img{i + 1};
        if (i == 0)
          for (int k = 0; k < n; ++k) img.push_back(3);
        s.forward.push_back(img);
      }
      for (int i = 0; i < 6; ++i) {
        std::vector<int> img{i + 1};
        if (i == 0)
          for (int k = 0; k < n; ++k) img.push_back(-3);
        s.inverse.push_back(img);
      }
      auto r = tietze_verify(src, tgt, s, 200000);
      CHECK(r.status == TietzeStatus::Verified);
    }
  }
  SUBCASE("a wrong substitution fails on the twisted relator") {
    auto src = raag_presentation(hexagon());
    auto tgt = hexagon_pi1(0);
    Substitution s;
    for (int i = 0; i < 6; ++i) {
      std::vector<int> img{i + 1};
      if (i == 0) img.push_back(2);  // x1 -> a1 a2
      s.forward.push_back(img);
    }
    for (int i = 0; i < 6; ++i) {
      std::vector<int> img{i + 1};
      if (i == 0) img.push_back(-2);
      s.inverse.push_back(img);
    }
    auto r = tietze_verify(src, tgt, s, 100000);
    CHECK(r.status == TietzeStatus::Failed);
    CHECK(r.relator.find("x6") != std::string::npos);
  }
}

TEST_CASE("niblo-reeves walls") {
  SUBCASE("square cell: two walls stabilized by the whole group") {
    auto p = coxeter_preset("I2(2)");
    WallSystem ws = niblo_reeves_walls(p, 2);
    CHECK(ws.host.elements.size() == 4);
    CHECK(ws.walls.size() == 2);
    for (const auto& st : ws.stabilizers) CHECK(st.size() == 4);
  }
  SUBCASE("hexagon cell: three walls with dihedral stabilizers") {
    auto p = coxeter_preset("A2");
    WallSystem ws = niblo_reeves_walls(p, 3);
    CHECK(ws.host.elements.size() == 6);
    CHECK(ws.walls.size() == 3);
    // wall through [1, s1]: stabilizer {1, s1}
    int w0 = ws.edge_wall[0];
    REQUIRE(ws.host.edges[0][0] == 0);
    std::set<std::string> st;
    for (int h : ws.stabilizers[w0]) st.insert(h == 0 ? "1" : ws.host.names[h]);
    CHECK(st == std::set<std::string>{"1", "s1"});
  }
  SUBCASE("333 walls carry centralizer stabilizers") {
    auto p = coxeter_preset("333");
    WallSystem ws = niblo_reeves_walls(p, 3);
    for (std::size_t w = 0; w < ws.walls.size(); ++w) {
      const Word& r = ws.wall_reflections[w];
      std::set<int> z;
      for (int h = 0; h < (int)ws.host.elements.size(); ++h)
        if (p.equal(p.concat(ws.host.elements[h], r),
                    p.concat(r, ws.host.elements[h])))
          z.insert(h);
      std::set<int> st(ws.stabilizers[w].begin(), ws.stabilizers[w].end());
      // the partial-action stabilizer can only miss boundary elements, and
      // must never exceed the centralizer
      for (int h : st) CHECK(z.count(h));
    }
  }
}

TEST_CASE("sageev duals") {
  SUBCASE("two crossing walls dualize to a 4-cycle") {
    Wallspace ws;
    ws.n_points = 4;  // quadrant representatives
    ws.base_point = 0;
    Bits a(4), b(4);
    a.set(0);
    a.set(1);  // x-side: {0,1} vs {2,3}
    b.set(0);
    b.set(2);  // y-side: {0,2} vs {1,3}
    ws.walls.emplace_back(a, a.complement());
    ws.walls.emplace_back(b, b.complement());
    CubeBall d = dual_of_wallspace(ws);
    CHECK(d.vertex_count() == 4);
    CHECK(d.edge_count() == 4);
    CHECK(d.squares().size() == 1);
  }
  SUBCASE("two nested walls dualize to a path") {
    Wallspace ws;
    ws.n_points = 3;
    ws.base_point = 0;
    Bits a(3), b(3);
    a.set(0);             // {0} vs {1,2}
    b.set(0);
    b.set(1);             // {0,1} vs {2}
    ws.walls.emplace_back(a, a.complement());
    ws.walls.emplace_back(b, b.complement());
    CubeBall d = dual_of_wallspace(ws);
    CHECK(d.vertex_count() == 3);
    CHECK(d.edge_count() == 2);
    CHECK(d.squares().empty());
  }
  SUBCASE("pentagon wall system dualizes to the davis ball interior") {
    auto cox = racg_as_coxeter(pentagon());
    WallSystem ws = niblo_reeves_walls(cox, 3);
    CubeBall dual = sageev_dual(ws);
    auto rc = GroupPresentation::racg(pentagon());
    CubeBall davis2 = standard_ball(rc, 2);

    // explicit embedding: ball element -> its orientation label
    std::map<std::string, int> dual_by_label;
    for (int v = 0; v < dual.vertex_count(); ++v)
      dual_by_label[dual.label(v)] = v;
    // realized dual vertices are labelled p<host index>
    std::vector<int> image;
    PlainGraph dg = PlainGraph::of(dual);
    std::set<std::pair<int, int>> dedges;
    for (auto [u, v] : dg.edges) dedges.insert(std::minmax({u, v}));
    int embedded_edges = 0;
    for (int v = 0; v < davis2.vertex_count(); ++v) {
      std::string host_name = davis2.label(v) == "1" ? "1" : davis2.label(v);
      int hidx = ws.host.find(host_name == "1" ? "" : host_name);
      REQUIRE(hidx >= 0);
      auto it = dual_by_label.find("p" + std::to_string(hidx));
      REQUIRE(it != dual_by_label.end());
      image.push_back(it->second);
    }
    for (int e = 0; e < davis2.edge_count(); ++e) {
      auto [u, v] = davis2.edge(e);
      CHECK(dedges.count(std::minmax({image[u], image[v]})));
      ++embedded_edges;
    }
    CHECK(embedded_edges == davis2.edge_count());
    // and the induced subgraph matches exactly (graph-iso oracle)
    std::set<int> img(image.begin(), image.end());
    CHECK((int)img.size() == davis2.vertex_count());
    PlainGraph induced;
    induced.n = (int)image.size();
    induced.adj.resize(induced.n);
    std::map<int, int> back;
    for (int i = 0; i < (int)image.size(); ++i) back[image[i]] = i;
    for (auto [u, v] : dg.edges)
      if (back.count(u) && back.count(v)) {
        induced.edges.push_back({back[u], back[v]});
        induced.adj[back[u]].push_back(back[v]);
        induced.adj[back[v]].push_back(back[u]);
      }
    CHECK(graphs_isomorphic(induced, PlainGraph::of(davis2)));
  }
}

TEST_CASE("product windows") {
  std::mt19937_64 rng(21);
  CubeBall t1 = random_tree(6, rng);
  CubeBall t2 = random_tree(5, rng);
  CubeBall prod = product_window(t1, t2);
  CHECK(prod.vertex_count() == 30);
  CHECK(prod.dimension() == 2);
  CHECK(prod.window_kind() == WindowKind::ConvexWindow);
  // medians exist everywhere (convex window verifies partial-cube identities)
  auto m = prod.median(0, 7, 23);
  CHECK(m.cert.ok());
}
