#include "cubemedian/subalgebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "cubemedian/errors.hpp"

namespace cubemedian {

int SubalgebraView::wall_side_distance(int x, int y) const {
  return (member_wall_sig[dense_index[x]] ^ member_wall_sig[dense_index[y]])
      .count();
}

bool SubalgebraView::wall_transverse_in_subset(int w1, int w2) const {
  const auto& a = walls[w1];
  const auto& b = walls[w2];
  return a.inside_minus.intersects(b.inside_minus) &&
         a.inside_minus.intersects(b.inside_plus) &&
         a.inside_plus.intersects(b.inside_minus) &&
         a.inside_plus.intersects(b.inside_plus);
}

SubalgebraView analyze_subalgebra(const CubeBall& host, const Bits& members) {
  if (!members.any()) throw InputError("empty member set");
  SubalgebraView view;
  view.host = &host;
  view.members = members;
  view.member_list = members.to_vector();
  view.cert = Certification::certified();

  // Median closure on certified triples (trivial when the set is everything).
  if (members.count() != host.vertex_count()) {
    const auto& pts = view.member_list;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i; j < pts.size(); ++j)
        for (std::size_t k = j; k < pts.size(); ++k) {
          auto m = host.median(pts[i], pts[j], pts[k]);
          if (!m.cert.ok()) {
            view.cert = view.cert.merge(m.cert);
            continue;
          }
          if (m.vertex < 0 || !members.test(m.vertex))
            throw StructuralError(
                "members are not median-closed: witness triple " +
                host.label(pts[i]) + ", " + host.label(pts[j]) + ", " +
                host.label(pts[k]));
        }
  }

  // Edge-connectedness of the induced subgraph.
  {
    Bits seen(host.vertex_count());
    std::deque<int> q{view.member_list.front()};
    seen.set(view.member_list.front());
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [w, e] : host.neighbors(v))
        if (members.test(w) && !seen.test(w)) {
          seen.set(w);
          q.push_back(w);
        }
    }
    view.edge_connected = true;
    for (int v : view.member_list)
      if (!seen.test(v)) view.edge_connected = false;
  }

  // Restriction of host classes: both sides must meet the subset.
  std::map<std::string, int> wall_index;
  for (const auto& c : host.theta_classes()) {
    Bits rm = c.side_minus & members;
    Bits rp = c.side_plus & members;
    if (!rm.any() || !rp.any()) continue;
    view.restricting_classes.push_back(c.id);
    // canonical key: the side not containing the lowest member
    bool low_in_minus = rm.test(view.member_list.front());
    const Bits& keyside = low_in_minus ? rp : rm;
    std::string key;
    keyside.for_each([&](int v) { key += std::to_string(v) + ","; });
    auto it = wall_index.find(key);
    if (it == wall_index.end()) {
      it = wall_index.emplace(key, (int)view.walls.size()).first;
      view.walls.push_back(
          {low_in_minus ? rm : rp, low_in_minus ? rp : rm, {}});
    }
    view.walls[it->second].host_classes.push_back(c.id);
    view.class_to_wall.push_back(it->second);
  }
  view.res_injective =
      view.walls.size() == view.restricting_classes.size();

  view.dense_index.assign(host.vertex_count(), -1);
  for (std::size_t i = 0; i < view.member_list.size(); ++i)
    view.dense_index[view.member_list[i]] = (int)i;
  view.member_wall_sig.assign(view.member_list.size(),
                              Bits((int)view.walls.size()));
  for (std::size_t w = 0; w < view.walls.size(); ++w)
    view.walls[w].inside_plus.for_each([&](int v) {
      view.member_wall_sig[view.dense_index[v]].set((int)w);
    });

  // Empirical carrier-density constant.
  for (std::size_t w = 0; w < view.walls.size(); ++w) {
    auto [cm, cxm] = carriers(view, (int)w);
    if (!cm.any()) continue;
    auto d = host.dist_to_set(cm);
    int gap = 0;
    cxm.for_each([&](int v) { gap = std::max(gap, d[v]); });
    view.carrier_density = std::max(view.carrier_density, gap);
  }
  return view;
}

std::pair<Bits, Bits> carriers(const SubalgebraView& view, int wall) {
  const CubeBall& host = *view.host;
  if (wall < 0 || wall >= (int)view.walls.size())
    throw InputError("wall id out of range");
  Bits cm(host.vertex_count());
  const auto& pts = view.member_list;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      Bits d = view.member_wall_sig[i] ^ view.member_wall_sig[j];
      if (d.count() == 1 && d.test(wall)) cm.set(pts[i]);
    }
  Bits cx(host.vertex_count());
  for (int cls : view.walls[wall].host_classes)
    for (int e : host.theta_classes()[cls].edges) {
      cx.set(host.edge(e)[0]);
      cx.set(host.edge(e)[1]);
    }
  cx &= view.members;
  return {cm, cx};
}

// ---- grid witnesses ----

FindGridResult find_grid(const SubalgebraView& view, int n) {
  if (n < 0) throw InputError("grid order must be >= 0");
  const CubeBall& host = *view.host;
  FindGridResult res;

  auto hull = host.hull(view.members);
  Bits escape = hull.set.andnot(view.members);
  bool truncated = !hull.cert.ok() || !view.cert.ok();
  if (!escape.any()) {
    res.status = truncated ? FindGridStatus::Inconclusive : FindGridStatus::None;
    res.note = "hull adds no vertices";
    return res;
  }

  auto dm = host.dist_to_set(view.members);
  std::vector<int> candidates = escape.to_vector();
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return dm[a] != dm[b] ? dm[a] > dm[b] : a < b;
  });
  if (candidates.size() > 256) candidates.resize(256);

  // Restricted side of each halfspace, as member-dense bits.
  auto dense_side = [&](Halfspace h) {
    Bits r((int)view.member_list.size());
    const Bits& s = host.side(h);
    for (std::size_t i = 0; i < view.member_list.size(); ++i)
      if (s.test(view.member_list[i])) r.set((int)i);
    return r;
  };

  for (int C : candidates) {
    // halfspaces containing C whose both sides meet the members
    std::vector<Halfspace> sigma;
    for (int cls : view.restricting_classes) {
      bool plus = host.theta_classes()[cls].side_plus.test(C);
      sigma.push_back({cls, plus});
    }
    int m = (int)sigma.size();
    std::vector<Bits> dsides(m);
    for (int i = 0; i < m; ++i) dsides[i] = dense_side(sigma[i]);

    // nesting poset and longest descending chains
    std::vector<std::vector<int>> below(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        const Bits& si = host.side(sigma[i]);
        const Bits& sj = host.side(sigma[j]);
        if (sj.is_subset_of(si) && sj != si) below[i].push_back(j);
      }
    std::vector<int> depth(m, -1);
    std::vector<int> next(m, -1);
    std::function<int(int)> chain_depth = [&](int i) {
      if (depth[i] >= 0) return depth[i];
      depth[i] = 0;
      for (int j : below[i]) {
        int d = chain_depth(j) + 1;
        if (d > depth[i] || (d == depth[i] && next[i] >= 0 && j < next[i])) {
          depth[i] = d;
          next[i] = j;
        }
      }
      return depth[i];
    };
    for (int i = 0; i < m; ++i) chain_depth(i);

    int best_h = -1, best_k = -1, best_score = -1;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        if (dsides[i].intersects(dsides[j])) continue;  // quadrant meets M
        if (!host.transverse(sigma[i].cls, sigma[j].cls)) continue;
        int score = std::min(depth[i], depth[j]);
        if (score > best_score) {
          best_score = score;
          best_h = i;
          best_k = j;
        }
      }
    if (best_h < 0 || best_score < n) continue;

    auto extract = [&](int top) {
      std::vector<Halfspace> chain{sigma[top]};
      int cur = top;
      while ((int)chain.size() < n + 1) {
        cur = next[cur];
        chain.push_back(sigma[cur]);
      }
      return chain;
    };
    GridWitness w;
    w.h_chain = extract(best_h);
    w.k_chain = extract(best_k);
    w.escape_vertex = C;
    w.escape_distance = dm[C];
    bool cross_ok = true;
    for (const auto& a : w.h_chain)
      for (const auto& b : w.k_chain)
        if (!host.transverse(a.cls, b.cls)) cross_ok = false;
    if (!cross_ok) continue;
    w.covering_ok = true;  // members avoid side(h0) & side(k0) by the pair test
    res.status = FindGridStatus::Found;
    res.witness = std::move(w);
    return res;
  }

  res.status = truncated ? FindGridStatus::Inconclusive : FindGridStatus::None;
  res.note = "no separating pair with deep enough chains";
  return res;
}

std::vector<int> qc_profile(const SubalgebraView& view, int max_len) {
  if (max_len < 0) throw InputError("negative profile length");
  const CubeBall& host = *view.host;
  auto dm = host.dist_to_set(view.members);
  std::vector<int> esc(max_len + 1, 0);
  const auto& pts = view.member_list;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& di = host.dist_from(pts[i]);
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      int d = di[pts[j]];
      if (d > max_len) continue;
      if (!host.cert_interval(pts[i], pts[j]).ok()) continue;
      Bits iv = host.interval_set(pts[i], pts[j]);
      int peak = 0;
      iv.for_each([&](int v) { peak = std::max(peak, dm[v]); });
      esc[d] = std::max(esc[d], peak);
    }
  }
  for (int l = 1; l <= max_len; ++l) esc[l] = std::max(esc[l], esc[l - 1]);
  return esc;
}

// ---- bridges and the minimizing geodesic ----

namespace {

Bits carrier_side(const SubalgebraView& view, MHalfspace h) {
  auto [cm, cx] = carriers(view, h.wall);
  const Bits& side = h.plus ? view.walls[h.wall].inside_plus
                            : view.walls[h.wall].inside_minus;
  return cm & side;
}

std::vector<int> separating_walls(const SubalgebraView& view, MHalfspace h,
                                  MHalfspace k) {
  const Bits& hs = h.plus ? view.walls[h.wall].inside_plus
                          : view.walls[h.wall].inside_minus;
  const Bits& ks = k.plus ? view.walls[k.wall].inside_plus
                          : view.walls[k.wall].inside_minus;
  std::vector<int> out;
  for (std::size_t w = 0; w < view.walls.size(); ++w) {
    const Bits& m = view.walls[w].inside_minus;
    const Bits& p = view.walls[w].inside_plus;
    if ((hs.is_subset_of(m) && ks.is_subset_of(p)) ||
        (hs.is_subset_of(p) && ks.is_subset_of(m)))
      out.push_back((int)w);
  }
  return out;
}

}  // namespace

BridgeResult bridge(const SubalgebraView& view, MHalfspace h, MHalfspace k) {
  const CubeBall& host = *view.host;
  const Bits& hs = h.plus ? view.walls[h.wall].inside_plus
                          : view.walls[h.wall].inside_minus;
  const Bits& ks = k.plus ? view.walls[k.wall].inside_plus
                          : view.walls[k.wall].inside_minus;
  if (hs.intersects(ks))
    throw InputError("bridge needs disjoint halfspaces of the subset");

  Bits a = carrier_side(view, {h.wall, !h.plus});
  Bits b = carrier_side(view, {k.wall, !k.plus});
  if (!a.any() || !b.any()) throw StructuralError("carrier is empty");

  auto av = a.to_vector();
  auto bv = b.to_vector();
  int best = -1;
  for (int x : av)
    for (int y : bv) {
      int d = view.wall_side_distance(x, y);
      if (best < 0 || d < best) best = d;
    }
  BridgeResult res;
  res.bridge = Bits(host.vertex_count());
  for (int x : av)
    for (int y : bv) {
      if (view.wall_side_distance(x, y) != best) continue;
      for (int z : view.member_list)
        if (view.wall_side_distance(x, z) + view.wall_side_distance(z, y) ==
            best)
          res.bridge.set(z);
    }

  Bits pb = res.bridge & b;
  res.p = pb.find_first();
  if (res.p < 0) throw StructuralError("bridge misses the k carrier");

  auto sep = separating_walls(view, h, k);
  Bits sepmask((int)view.walls.size());
  for (int w : sep) sepmask.set(w);
  Bits qa = res.bridge & a;
  std::vector<int> q_candidates;
  qa.for_each([&](int z) {
    Bits diff = view.member_wall_sig[view.dense_index[res.p]] ^
                view.member_wall_sig[view.dense_index[z]];
    if (diff.is_subset_of(sepmask)) q_candidates.push_back(z);
  });
  if (q_candidates.size() != 1)
    throw StructuralError("bridge gate is not unique: " +
                          std::to_string(q_candidates.size()) +
                          " candidates");
  res.q = q_candidates.front();
  return res;
}

namespace {

struct AlphaSetup {
  MHalfspace res_h, res_k;
  BridgeResult br;
  std::vector<int> dist_to_k;
  std::vector<Halfspace> omega_perp, omega_par;
  // classification of every restricting halfspace in H(p | res(h))
  std::map<std::pair<int, bool>, int> omega_type;  // 1 perp, 2 par
};

MHalfspace resolve(const SubalgebraView& view, Halfspace h) {
  for (std::size_t i = 0; i < view.restricting_classes.size(); ++i) {
    if (view.restricting_classes[i] != h.cls) continue;
    int w = view.class_to_wall[i];
    Bits inside = view.host->side(h) & view.members;
    if (inside == view.walls[w].inside_plus) return {w, true};
    if (inside == view.walls[w].inside_minus) return {w, false};
    throw StructuralError("halfspace restriction mismatch");
  }
  throw InputError("halfspace does not restrict to the subset");
}

AlphaSetup alpha_setup(const SubalgebraView& view, Halfspace h, Halfspace k) {
  const CubeBall& host = *view.host;
  if (!view.edge_connected)
    throw InputError("the minimizing geodesic needs an edge-connected subset");
  if (!host.transverse(h.cls, k.cls))
    throw InputError("halfspaces must be transverse in the host");
  Bits quad = host.side(h) & host.side(k) & view.members;
  if (quad.any())
    throw InputError("the subset meets the chosen quadrant");

  AlphaSetup s;
  s.res_h = resolve(view, h);
  s.res_k = resolve(view, k);
  s.br = bridge(view, s.res_h, s.res_k);
  s.dist_to_k = host.dist_to_set(host.side(k));

  int p = s.br.p;
  for (int cls : view.restricting_classes) {
    const auto& tc = host.theta_classes()[cls];
    bool p_plus = tc.side_plus.test(p);
    Halfspace j{cls, !p_plus};  // the side not containing p
    Bits hm = host.side(h) & view.members;
    if (!hm.is_subset_of(host.side(j))) continue;  // res(h) not inside j
    if (!host.side(j).intersects(host.side(k))) {
      s.omega_par.push_back(j);
      s.omega_type[{j.cls, j.plus}] = 2;
    } else if (host.transverse(j.cls, k.cls)) {
      s.omega_perp.push_back(j);
      s.omega_type[{j.cls, j.plus}] = 1;
    } else {
      throw StructuralError("halfspace neither parallel nor transverse to k");
    }
  }
  return s;
}

AlphaReport alpha_from_path(const SubalgebraView& view, const AlphaSetup& s,
                            const std::vector<int>& path) {
  const CubeBall& host = *view.host;
  AlphaReport rep;
  rep.path = path;
  rep.omega_perp = s.omega_perp;
  rep.omega_par = s.omega_par;
  for (int v : path) rep.distance_profile.push_back(s.dist_to_k[v]);

  struct Crossing {
    Halfspace j;
    int type;  // 1 perp, 2 par
  };
  std::vector<Crossing> crossings;
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    int eid = -1;
    for (auto [w, e] : host.neighbors(path[t]))
      if (w == path[t + 1]) eid = e;
    if (eid < 0) throw StructuralError("alpha path leaves the edge set");
    int cls = host.edge_class(eid);
    bool plus = host.theta_classes()[cls].side_plus.test(path[t + 1]);
    auto it = s.omega_type.find({cls, plus});
    if (it == s.omega_type.end())
      throw StructuralError("alpha crossed a wall outside the partition");
    crossings.push_back({{cls, plus}, it->second});
  }

  for (const auto& c : crossings) {
    if (!rep.segments.empty() &&
        (rep.segments.back().perp == (c.type == 1)))
      rep.segments.back().length++;
    else
      rep.segments.push_back({c.type == 1, 1});
  }
  for (const auto& seg : rep.segments)
    rep.max_segment_length = std::max(rep.max_segment_length, seg.length);

  rep.transversality_ok = true;
  for (std::size_t i = 0; i < crossings.size(); ++i)
    for (std::size_t j = i + 1; j < crossings.size(); ++j)
      if (crossings[i].type == 2 && crossings[j].type == 1 &&
          !host.transverse(crossings[i].j.cls, crossings[j].j.cls))
        rep.transversality_ok = false;

  rep.empty_corner_ok = true;
  std::size_t pos = 0;
  std::vector<std::pair<std::size_t, std::size_t>> seg_ranges;
  for (const auto& seg : rep.segments) {
    seg_ranges.emplace_back(pos, pos + seg.length);
    pos += seg.length;
  }
  for (std::size_t si = 0; si + 1 < rep.segments.size(); ++si) {
    if (rep.segments[si].perp || !rep.segments[si + 1].perp) continue;
    for (std::size_t a = seg_ranges[si].first; a < seg_ranges[si].second; ++a)
      for (std::size_t b = seg_ranges[si + 1].first;
           b < seg_ranges[si + 1].second; ++b) {
        Bits corner = host.side(CubeBall::opposite(crossings[a].j)) &
                      host.side(crossings[b].j) & view.members;
        if (corner.any()) rep.empty_corner_ok = false;
      }
  }
  return rep;
}

}  // namespace

AlphaReport minimal_geodesic_alpha(const SubalgebraView& view, Halfspace h,
                                   Halfspace k) {
  AlphaSetup s = alpha_setup(view, h, k);
  int p = s.br.p, q = s.br.q;
  int D = view.wall_side_distance(p, q);

  // Layered greedy: at each step keep the vertices realizing the
  // lexicographically least distance profile so far.
  std::vector<std::vector<int>> layers{{p}};
  std::vector<std::map<int, int>> parent(1);
  for (int t = 0; t < D; ++t) {
    std::map<int, int> nexts;  // vertex -> a parent
    for (int v : layers[t])
      for (auto [w, e] : view.host->neighbors(v)) {
        if (!view.members.test(w)) continue;
        if (view.wall_side_distance(p, w) != t + 1 ||
            view.wall_side_distance(w, q) != D - t - 1)
          continue;
        nexts.emplace(w, v);
      }
    if (nexts.empty()) throw StructuralError("geodesic layering broke");
    int fmin = -1;
    for (auto& [w, par] : nexts)
      if (fmin < 0 || s.dist_to_k[w] < fmin) fmin = s.dist_to_k[w];
    std::vector<int> keep;
    std::map<int, int> kept_parents;
    for (auto& [w, par] : nexts)
      if (s.dist_to_k[w] == fmin) {
        keep.push_back(w);
        kept_parents.emplace(w, par);
      }
    layers.push_back(std::move(keep));
    parent.push_back(std::move(kept_parents));
  }

  std::vector<int> path{q};
  for (int t = D; t > 0; --t) path.push_back(parent[t].at(path.back()));
  std::reverse(path.begin(), path.end());

  AlphaReport rep = alpha_from_path(view, s, path);
  rep.exact = true;
  return rep;
}

AlphaReport minimal_geodesic_alpha_enumerated(const SubalgebraView& view,
                                              Halfspace h, Halfspace k,
                                              long long budget) {
  AlphaSetup s = alpha_setup(view, h, k);
  int p = s.br.p, q = s.br.q;
  int D = view.wall_side_distance(p, q);

  std::vector<int> best_path;
  std::vector<int> best_profile;
  long long count = 0;
  bool complete = true;
  std::vector<int> cur{p};
  std::vector<int> cur_profile{s.dist_to_k[p]};
  std::function<void()> dfs = [&]() {
    if (count > budget) {
      complete = false;
      return;
    }
    int t = (int)cur.size() - 1;
    if (t == D) {
      ++count;
      if (best_profile.empty() || cur_profile < best_profile) {
        best_profile = cur_profile;
        best_path = cur;
      }
      return;
    }
    for (auto [w, e] : view.host->neighbors(cur.back())) {
      if (!view.members.test(w)) continue;
      if (view.wall_side_distance(p, w) != t + 1 ||
          view.wall_side_distance(w, q) != D - t - 1)
        continue;
      cur.push_back(w);
      cur_profile.push_back(s.dist_to_k[w]);
      dfs();
      cur.pop_back();
      cur_profile.pop_back();
    }
  };
  dfs();
  if (best_path.empty())
    throw ResourceError("geodesic enumeration found nothing within budget",
                        count);
  AlphaReport rep = alpha_from_path(view, s, best_path);
  rep.exact = complete;
  rep.geodesics_enumerated = count;
  return rep;
}

ChainWitnessResult chain_witness(const std::vector<Bits>& h_seq,
                                 const std::vector<Bits>& k_seq, int n,
                                 int dim) {
  if (h_seq.size() != k_seq.size())
    throw InputError("halfspace sequences must have equal length");
  int N = (int)h_seq.size();
  ChainWitnessResult res;
  if (n < 0 || dim < 1) throw InputError("bad chain parameters");
  if (N <= 2 * n * dim) {
    res.status = ChainStatus::PreconditionNotMet;
    return res;
  }
  auto strictly_above = [&](const Bits& a, const Bits& b) {
    return b.is_subset_of(a) && a != b;  // a strictly contains b
  };
  std::vector<int> above(N, 0), above_prev(N, -1);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < i; ++j)
      if (strictly_above(h_seq[j], h_seq[i]) && above[j] + 1 > above[i]) {
        above[i] = above[j] + 1;
        above_prev[i] = j;
      }
  std::vector<int> below(N, 0), below_next(N, -1);
  for (int i = N - 1; i >= 0; --i)
    for (int j = N - 1; j > i; --j)
      if (strictly_above(k_seq[i], k_seq[j]) && below[j] + 1 > below[i]) {
        below[i] = below[j] + 1;
        below_next[i] = j;
      }
  for (int k = 0; k < N; ++k) {
    if (above[k] < n || below[k] < n) continue;
    res.status = ChainStatus::Found;
    res.k = k;
    int cur = k;
    for (int step = 0; step < n; ++step) {
      cur = above_prev[cur];
      res.i_indices.push_back(cur);
    }
    std::reverse(res.i_indices.begin(), res.i_indices.end());
    cur = k;
    for (int step = 0; step < n; ++step) {
      cur = below_next[cur];
      res.j_indices.push_back(cur);
    }
    return res;
  }
  res.status = ChainStatus::NotFound;
  return res;
}

}  // namespace cubemedian
