#include "cubemedian/cube_ball.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "cubemedian/errors.hpp"

namespace cubemedian {

namespace {

std::vector<int> bfs(const std::vector<std::vector<std::pair<int, int>>>& adj,
                     const std::vector<int>& sources,
                     const std::vector<char>* edge_skip_mask = nullptr) {
  std::vector<int> d(adj.size(), -1);
  std::deque<int> q;
  for (int s : sources) {
    d[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (auto [w, e] : adj[v]) {
      if (edge_skip_mask && (*edge_skip_mask)[e]) continue;
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

}  // namespace

CubeBall::CubeBall(std::vector<std::string> labels,
                   std::vector<std::array<int, 2>> edges,
                   std::vector<std::string> edge_labels, int base, int radius,
                   WindowKind kind, std::vector<std::array<int, 4>> squares,
                   std::vector<int> shell)
    : labels_(std::move(labels)),
      edges_(std::move(edges)),
      edge_labels_(std::move(edge_labels)),
      base_(base),
      radius_(radius),
      kind_(kind),
      squares_(std::move(squares)),
      shell_(std::move(shell)),
      sync_(std::make_unique<SyncState>()) {
  int n = (int)labels_.size();
  if (n == 0) throw InputError("empty window");
  if (base_ < 0 || base_ >= n) throw InputError("base vertex out of range");
  if (edge_labels_.empty()) edge_labels_.assign(edges_.size(), "");
  if (edge_labels_.size() != edges_.size())
    throw InputError("edge label count mismatch");
  for (int i = 0; i < n; ++i) label_index_.emplace(labels_[i], i);

  adj_.assign(n, {});
  for (int e = 0; e < (int)edges_.size(); ++e) {
    auto [a, b] = edges_[e];
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
      throw InputError("bad edge endpoints");
    for (auto [w, _] : adj_[a])
      if (w == b) throw InputError("duplicate edge");
    adj_[a].emplace_back(b, e);
    adj_[b].emplace_back(a, e);
  }

  auto d0 = bfs(adj_, {base_});
  for (int v = 0; v < n; ++v)
    if (d0[v] < 0) throw StructuralError("window is not connected");

  auto adjacent = [&](int a, int b) {
    for (auto [w, _] : adj_[a])
      if (w == b) return true;
    return false;
  };
  for (const auto& sq : squares_) {
    bool cyc = adjacent(sq[0], sq[1]) && adjacent(sq[1], sq[2]) &&
               adjacent(sq[2], sq[3]) && adjacent(sq[3], sq[0]);
    bool chord = adjacent(sq[0], sq[2]) || adjacent(sq[1], sq[3]);
    if (!cyc || chord)
      throw InputError("declared square is not an induced 4-cycle");
  }

  if (kind_ == WindowKind::Ball && shell_.empty()) compute_shell();
  shell_mask_ = Bits(n);
  for (int v : shell_) shell_mask_.set(v);

  // Convex windows promise exact medians; fail fast if the promise is broken.
  if (kind_ == WindowKind::ConvexWindow) require_theta();
}

bool CubeBall::has_theta() const {
  std::lock_guard<std::mutex> lk(sync_->theta_mutex);
  if (sync_->theta_state == 0) {
    try {
      compute_theta();
      if (kind_ == WindowKind::ConvexWindow) verify_window_identities();
      sync_->theta_state = 1;
    } catch (const StructuralError& e) {
      theta_error_ = e.what();
      classes_.clear();
      edge_class_.clear();
      sigs_.clear();
      sig_index_.clear();
      sync_->theta_state = 2;
    }
  }
  return sync_->theta_state == 1;
}

void CubeBall::require_theta() const {
  if (!has_theta()) throw StructuralError(theta_error_);
}

void CubeBall::compute_shell() {
  auto d = bfs(adj_, {base_});
  for (int v = 0; v < vertex_count(); ++v)
    if (d[v] == radius_) shell_.push_back(v);
}

void CubeBall::compute_theta() const {
  int n = vertex_count(), m = edge_count();
  // Theta classes need well-defined edge splits, hence a bipartite window.
  {
    std::vector<int> color(n, -1);
    std::deque<int> q{base_};
    color[base_] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [w, _] : adj_[v]) {
        if (color[w] < 0) {
          color[w] = color[v] ^ 1;
          q.push_back(w);
        } else if (color[w] == color[v]) {
          throw StructuralError("window is not bipartite");
        }
      }
    }
  }

  // Splits of representative edges; edges crossing a split get related.
  struct Split {
    int rep_edge;
    Bits side;  // vertices nearer rep's first endpoint
  };
  std::vector<Split> splits;
  std::vector<char> seen(m, 0);
  for (int e = 0; e < m; ++e) {
    if (seen[e]) continue;
    auto [x, y] = edges_[e];
    auto dx = bfs(adj_, {x});
    auto dy = bfs(adj_, {y});
    Bits side(n);
    for (int v = 0; v < n; ++v)
      if (dx[v] < dy[v]) side.set(v);
    for (int f = 0; f < m; ++f)
      if (side.test(edges_[f][0]) != side.test(edges_[f][1])) seen[f] = 1;
    splits.push_back({e, std::move(side)});
  }

  // Union edges with every representative split they cross (Djokovic
  // relation, transitively closed over the computed splits).
  std::vector<int> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  for (const auto& s : splits)
    for (int f = 0; f < m; ++f)
      if (s.side.test(edges_[f][0]) != s.side.test(edges_[f][1]))
        uf[find(f)] = find(s.rep_edge);

  std::unordered_map<int, int> root_to_class;
  edge_class_.assign(m, -1);
  for (int e = 0; e < m; ++e) {
    int r = find(e);
    auto it = root_to_class.find(r);
    if (it == root_to_class.end()) {
      it = root_to_class.emplace(r, (int)classes_.size()).first;
      classes_.push_back({});
      classes_.back().id = it->second;
    }
    edge_class_[e] = it->second;
    classes_[it->second].edges.push_back(e);
  }

  // Sides: removing the class edges must split the window in exactly two.
  std::vector<char> skip(m, 0);
  for (auto& c : classes_) {
    for (int e : c.edges) skip[e] = 1;
    int e0 = c.edges.front();
    auto da = bfs(adj_, {edges_[e0][0]}, &skip);
    auto db = bfs(adj_, {edges_[e0][1]}, &skip);
    c.side_minus = Bits(n);
    c.side_plus = Bits(n);
    for (int v = 0; v < n; ++v) {
      if (da[v] >= 0 && db[v] >= 0)
        throw StructuralError("theta class does not bisect the window");
      if (da[v] >= 0)
        c.side_minus.set(v);
      else if (db[v] >= 0)
        c.side_plus.set(v);
      else
        throw StructuralError("theta class splits window in 3 or more parts");
    }
    for (int e : c.edges) {
      skip[e] = 0;
      if (shell_mask_.test(edges_[e][0]) || shell_mask_.test(edges_[e][1]))
        c.boundary_flag = true;
    }
  }

  int k = (int)classes_.size();
  sigs_.assign(n, Bits(k));
  for (const auto& c : classes_)
    c.side_plus.for_each([&](int v) { sigs_[v].set(c.id); });
  for (int v = 0; v < n; ++v) sig_index_.emplace(sigs_[v], v);
}

// ConvexWindow promises exact answers, so the partial-cube identities must
// hold throughout: every edge crosses exactly one class, and distance equals
// the number of separating classes (checked against the base).
void CubeBall::verify_window_identities() const {
  for (const auto& e : edges_) {
    Bits x = sigs_[e[0]] ^ sigs_[e[1]];
    if (x.count() != 1)
      throw StructuralError("convex window: edge crosses multiple classes");
  }
  const auto& d = dist_from(base_);
  for (int v = 0; v < vertex_count(); ++v) {
    Bits x = sigs_[v] ^ sigs_[base_];
    if (x.count() != d[v])
      throw StructuralError("convex window: distance/separation mismatch");
  }
}

int CubeBall::find_label(const std::string& s) const {
  auto it = label_index_.find(s);
  return it == label_index_.end() ? -1 : it->second;
}

bool CubeBall::transverse(int c1, int c2) const {
  require_theta();
  const auto& a = classes_[c1];
  const auto& b = classes_[c2];
  return a.side_minus.intersects(b.side_minus) &&
         a.side_minus.intersects(b.side_plus) &&
         a.side_plus.intersects(b.side_minus) &&
         a.side_plus.intersects(b.side_plus);
}

const std::vector<int>& CubeBall::dist_from(int v) const {
  {
    std::lock_guard<std::mutex> lk(sync_->dist_mutex);
    auto it = dist_cache_.find(v);
    if (it != dist_cache_.end()) return *it->second;
  }
  auto d = std::make_shared<const std::vector<int>>(bfs(adj_, {v}));
  std::lock_guard<std::mutex> lk(sync_->dist_mutex);
  auto [it, _] = dist_cache_.emplace(v, std::move(d));
  return *it->second;
}

std::vector<int> CubeBall::dist_to_set(const Bits& s) const {
  return bfs(adj_, s.to_vector());
}

int CubeBall::vertex_by_sig(const Bits& sig) const {
  require_theta();
  auto it = sig_index_.find(sig);
  return it == sig_index_.end() ? -1 : it->second;
}

Certification CubeBall::cert_interval(int x, int y) const {
  if (kind_ == WindowKind::ConvexWindow) return Certification::certified();
  const auto& db = dist_from(base_);
  int d = dist(x, y);
  if (std::min(db[x], db[y]) + d <= radius_) return Certification::certified();
  return Certification::truncated("interval may be clipped by the window");
}

Certification CubeBall::cert_points(const std::vector<int>& pts,
                                    int expansion) const {
  if (kind_ == WindowKind::ConvexWindow) return Certification::certified();
  const auto& db = dist_from(base_);
  int far = 0, diam = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    far = std::max(far, db[pts[i]]);
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      diam = std::max(diam, dist(pts[i], pts[j]));
  }
  if (far + diam * expansion <= radius_) return Certification::certified();
  return Certification::truncated("query hull may be clipped by the window");
}

Bits CubeBall::sig_interval(int x, int y) const {
  require_theta();
  Bits r = full_set();
  const Bits& sx = sigs_[x];
  const Bits& sy = sigs_[y];
  for (const auto& c : classes_) {
    bool bx = sx.test(c.id), by = sy.test(c.id);
    if (bx == by) r &= c.side(bx);
  }
  return r;
}

Bits CubeBall::interval_generic(int x, int y) const {
  const auto& dx = dist_from(x);
  const auto& dy = dist_from(y);
  int d = dx[y];
  Bits r(vertex_count());
  for (int v = 0; v < vertex_count(); ++v)
    if (dx[v] + dy[v] == d) r.set(v);
  return r;
}

Bits CubeBall::interval_set(int x, int y) const {
  return kind_ == WindowKind::ConvexWindow ? sig_interval(x, y)
                                           : interval_generic(x, y);
}

std::pair<Bits, Certification> CubeBall::interval(int x, int y) const {
  return {interval_set(x, y), cert_interval(x, y)};
}

CubeBall::MedianResult CubeBall::median(int x, int y, int z) const {
  Certification cert = cert_interval(x, y)
                           .merge(cert_interval(y, z))
                           .merge(cert_interval(x, z));
  // Majority signature is the median whenever the window realizes it.
  if (has_theta()) {
    Bits maj = Bits::majority(sigs_[x], sigs_[y], sigs_[z]);
    int cand = vertex_by_sig(maj);
    if (cand >= 0) {
      if (kind_ == WindowKind::ConvexWindow) return {cand, cert};
      const auto& dx = dist_from(x);
      const auto& dy = dist_from(y);
      const auto& dz = dist_from(z);
      if (dx[cand] + dy[cand] == dx[y] && dy[cand] + dz[cand] == dy[z] &&
          dx[cand] + dz[cand] == dx[z])
        return {cand, cert};
    }
  }
  // Fall back to the triple interval intersection inside the window.
  Bits common = interval_set(x, y);
  common &= interval_set(y, z);
  common &= interval_set(x, z);
  int count = common.count();
  if (count == 1) return {common.find_first(), cert};
  if (cert.ok())
    throw StructuralError("host not median: certified triple has " +
                          std::to_string(count) + " median candidates");
  return {-1, cert};
}

Bits CubeBall::halfspace_hull_bound(const Bits& a) const {
  require_theta();
  Bits r = full_set();
  for (const auto& c : classes_) {
    bool hm = a.intersects(c.side_minus);
    bool hp = a.intersects(c.side_plus);
    if (hm && !hp)
      r &= c.side_minus;
    else if (hp && !hm)
      r &= c.side_plus;
  }
  return r;
}

CubeBall::IterationResult CubeBall::hull(const Bits& a) const {
  if (!a.any()) throw InputError("hull of the empty set");
  Certification cert = cert_points(a.to_vector(), dimension() + 1);
  Bits bound = kind_ == WindowKind::ConvexWindow ? halfspace_hull_bound(a)
                                                 : full_set();
  Bits s = a;
  std::vector<int> frontier = a.to_vector();
  int iters = 0;
  while (true) {
    Bits u = s;
    auto in_s = s.to_vector();
    bool saturated = (u == bound);
    for (std::size_t i = 0; i < frontier.size() && !saturated; ++i) {
      for (int q : in_s) {
        if (q == frontier[i]) continue;
        u |= interval_set(frontier[i], q);
        if (u == bound) {
          saturated = true;
          break;
        }
      }
    }
    if (u == s) break;
    ++iters;
    frontier = u.andnot(s).to_vector();
    s = std::move(u);
  }
  return {std::move(s), cert, iters};
}

CubeBall::IterationResult CubeBall::generate_subalgebra(const Bits& a) const {
  if (!a.any()) throw InputError("subalgebra of the empty set");
  Certification cert = cert_points(a.to_vector(), dimension() + 1);
  Bits s = a;
  std::vector<int> frontier = a.to_vector();
  int iters = 0;
  while (true) {
    Bits u = s;
    auto in_s = s.to_vector();
    for (int x : frontier) {
      for (std::size_t i = 0; i < in_s.size(); ++i) {
        for (std::size_t j = i; j < in_s.size(); ++j) {
          MedianResult m = median(x, in_s[i], in_s[j]);
          if (m.vertex >= 0) u.set(m.vertex);
          if (!m.cert.ok()) cert = cert.merge(m.cert);
        }
      }
    }
    if (u == s) break;
    ++iters;
    frontier = u.andnot(s).to_vector();
    s = std::move(u);
  }
  return {std::move(s), cert, iters};
}

std::pair<CubeBall::SubsetClass, Certification> CubeBall::classify_subset(
    const Bits& a) const {
  if (!a.any()) throw InputError("classify of the empty set");
  auto pts = a.to_vector();
  Certification cert = Certification::certified();

  bool subalg = true;
  for (std::size_t i = 0; i < pts.size() && subalg; ++i)
    for (std::size_t j = i; j < pts.size() && subalg; ++j)
      for (std::size_t k = j; k < pts.size(); ++k) {
        MedianResult m = median(pts[i], pts[j], pts[k]);
        if (!m.cert.ok()) {
          cert = cert.merge(m.cert);
          continue;
        }
        if (m.vertex < 0 || !a.test(m.vertex)) {
          subalg = false;
          break;
        }
      }
  if (!subalg) return {SubsetClass::NotSubalgebra, cert};

  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Certification c = cert_interval(pts[i], pts[j]);
      if (!c.ok()) {
        cert = cert.merge(c);
        continue;
      }
      if (!interval_set(pts[i], pts[j]).is_subset_of(a))
        return {SubsetClass::SubalgebraNotConvex, cert};
    }
  return {SubsetClass::Convex, cert};
}

std::pair<CubeBall::WallRel, int> CubeBall::wall_relation(int c1,
                                                          int c2) const {
  require_theta();
  if (c1 == c2) throw InputError("wall_relation needs distinct classes");
  int sep = 0;
  for (const auto& c : classes_) {
    if (c.id == c1 || c.id == c2) continue;
    if (transverse(c.id, c1) && transverse(c.id, c2)) ++sep;
  }
  if (transverse(c1, c2)) return {WallRel::Transverse, sep};
  return {sep > 0 ? WallRel::Nested : WallRel::DisjointUnnested, sep};
}

Bits CubeBall::full_set() const {
  Bits r(vertex_count());
  r.set_all();
  return r;
}

int CubeBall::dimension() const {
  if (dim_ >= 0) return dim_;
  if (squares_.empty()) {
    dim_ = edges_.empty() ? 0 : 1;
    return dim_;
  }
  // Edge pairs that span a square corner, per vertex.
  auto edge_between = [&](int a, int b) {
    for (auto [w, e] : adj_[a])
      if (w == b) return e;
    return -1;
  };
  std::unordered_map<long long, std::vector<std::pair<int, int>>> corners;
  auto add_corner = [&](int v, int e1, int e2) {
    corners[v].emplace_back(std::min(e1, e2), std::max(e1, e2));
  };
  for (const auto& sq : squares_) {
    int eab = edge_between(sq[0], sq[1]);
    int ebc = edge_between(sq[1], sq[2]);
    int ecd = edge_between(sq[2], sq[3]);
    int eda = edge_between(sq[3], sq[0]);
    add_corner(sq[0], eab, eda);
    add_corner(sq[1], eab, ebc);
    add_corner(sq[2], ebc, ecd);
    add_corner(sq[3], ecd, eda);
  }
  int best = 1;
  for (int v = 0; v < vertex_count(); ++v) {
    const auto& inc = adj_[v];
    int k = (int)inc.size();
    if (k <= best) continue;
    std::vector<std::uint64_t> compat(k, 0);
    auto it = corners.find(v);
    if (it != corners.end()) {
      for (auto [e1, e2] : it->second) {
        int i1 = -1, i2 = -1;
        for (int i = 0; i < k; ++i) {
          if (inc[i].second == e1) i1 = i;
          if (inc[i].second == e2) i2 = i;
        }
        if (i1 >= 0 && i2 >= 0) {
          compat[i1] |= std::uint64_t(1) << i2;
          compat[i2] |= std::uint64_t(1) << i1;
        }
      }
    }
    // Bron-Kerbosch, vertex count at a corner is small.
    std::function<void(std::uint64_t, std::uint64_t, int)> grow =
        [&](std::uint64_t r, std::uint64_t p, int rc) {
          if (!p) {
            best = std::max(best, rc);
            return;
          }
          if (rc + std::popcount(p) <= best) return;
          std::uint64_t pp = p;
          while (pp) {
            int i = std::countr_zero(pp);
            pp &= pp - 1;
            grow(r | (std::uint64_t(1) << i), p & compat[i], rc + 1);
            p &= ~(std::uint64_t(1) << i);
          }
        };
    grow(0, (k >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << k) - 1)), 0);
  }
  dim_ = best;
  return dim_;
}

std::string CubeBall::to_dot(const Bits* highlight,
                             const std::vector<Halfspace>* colored) const {
  static const char* palette[] = {"red",    "blue",   "darkgreen", "orange",
                                  "purple", "brown",  "cadetblue", "magenta",
                                  "gold3",  "cyan4",  "salmon3",   "navy"};
  std::ostringstream os;
  os << "graph window {\n  node [shape=point];\n";
  for (int v = 0; v < vertex_count(); ++v) {
    os << "  v" << v << " [label=\"" << labels_[v] << "\"";
    if (highlight && highlight->test(v))
      os << ", shape=circle, style=filled, fillcolor=black";
    os << "];\n";
  }
  bool theta = has_theta();
  std::vector<int> class_color(theta ? classes_.size() : 0, -1);
  if (theta && colored)
    for (std::size_t i = 0; i < colored->size(); ++i)
      class_color[(*colored)[i].cls] = (int)(i % 12);
  for (int e = 0; e < edge_count(); ++e) {
    if (!theta) {
      os << "  v" << edges_[e][0] << " -- v" << edges_[e][1] << ";\n";
      continue;
    }
    int c = edge_class_[e];
    int ci = class_color[c] >= 0 ? class_color[c] : c % 12;
    os << "  v" << edges_[e][0] << " -- v" << edges_[e][1] << " [color="
       << palette[ci] << (class_color[c] >= 0 ? ", penwidth=3" : "")
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cubemedian
