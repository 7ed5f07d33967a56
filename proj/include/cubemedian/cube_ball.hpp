#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubemedian/bits.hpp"

namespace cubemedian {

/// Tracks whether a query answer is exact for the ambient (infinite) complex
/// or only for the truncated window.
struct Certification {
  enum class Status { Certified, Truncated };
  Status status = Status::Certified;
  std::string reason;

  bool ok() const { return status == Status::Certified; }
  static Certification certified() { return {}; }
  static Certification truncated(std::string why) {
    return {Status::Truncated, std::move(why)};
  }
  Certification merge(const Certification& o) const {
    return ok() ? o : *this;
  }
};

/// One hyperplane of the window: an edge class with its two halfspace sides.
struct ThetaClass {
  int id = -1;
  std::vector<int> edges;
  Bits side_minus, side_plus;
  bool boundary_flag = false;
  const Bits& side(bool plus) const { return plus ? side_plus : side_minus; }
};

/// One side of a theta class.
struct Halfspace {
  int cls = -1;
  bool plus = false;
  friend bool operator==(const Halfspace& a, const Halfspace& b) {
    return a.cls == b.cls && a.plus == b.plus;
  }
};

/// Ball: a metric ball around `base`; queries are certified by the radius
/// rules. ConvexWindow: the window is a convex piece of the ambient complex
/// (tiling box, full finite complex, dual of a wall system); every query is
/// exact and the partial-cube identities are verified at construction.
enum class WindowKind { Ball, ConvexWindow };

/// Finite induced window of a cube complex 1-skeleton, with its theta classes
/// precomputed. Immutable after construction; queries are const and safe to
/// run concurrently (the distance cache is internally locked).
class CubeBall {
 public:
  CubeBall(std::vector<std::string> labels,
           std::vector<std::array<int, 2>> edges,
           std::vector<std::string> edge_labels, int base, int radius,
           WindowKind kind, std::vector<std::array<int, 4>> squares = {},
           std::vector<int> shell = {});

  int vertex_count() const { return (int)labels_.size(); }
  int edge_count() const { return (int)edges_.size(); }
  const std::string& label(int v) const { return labels_[v]; }
  int find_label(const std::string& s) const;
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adj_[v];
  }
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  const std::string& edge_label(int e) const { return edge_labels_[e]; }
  int base() const { return base_; }
  int radius() const { return radius_; }
  WindowKind window_kind() const { return kind_; }
  const std::vector<int>& boundary_shell() const { return shell_; }
  bool on_shell(int v) const { return shell_mask_.test(v); }
  const std::vector<std::array<int, 4>>& squares() const { return squares_; }

  /// Max number of pairwise square-compatible edges at a vertex: the
  /// dimension of the window as a cube complex.
  int dimension() const;

  const std::vector<ThetaClass>& theta_classes() const {
    require_theta();
    return classes_;
  }
  int theta_class_count() const { return (int)theta_classes().size(); }
  int edge_class(int e) const {
    require_theta();
    return edge_class_[e];
  }
  const Bits& side(const Halfspace& h) const {
    require_theta();
    return classes_[h.cls].side(h.plus);
  }
  static Halfspace opposite(Halfspace h) {
    h.plus = !h.plus;
    return h;
  }
  bool transverse(int c1, int c2) const;

  const std::vector<int>& dist_from(int v) const;
  int dist(int u, int v) const { return dist_from(u)[v]; }
  std::vector<int> dist_to_set(const Bits& s) const;

  /// Per-vertex theta side signature: bit c set iff v lies on side_plus of c.
  const Bits& vertex_sig(int v) const {
    require_theta();
    return sigs_[v];
  }
  int vertex_by_sig(const Bits& sig) const;

  Certification cert_interval(int x, int y) const;
  Certification cert_points(const std::vector<int>& pts, int expansion) const;

  std::pair<Bits, Certification> interval(int x, int y) const;

  struct MedianResult {
    int vertex = -1;  // -1: no in-window median (empty or ambiguous)
    Certification cert;
  };
  MedianResult median(int x, int y, int z) const;

  struct IterationResult {
    Bits set;
    Certification cert;
    int iterations_used = 0;
  };
  IterationResult hull(const Bits& a) const;
  IterationResult generate_subalgebra(const Bits& a) const;

  enum class SubsetClass { Convex, SubalgebraNotConvex, NotSubalgebra };
  std::pair<SubsetClass, Certification> classify_subset(const Bits& a) const;

  enum class WallRel { Transverse, Nested, DisjointUnnested };
  std::pair<WallRel, int> wall_relation(int c1, int c2) const;

  Bits full_set() const;
  Bits interval_set(int x, int y) const;  // no certification, just the set

  /// Theta classes exist only for bipartite windows; graph-product Cayley
  /// balls with orders >= 3 are legitimate windows without them. Returns
  /// whether the class structure is available.
  bool has_theta() const;

  std::string to_dot(const Bits* highlight = nullptr,
                     const std::vector<Halfspace>* colored = nullptr) const;

 private:
  void compute_shell();
  void compute_theta() const;
  void require_theta() const;
  void verify_window_identities() const;
  Bits halfspace_hull_bound(const Bits& a) const;
  Bits sig_interval(int x, int y) const;
  Bits interval_generic(int x, int y) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> label_index_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::string> edge_labels_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  int base_ = 0;
  int radius_ = 0;
  WindowKind kind_ = WindowKind::Ball;
  std::vector<std::array<int, 4>> squares_;
  std::vector<int> shell_;
  Bits shell_mask_;

  struct SyncState {
    std::mutex theta_mutex;
    std::mutex dist_mutex;
    int theta_state = 0;  // 0 unknown, 1 available, 2 failed
  };
  mutable std::unique_ptr<SyncState> sync_;
  mutable std::string theta_error_;
  mutable std::vector<ThetaClass> classes_;
  mutable std::vector<int> edge_class_;
  mutable std::vector<Bits> sigs_;
  mutable std::unordered_map<Bits, int, BitsHash> sig_index_;
  mutable int dim_ = -1;

  mutable std::unordered_map<int, std::shared_ptr<const std::vector<int>>>
      dist_cache_;
};

}  // namespace cubemedian
