#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubemedian/bits.hpp"

namespace cubemedian {

/// Finite simplicial graph with ordered vertex labels. Label declaration
/// order is the total order used everywhere (shortlex, canonical forms).
class DefiningGraph {
 public:
  DefiningGraph() = default;
  DefiningGraph(std::vector<std::string> vertices,
                const std::vector<std::pair<std::string, std::string>>& edges);

  int n() const { return (int)labels_.size(); }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws InputError for unknown labels.
  int index(const std::string& label) const;
  bool has_label(const std::string& label) const;

  bool adjacent(int u, int v) const { return adj_[u].test(v); }
  const Bits& neighbors(int v) const { return adj_[v]; }
  std::vector<int> link(int v) const { return adj_[v].to_vector(); }
  /// link(v) plus v itself.
  Bits star(int v) const;

  bool is_clique(const Bits& subset) const;
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  /// Convenience constructors for tests and CLI presets.
  static DefiningGraph cycle(int n, const std::string& prefix = "v");
  static DefiningGraph path(int n, const std::string& prefix = "v");
  static DefiningGraph complete(int n, const std::string& prefix = "v");
  static DefiningGraph edgeless(int n, const std::string& prefix = "v");

 private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  std::vector<Bits> adj_;
};

}  // namespace cubemedian
