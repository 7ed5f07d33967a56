#include "cubemedian/defining_graph.hpp"

#include "cubemedian/errors.hpp"

namespace cubemedian {

DefiningGraph::DefiningGraph(
    std::vector<std::string> vertices,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : labels_(std::move(vertices)) {
  for (int i = 0; i < (int)labels_.size(); ++i) {
    if (index_.count(labels_[i]))
      throw InputError("duplicate vertex label: " + labels_[i]);
    index_[labels_[i]] = i;
  }
  adj_.assign(labels_.size(), Bits((int)labels_.size()));
  for (const auto& [a, b] : edges) {
    int u = index(a), v = index(b);
    if (u == v) throw InputError("loop edge at vertex: " + a);
    if (adj_[u].test(v)) throw InputError("duplicate edge: " + a + "-" + b);
    adj_[u].set(v);
    adj_[v].set(u);
  }
}

int DefiningGraph::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InputError("unknown generator label: " + label);
  return it->second;
}

bool DefiningGraph::has_label(const std::string& label) const {
  return index_.count(label) > 0;
}

Bits DefiningGraph::star(int v) const {
  Bits s = adj_[v];
  s.set(v);
  return s;
}

bool DefiningGraph::is_clique(const Bits& subset) const {
  auto vs = subset.to_vector();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!adjacent(vs[i], vs[j])) return false;
  return true;
}

int DefiningGraph::edge_count() const {
  int c = 0;
  for (int v = 0; v < n(); ++v) c += adj_[v].count();
  return c / 2;
}

std::vector<std::pair<int, int>> DefiningGraph::edges() const {
  std::vector<std::pair<int, int>> r;
  for (int u = 0; u < n(); ++u)
    adj_[u].for_each([&](int v) {
      if (u < v) r.emplace_back(u, v);
    });
  return r;
}

namespace {
std::vector<std::string> make_labels(int n, const std::string& prefix) {
  std::vector<std::string> ls;
  for (int i = 0; i < n; ++i) ls.push_back(prefix + std::to_string(i + 1));
  return ls;
}
}  // namespace

DefiningGraph DefiningGraph::cycle(int n, const std::string& prefix) {
  auto ls = make_labels(n, prefix);
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(ls[i], ls[(i + 1) % n]);
  if (n == 2) es.pop_back();  // avoid the duplicate edge
  return DefiningGraph(ls, es);
}

DefiningGraph DefiningGraph::path(int n, const std::string& prefix) {
  auto ls = make_labels(n, prefix);
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(ls[i], ls[i + 1]);
  return DefiningGraph(ls, es);
}

DefiningGraph DefiningGraph::complete(int n, const std::string& prefix) {
  auto ls = make_labels(n, prefix);
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(ls[i], ls[j]);
  return DefiningGraph(ls, es);
}

DefiningGraph DefiningGraph::edgeless(int n, const std::string& prefix) {
  return DefiningGraph(make_labels(n, prefix), {});
}

}  // namespace cubemedian
