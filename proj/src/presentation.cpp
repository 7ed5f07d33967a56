#include "cubemedian/presentation.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cubemedian/errors.hpp"

namespace cubemedian {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::RACG: return "RACG";
    case Kind::RAAG: return "RAAG";
    case Kind::GraphProductFinite: return "GraphProductFinite";
    case Kind::Coxeter: return "Coxeter";
  }
  return "?";
}

Kind kind_from_name(const std::string& s) {
  if (s == "RACG") return Kind::RACG;
  if (s == "RAAG") return Kind::RAAG;
  if (s == "GraphProductFinite") return Kind::GraphProductFinite;
  if (s == "Coxeter") return Kind::Coxeter;
  throw InputError("unknown presentation kind: " + s);
}

GroupPresentation GroupPresentation::racg(DefiningGraph g) {
  GroupPresentation p;
  p.kind_ = Kind::RACG;
  p.labels_ = g.labels();
  p.graph_ = std::move(g);
  p.has_graph_ = true;
  p.orders_.assign(p.labels_.size(), 2);
  for (int i = 0; i < (int)p.labels_.size(); ++i)
    p.label_index_[p.labels_[i]] = i;
  return p;
}

GroupPresentation GroupPresentation::raag(DefiningGraph g) {
  GroupPresentation p = racg(std::move(g));
  p.kind_ = Kind::RAAG;
  p.orders_.assign(p.labels_.size(), 0);
  return p;
}

GroupPresentation GroupPresentation::graph_product(
    DefiningGraph g, const std::map<std::string, int>& orders) {
  GroupPresentation p = racg(std::move(g));
  p.kind_ = Kind::GraphProductFinite;
  for (auto& [label, k] : orders) {
    if (k < 2) throw InputError("vertex order must be >= 2: " + label);
    p.orders_[p.generator_index(label)] = k;
  }
  return p;
}

GroupPresentation GroupPresentation::coxeter(
    std::vector<std::string> labels, std::vector<std::vector<int>> matrix) {
  GroupPresentation p;
  p.kind_ = Kind::Coxeter;
  p.labels_ = std::move(labels);
  for (int i = 0; i < (int)p.labels_.size(); ++i)
    p.label_index_[p.labels_[i]] = i;
  int n = (int)p.labels_.size();
  if ((int)matrix.size() != n)
    throw InputError("coxeter matrix size mismatch");
  for (int i = 0; i < n; ++i) {
    if ((int)matrix[i].size() != n)
      throw InputError("coxeter matrix is not square");
    if (matrix[i][i] != 1) throw InputError("coxeter matrix diagonal must be 1");
    for (int j = 0; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i])
        throw InputError("coxeter matrix must be symmetric");
      if (i != j && matrix[i][j] != 0 && matrix[i][j] < 2)
        throw InputError("off-diagonal coxeter entries are >= 2 or 0 (= inf)");
    }
  }
  p.cox_ = std::move(matrix);
  p.orders_.assign(n, 2);
  return p;
}

int GroupPresentation::generator_index(const std::string& label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end())
    throw InputError("unknown generator label: " + label);
  return it->second;
}

const DefiningGraph& GroupPresentation::graph() const {
  if (!has_graph_)
    throw InputError("presentation kind has no defining graph");
  return graph_;
}

int GroupPresentation::order(int gen) const { return orders_[gen]; }

bool GroupPresentation::commutes(int i, int j) const {
  if (i == j) return true;
  if (kind_ == Kind::Coxeter) return cox_[i][j] == 2;
  return graph_.adjacent(i, j);
}

int GroupPresentation::coxeter_m(int i, int j) const {
  if (kind_ == Kind::Coxeter) return cox_[i][j];
  if (kind_ == Kind::RACG) {
    if (i == j) return 1;
    return graph_.adjacent(i, j) ? 2 : 0;
  }
  throw InputError("coxeter matrix undefined for this presentation kind");
}

Word GroupPresentation::parse_word(const std::string& s) const {
  Word w;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    long long e = 1;
    std::string lab = tok;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      lab = tok.substr(0, caret);
      try {
        e = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw InputError("bad exponent in token: " + tok);
      }
    }
    w.syllables.push_back({generator_index(lab), e});
  }
  return w;
}

std::string GroupPresentation::word_str(const Word& w) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : w.syllables) {
    if (!first) os << ' ';
    first = false;
    os << labels_[s.gen];
    if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

namespace {

long long reduce_exp(long long e, int order) {
  if (order == 0) return e;
  e %= order;
  if (e < 0) e += order;
  return e;
}

}  // namespace

Word GroupPresentation::normalize_product_kind(const Word& w) const {
  std::vector<Syllable> heap;
  auto push = [&](int g, long long e) {
    e = reduce_exp(e, orders_[g]);
    if (e == 0) return;
    for (int i = (int)heap.size() - 1; i >= 0; --i) {
      if (heap[i].gen == g) {
        long long m = reduce_exp(heap[i].exp + e, orders_[g]);
        if (m == 0)
          heap.erase(heap.begin() + i);
        else
          heap[i].exp = m;
        return;
      }
      if (!commutes(heap[i].gen, g)) break;
    }
    heap.push_back({g, e});
  };
  for (const auto& s : w.syllables) {
    if (s.gen < 0 || s.gen >= generator_count())
      throw InputError("syllable generator out of range");
    push(s.gen, s.exp);
  }

  // Lexicographically least linear extension of the syllable dependencies.
  int k = (int)heap.size();
  std::vector<char> used(k, 0);
  Word out;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    for (int i = 0; i < k; ++i) {
      if (used[i]) continue;
      bool avail = true;
      for (int j = 0; j < i && avail; ++j) {
        if (used[j]) continue;
        if (heap[j].gen == heap[i].gen || !commutes(heap[j].gen, heap[i].gen))
          avail = false;
      }
      if (avail && (best < 0 || heap[i].gen < heap[best].gen)) best = i;
    }
    out.syllables.push_back(heap[best]);
    used[best] = 1;
  }
  return out;
}

std::vector<int> GroupPresentation::coxeter_canonical(
    std::vector<int> letters) const {
  auto free_cancel = [](std::vector<int> u) {
    std::vector<int> r;
    for (int x : u) {
      if (!r.empty() && r.back() == x)
        r.pop_back();
      else
        r.push_back(x);
    }
    return r;
  };
  auto pack = [](const std::vector<int>& u) {
    std::string s;
    s.reserve(u.size());
    for (int x : u) s.push_back((char)x);
    return s;
  };

  std::vector<int> w = free_cancel(std::move(letters));
  long long states = 0;
  std::vector<int> best = w;
  bool shortened = true;
  while (shortened) {
    shortened = false;
    best = w;
    std::unordered_set<std::string> visited{pack(w)};
    std::queue<std::vector<int>> q;
    q.push(w);
    while (!q.empty() && !shortened) {
      std::vector<int> u = q.front();
      q.pop();
      for (int i = 0; i + 1 < (int)u.size() && !shortened; ++i) {
        int s = u[i], t = u[i + 1];
        if (s == t) continue;  // free cancellation handled below on new words
        int m = cox_[s][t];
        if (m == 0 || i + m > (int)u.size()) continue;
        bool alt = true;
        for (int j = 0; j < m && alt; ++j)
          if (u[i + j] != (j % 2 == 0 ? s : t)) alt = false;
        if (!alt) continue;
        std::vector<int> v = u;
        for (int j = 0; j < m; ++j) v[i + j] = (j % 2 == 0 ? t : s);
        bool cancels = false;
        for (std::size_t j = 0; j + 1 < v.size(); ++j)
          if (v[j] == v[j + 1]) cancels = true;
        if (cancels) {
          w = free_cancel(std::move(v));
          shortened = true;
          break;
        }
        auto key = pack(v);
        if (visited.count(key)) continue;
        if (++states > state_budget_) {
          std::ostringstream os;
          os << "coxeter braid closure exceeded the state budget; best "
                "representative so far:";
          for (int x : best) os << ' ' << labels_[x];
          throw ResourceError(os.str(), states);
        }
        visited.insert(std::move(key));
        if (v < best) best = v;
        q.push(std::move(v));
      }
    }
  }
  return best;
}

Word GroupPresentation::normalize(const Word& w) const {
  if (kind_ != Kind::Coxeter) return normalize_product_kind(w);
  std::vector<int> letters;
  for (const auto& s : w.syllables) {
    if (s.gen < 0 || s.gen >= generator_count())
      throw InputError("syllable generator out of range");
    if (reduce_exp(s.exp, 2) == 1) letters.push_back(s.gen);
  }
  auto canon = coxeter_canonical(std::move(letters));
  Word out;
  for (int x : canon) out.syllables.push_back({x, 1});
  return out;
}

bool GroupPresentation::equal(const Word& a, const Word& b) const {
  return normalize(a) == normalize(b);
}

Word GroupPresentation::concat(const Word& a, const Word& b) const {
  Word c;
  c.syllables = a.syllables;
  c.syllables.insert(c.syllables.end(), b.syllables.begin(),
                     b.syllables.end());
  return normalize(c);
}

Word GroupPresentation::inverse(const Word& w) const {
  Word r;
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    r.syllables.push_back({it->gen, -it->exp});
  return normalize(r);
}

Word GroupPresentation::conjugate(const Word& g, const Word& h) const {
  return concat(concat(g, h), inverse(g));
}

long long GroupPresentation::word_length(const Word& w) const {
  Word n = normalize(w);
  if (kind_ == Kind::RAAG) {
    long long l = 0;
    for (const auto& s : n.syllables) l += s.exp < 0 ? -s.exp : s.exp;
    return l;
  }
  return (long long)n.syllables.size();
}

std::vector<int> GroupPresentation::support(const Word& w) const {
  Word n = normalize(w);
  std::set<int> s;
  for (const auto& syl : n.syllables) s.insert(syl.gen);
  return std::vector<int>(s.begin(), s.end());
}

bool GroupPresentation::in_special_subgroup(
    const Word& w, const std::vector<std::string>& sub) const {
  std::set<int> allowed;
  for (const auto& l : sub) allowed.insert(generator_index(l));
  for (int g : support(w))
    if (!allowed.count(g)) return false;
  return true;
}

GroupPresentation GroupPresentation::special_subgroup_presentation(
    const std::vector<int>& gens) const {
  std::vector<std::string> labels;
  for (int g : gens) labels.push_back(labels_[g]);
  if (kind_ == Kind::Coxeter) {
    std::vector<std::vector<int>> m(gens.size(),
                                    std::vector<int>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j)
        m[i][j] = cox_[gens[i]][gens[j]];
    auto p = coxeter(labels, m);
    p.state_budget_ = state_budget_;
    p.vertex_budget_ = vertex_budget_;
    return p;
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (graph_.adjacent(gens[i], gens[j]))
        edges.emplace_back(labels[i], labels[j]);
  DefiningGraph g(labels, edges);
  GroupPresentation p;
  switch (kind_) {
    case Kind::RACG: p = racg(std::move(g)); break;
    case Kind::RAAG: p = raag(std::move(g)); break;
    case Kind::GraphProductFinite: {
      std::map<std::string, int> orders;
      for (std::size_t i = 0; i < gens.size(); ++i)
        orders[labels[i]] = orders_[gens[i]];
      p = graph_product(std::move(g), orders);
      break;
    }
    default: throw InputError("unreachable");
  }
  p.state_budget_ = state_budget_;
  p.vertex_budget_ = vertex_budget_;
  return p;
}

std::vector<GroupPresentation::BallGenerator>
GroupPresentation::ball_generators() const {
  std::vector<BallGenerator> gens;
  for (int g = 0; g < generator_count(); ++g) {
    switch (kind_) {
      case Kind::RACG:
      case Kind::Coxeter:
        gens.push_back({Word{{{g, 1}}}, labels_[g]});
        break;
      case Kind::RAAG:
        gens.push_back({Word{{{g, 1}}}, labels_[g]});
        gens.push_back({Word{{{g, -1}}}, labels_[g] + "^-1"});
        break;
      case Kind::GraphProductFinite:
        for (int e = 1; e < orders_[g]; ++e) {
          std::string lab = labels_[g];
          if (e != 1) lab += "^" + std::to_string(e);
          gens.push_back({Word{{{g, (long long)e}}}, lab});
        }
        break;
    }
  }
  return gens;
}

int EnumeratedBall::find(const std::string& canonical_name) const {
  auto it = index.find(canonical_name);
  return it == index.end() ? -1 : it->second;
}

EnumeratedBall enumerate_ball(const GroupPresentation& pres, int radius) {
  if (radius < 0) throw InputError("negative radius");
  EnumeratedBall ball;
  ball.radius = radius;
  auto gens = pres.ball_generators();

  auto add = [&](const Word& w, const std::string& name) {
    ball.elements.push_back(w);
    ball.names.push_back(name);
    ball.index.emplace(name, (int)ball.elements.size() - 1);
  };
  add(Word{}, "");

  std::vector<int> layer{0};
  for (int len = 1; len <= radius; ++len) {
    std::map<std::string, Word> next;
    for (int vi : layer) {
      for (const auto& g : gens) {
        Word c = pres.concat(ball.elements[vi], g.word);
        if (pres.word_length(c) != len) continue;
        std::string nm = pres.word_str(c);
        if (!ball.index.count(nm)) next.emplace(std::move(nm), std::move(c));
      }
    }
    std::vector<int> new_layer;
    for (auto& [nm, wd] : next) {
      if ((long long)ball.elements.size() >= pres.vertex_budget())
        throw ResourceError("ball enumeration exceeded the vertex budget",
                            len - 1);
      add(wd, nm);
      new_layer.push_back((int)ball.elements.size() - 1);
    }
    layer = std::move(new_layer);
    if (layer.empty()) break;  // the whole group fits in the window
  }

  // Edges: one per unordered pair {w, w g}; labelled from the endpoint
  // closer to the identity.
  std::set<std::pair<int, int>> seen;
  for (int v = 0; v < (int)ball.elements.size(); ++v) {
    for (const auto& g : gens) {
      Word c = pres.concat(ball.elements[v], g.word);
      int u = ball.find(pres.word_str(c));
      if (u < 0 || u == v) continue;
      auto key = std::minmax({v, u});
      if (seen.count({key.first, key.second})) continue;
      seen.insert({key.first, key.second});
      long long lv = pres.word_length(ball.elements[v]);
      long long lu = pres.word_length(ball.elements[u]);
      bool from_v = lv < lu || (lv == lu && v < u);
      if (from_v) {
        ball.edges.push_back({v, u});
        ball.edge_labels.push_back(g.label);
      } else {
        // label with the generator seen from the closer endpoint
        bool found = false;
        for (const auto& h : gens) {
          Word d = pres.concat(ball.elements[u], h.word);
          if (ball.find(pres.word_str(d)) == v) {
            ball.edges.push_back({u, v});
            ball.edge_labels.push_back(h.label);
            found = true;
            break;
          }
        }
        if (!found) throw StructuralError("asymmetric generator edge");
      }
    }
  }
  return ball;
}

CubeBall cayley_ball(const GroupPresentation& pres, int radius) {
  EnumeratedBall b = enumerate_ball(pres, radius);
  std::vector<std::string> labels = b.names;
  labels[0] = "1";
  return CubeBall(std::move(labels), b.edges, b.edge_labels, 0, radius,
                  WindowKind::Ball);
}

GroupPresentation racg_as_coxeter(const DefiningGraph& g) {
  int n = g.n();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        m[i][j] = 1;
      else if (g.adjacent(i, j))
        m[i][j] = 2;
    }
  return GroupPresentation::coxeter(g.labels(), m);
}

std::vector<Word> centralizer_in_ball(const GroupPresentation& pres,
                                      const Word& g, int radius) {
  EnumeratedBall b = enumerate_ball(pres, radius);
  Word gn = pres.normalize(g);
  std::vector<Word> out;
  for (const auto& h : b.elements)
    if (pres.concat(h, gn) == pres.concat(gn, h)) out.push_back(h);
  return out;
}

}  // namespace cubemedian
