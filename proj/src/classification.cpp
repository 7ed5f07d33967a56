#include "cubemedian/classification.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cubemedian/errors.hpp"

namespace cubemedian {

std::string VirtualBasis::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    os << (i ? ", (" : "(");
    for (std::size_t j = 0; j < vectors[i].size(); ++j)
      os << (j ? "," : "") << vectors[i][j];
    os << ")";
  }
  os << "}";
  return os.str();
}

VirtualBasis virtual_basis_of_matrix(const MatQ& a) {
  if (a.rows != a.cols) throw InputError("matrix must be square");
  if (!a.is_integer()) throw InputError("matrix must be integral");
  if (a.det().is_zero()) throw InputError("matrix must be nonsingular");
  MatQ adj = a.adjugate();
  VirtualBasis vb;
  vb.n = a.rows;
  for (int c = 0; c < a.cols; ++c) {
    VecQ col(a.rows);
    for (int r = 0; r < a.rows; ++r) col[r] = adj.at(r, c);
    vb.vectors.push_back(primitive_integer_vector(col));
  }
  std::sort(vb.vectors.begin(), vb.vectors.end());
  return vb;
}

VirtualBasis pgl_act(const MatQ& a, const VirtualBasis& vb) {
  if (a.rows != vb.n || a.cols != vb.n)
    throw InputError("matrix/basis dimension mismatch");
  if (a.det().is_zero()) throw InputError("matrix must be nonsingular");
  VirtualBasis out;
  out.n = vb.n;
  for (const auto& v : vb.vectors) {
    VecQ x(vb.n);
    for (int i = 0; i < vb.n; ++i) x[i] = Rat(v[i]);
    out.vectors.push_back(primitive_integer_vector(mat_vec(a, x)));
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

// ---- products of infinite dihedrals ----

namespace {

std::string mat_key(const MatQ& m) {
  std::string s;
  for (const auto& r : m.a) s += r.str() + ";";
  return s;
}

}  // namespace

DinfStructure dinf_classify(const std::vector<MatQ>& images) {
  int nf = (int)images.size();
  if (nf == 0) throw InputError("no reflection images given");
  int n = images[0].rows;
  for (const auto& m : images) {
    if (m.rows != n || m.cols != n)
      throw InputError("images must share one dimension");
    if (!m.is_signed_permutation())
      throw InputError("image is not a signed permutation matrix");
    if (!(m * m).is_identity())
      throw InputError("image does not have order <= 2");
  }
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j)
      if (!(images[i] * images[j] == images[j] * images[i]))
        throw InputError("images do not commute");
  // elementary abelian of rank nf: all subset products distinct
  {
    std::set<std::string> prods;
    for (int mask = 0; mask < (1 << nf); ++mask) {
      MatQ p = MatQ::identity(n);
      for (int i = 0; i < nf; ++i)
        if (mask & (1 << i)) p = p * images[i];
      prods.insert(mat_key(p));
    }
    if ((int)prods.size() != (1 << nf))
      throw InputError("images do not generate an elementary abelian group "
                       "of full rank");
  }

  auto perm_of = [&](const MatQ& m) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!m.at(i, j).is_zero()) p[j] = i;
    return p;
  };

  // coordinate orbits under the underlying permutations
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<std::vector<int>> perms;
  for (const auto& m : images) {
    perms.push_back(perm_of(m));
    for (int i = 0; i < n; ++i) uf[find(i)] = find(perms.back()[i]);
  }
  std::map<int, std::vector<int>> orbits;
  for (int i = 0; i < n; ++i) orbits[find(i)].push_back(i);

  DinfStructure out;
  out.n = nf;
  std::vector<char> in_pair(nf, 0);
  for (const auto& [root, orb] : orbits) {
    if (orb.size() == 1) {
      out.coordinate_singletons.push_back(orb[0]);
      continue;
    }
    if (orb.size() != 2)
      throw InputError("images do not block-diagonalize into 1x1 and 2x2 "
                       "blocks");
    out.coordinate_pairs.emplace_back(orb[0], orb[1]);
    std::vector<int> movers;
    for (int i = 0; i < nf; ++i)
      if (perms[i][orb[0]] == orb[1]) movers.push_back(i);
    if (movers.size() != 2)
      throw InputError("a rotated block is not shared by exactly two "
                       "reflections");
    for (int i : movers)
      if (in_pair[i])
        throw InputError("a reflection swaps more than one block");
    in_pair[movers[0]] = in_pair[movers[1]] = 1;
    out.factor_pairs.emplace_back(movers[0], movers[1]);
  }
  for (int i = 0; i < nf; ++i)
    if (!in_pair[i]) out.factor_singletons.push_back(i);
  if (2 * out.k() > nf)
    throw StructuralError("more rotated pairs than factors allow");
  return out;
}

// ---- loose and bonded squares ----

std::vector<std::array<int, 4>> induced_squares(const DefiningGraph& g) {
  std::vector<std::array<int, 4>> out;
  int n = g.n();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          int vs[4] = {a, b, c, d};
          // three pairings of the 4-set into opposite pairs
          static const int cyc[3][4] = {{0, 1, 2, 3}, {0, 1, 3, 2},
                                        {0, 2, 1, 3}};
          for (const auto& p : cyc) {
            int w[4] = {vs[p[0]], vs[p[1]], vs[p[2]], vs[p[3]]};
            bool edges = g.adjacent(w[0], w[1]) && g.adjacent(w[1], w[2]) &&
                         g.adjacent(w[2], w[3]) && g.adjacent(w[3], w[0]);
            bool chords = g.adjacent(w[0], w[2]) || g.adjacent(w[1], w[3]);
            if (edges && !chords) out.push_back({w[0], w[1], w[2], w[3]});
          }
        }
  return out;
}


namespace {

struct SquareTables {
  int n = 0;
  std::vector<char> va, clique;          // per subset mask
  std::vector<unsigned> square_masks;    // vertex sets of induced squares
  std::vector<std::array<int, 4>> squares;
  std::vector<unsigned> va_maximal, hyper_maximal;
};

SquareTables square_tables(const DefiningGraph& g) {
  int n = g.n();
  if (n > 16) throw InputError("square sweep supports up to 16 vertices");
  SquareTables t;
  t.n = n;
  unsigned total = 1u << n;
  std::vector<unsigned> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.adjacent(i, j)) adj[i] |= 1u << j;
  t.va.assign(total, 0);
  t.clique.assign(total, 0);
  std::vector<char> hyper(total, 0);
  for (unsigned s = 1; s < total; ++s) {
    bool va_ok = true, cl = true, hy = true;
    for (int v = 0; v < n; ++v) {
      if (!(s & (1u << v))) continue;
      int nonadj = std::popcount(s & ~adj[v] & ~(1u << v));
      if (nonadj > 1) va_ok = false;
      if (nonadj != 1) hy = false;
      if (nonadj > 0) cl = false;
    }
    t.va[s] = va_ok;
    t.clique[s] = cl;
    hyper[s] = hy;
  }
  t.clique[0] = 1;
  t.va[0] = 1;
  for (const auto& sq : induced_squares(g)) {
    unsigned m = 0;
    for (int v : sq) m |= 1u << v;
    t.squares.push_back(sq);
    t.square_masks.push_back(m);
  }
  for (unsigned s = 1; s < total; ++s) {
    if (t.va[s]) {
      // virtually abelian subsets grow one vertex at a time
      bool top = true;
      for (int v = 0; v < n && top; ++v)
        if (!(s & (1u << v)) && t.va[s | (1u << v)]) top = false;
      if (top) t.va_maximal.push_back(s);
    }
    if (hyper[s]) {
      // hyperoctahedra grow by non-adjacent pairs
      bool top = true;
      for (int a = 0; a < n && top; ++a) {
        if (s & (1u << a)) continue;
        for (int b = a + 1; b < n && top; ++b) {
          if (s & (1u << b)) continue;
          if (hyper[s | (1u << a) | (1u << b)]) top = false;
        }
      }
      if (top) t.hyper_maximal.push_back(s);
    }
  }
  return t;
}

SquareClassification classify_square_with(const SquareTables& t,
                                          std::size_t idx) {
  unsigned delta = t.square_masks[idx];
  SquareClassification out;
  out.square = t.squares[idx];
  out.verdicts[0] = true;
  for (unsigned lam : t.va_maximal) {
    if ((delta & lam) == delta) continue;
    if (!t.clique[delta & lam]) out.verdicts[0] = false;
  }
  out.verdicts[1] = true;
  for (unsigned lam : t.hyper_maximal) {
    if ((delta & lam) == delta) continue;
    if (!t.clique[delta & lam]) out.verdicts[1] = false;
  }
  out.verdicts[2] = true;
  out.verdicts[3] = true;
  for (unsigned other : t.square_masks) {
    if (!t.va[delta | other] && !t.clique[delta & other])
      out.verdicts[2] = false;
    if (std::popcount(delta & other) == 3) out.verdicts[3] = false;
  }
  for (int i = 1; i < 4; ++i)
    if (out.verdicts[i] != out.verdicts[0])
      throw StructuralError("loose-square conditions disagree");
  out.loose = out.verdicts[0];
  return out;
}

}  // namespace

std::vector<SquareClassification> classify_all_squares(
    const DefiningGraph& g) {
  SquareTables t = square_tables(g);
  std::vector<SquareClassification> out;
  for (std::size_t i = 0; i < t.squares.size(); ++i)
    out.push_back(classify_square_with(t, i));
  return out;
}

SquareClassification loose_square(const DefiningGraph& g,
                                  const std::array<int, 4>& cycle) {
  for (int i = 0; i < 4; ++i) {
    if (!g.adjacent(cycle[i], cycle[(i + 1) % 4]))
      throw InputError("input is not a 4-cycle");
  }
  if (g.adjacent(cycle[0], cycle[2]) || g.adjacent(cycle[1], cycle[3]))
    throw InputError("input 4-cycle is not induced");
  SquareTables t = square_tables(g);
  for (std::size_t i = 0; i < t.squares.size(); ++i) {
    unsigned m = 0;
    for (int v : cycle) m |= 1u << v;
    if (t.square_masks[i] == m) {
      // orientations may differ; keep the caller's cycle
      SquareClassification res = classify_square_with(t, i);
      res.square = cycle;
      return res;
    }
  }
  throw InputError("cycle not found among induced squares");
}

// ---- kappa and twists ----

namespace {

void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   const std::vector<std::uint64_t>& adj,
                   std::vector<std::uint64_t>& out) {
  if (!p && !x) {
    out.push_back(r);
    return;
  }
  std::uint64_t pivot_set = p | x;
  int pivot = std::countr_zero(pivot_set);
  std::uint64_t cand = p & ~adj[pivot];
  while (cand) {
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    std::uint64_t vb = std::uint64_t(1) << v;
    bron_kerbosch(r | vb, p & adj[v], x & adj[v], adj, out);
    p &= ~vb;
    x |= vb;
  }
}

}  // namespace

std::vector<int> kappa(const DefiningGraph& g, int v) {
  int n = g.n();
  if (n > 64) throw InputError("graph too large for clique enumeration");
  std::vector<std::uint64_t> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.adjacent(i, j)) adj[i] |= std::uint64_t(1) << j;
  std::vector<std::uint64_t> cliques;
  std::uint64_t all = n == 64 ? ~std::uint64_t(0)
                              : ((std::uint64_t(1) << n) - 1);
  bron_kerbosch(0, all, 0, adj, cliques);

  std::uint64_t inter = all;
  for (auto c : cliques)
    if (c & (std::uint64_t(1) << v)) inter &= c;
  std::vector<int> by_cliques;
  for (int i = 0; i < n; ++i)
    if (inter & (std::uint64_t(1) << i)) by_cliques.push_back(i);

  std::vector<int> by_stars;
  Bits sv = g.star(v);
  for (int w = 0; w < n; ++w)
    if (sv.is_subset_of(g.star(w))) by_stars.push_back(w);

  if (by_cliques != by_stars)
    throw StructuralError("kappa formulas disagree");
  return by_cliques;
}

std::vector<std::pair<int, int>> twist_pairs(const DefiningGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < g.n(); ++v)
    for (int w = 0; w < g.n(); ++w) {
      if (v == w) continue;
      if (g.star(v).is_subset_of(g.star(w))) out.emplace_back(v, w);
    }
  return out;
}

bool is_twistless(const DefiningGraph& g) { return twist_pairs(g).empty(); }

// ---- Richardson involutions ----

namespace {

/// Finite irreducible Coxeter components with nontrivial centre, recognized
/// by diagram patterns at ranks <= 4. Returns: 1 yes, 0 no (finite without
/// centre), -1 infinite or unrecognized.
int admissible_component(const GroupPresentation& cox,
                         const std::vector<int>& comp) {
  int r = (int)comp.size();
  auto m = [&](int i, int j) { return cox.coxeter_m(comp[i], comp[j]); };
  if (r == 1) return 1;  // A1
  if (r == 2) {
    int v = m(0, 1);
    if (v == 0) return -1;
    return v % 2 == 0 ? 1 : 0;  // I2(m): centre iff m even
  }
  // Collect the diagram edges (entries not equal to 2).
  std::vector<std::array<int, 3>> diag;  // (i, j, m)
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (m(i, j) != 2) diag.push_back({i, j, m(i, j)});
  for (const auto& e : diag)
    if (e[2] == 0) return -1;
  std::vector<int> deg(r, 0);
  for (const auto& e : diag) {
    ++deg[e[0]];
    ++deg[e[1]];
  }
  if (r == 3) {
    if (diag.size() != 2) return -1;  // triangle or disconnected-impossible
    std::multiset<int> labels{diag[0][2], diag[1][2]};
    if (labels == std::multiset<int>{3, 3}) return 0;   // A3
    if (labels == std::multiset<int>{3, 4}) return 1;   // B3
    if (labels == std::multiset<int>{3, 5}) return 1;   // H3
    return -1;
  }
  if (r == 4) {
    if (diag.size() != 3) return -1;
    int maxdeg = *std::max_element(deg.begin(), deg.end());
    if (maxdeg == 3) {
      for (const auto& e : diag)
        if (e[2] != 3) return -1;
      return 1;  // D4
    }
    // path: order labels along it
    std::multiset<int> labels;
    for (const auto& e : diag) labels.insert(e[2]);
    if (labels == std::multiset<int>{3, 3, 3}) return 0;  // A4
    if (labels == std::multiset<int>{3, 3, 4}) {
      // B4 when the 4 is at an end, F4 when in the middle; both have centre
      return 1;
    }
    if (labels == std::multiset<int>{3, 3, 5}) {
      // H4 needs the 5 at an end; (3,5,3) in the middle is infinite
      for (const auto& e : diag)
        if (e[2] == 5 && deg[e[0]] == 2 && deg[e[1]] == 2) return -1;
      return 1;
    }
    if (labels == std::multiset<int>{3, 4, 3}) return 1;  // F4 (same multiset)
    return -1;
  }
  return -1;
}

}  // namespace

RichardsonReport richardson_check(const GroupPresentation& coxeter,
                                  long long budget) {
  if (coxeter.kind() != Kind::Coxeter)
    throw InputError("richardson_check expects a Coxeter presentation");
  RichardsonReport rep;
  GroupPresentation pres = coxeter;
  pres.set_vertex_budget(budget);
  EnumeratedBall all;
  try {
    all = enumerate_ball(pres, 1 << 20);
  } catch (const ResourceError&) {
    rep.enumeration_complete = false;
    rep.note = "group enumeration exceeded the budget";
    return rep;
  }
  rep.enumeration_complete = true;
  rep.group_order = (long long)all.elements.size();

  std::vector<int> involutions;
  for (int i = 1; i < (int)all.elements.size(); ++i)
    if (pres.concat(all.elements[i], all.elements[i]).empty())
      involutions.push_back(i);

  int ng = pres.generator_count();
  // certified[element] = (J, conjugator)
  std::map<std::string, std::pair<std::vector<std::string>, Word>> certified;
  bool skipped_unknown = false;
  for (int mask = 1; mask < (1 << ng); ++mask) {
    std::vector<int> gens;
    for (int i = 0; i < ng; ++i)
      if (mask & (1 << i)) gens.push_back(i);
    // split into diagram components
    std::vector<int> comp_of(gens.size(), -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (comp_of[i] >= 0) continue;
      comp_of[i] = ncomp;
      std::vector<std::size_t> stack{i};
      while (!stack.empty()) {
        auto a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < gens.size(); ++b)
          if (comp_of[b] < 0 && pres.coxeter_m(gens[a], gens[b]) != 2) {
            comp_of[b] = ncomp;
            stack.push_back(b);
          }
      }
      ++ncomp;
    }
    bool admissible = true;
    for (int c = 0; c < ncomp; ++c) {
      std::vector<int> comp;
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (comp_of[i] == c) comp.push_back(gens[i]);
      int verdict = admissible_component(pres, comp);
      if (verdict == -1 && (int)comp.size() > 4) skipped_unknown = true;
      if (verdict != 1) admissible = false;
    }
    if (!admissible) continue;

    // longest element of W_J inside the full enumeration
    GroupPresentation sub = pres.special_subgroup_presentation(gens);
    EnumeratedBall subball;
    try {
      subball = enumerate_ball(sub, 1 << 20);
    } catch (const ResourceError&) {
      skipped_unknown = true;
      continue;
    }
    long long best = -1;
    int besti = -1, ties = 0;
    for (int i = 0; i < (int)subball.elements.size(); ++i) {
      long long l = sub.word_length(subball.elements[i]);
      if (l > best) {
        best = l;
        besti = i;
        ties = 1;
      } else if (l == best) {
        ++ties;
      }
    }
    if (ties != 1)
      throw StructuralError("longest element of a finite parabolic is not "
                            "unique");
    Word wj;
    for (const auto& s : subball.elements[besti].syllables)
      wj.syllables.push_back({gens[s.gen], s.exp});
    wj = pres.normalize(wj);

    std::vector<std::string> jlabels;
    for (int gidx : gens) jlabels.push_back(pres.generator_label(gidx));

    // conjugacy orbit, remembering conjugators
    std::map<std::string, Word> orbit;
    std::deque<std::pair<Word, Word>> q;  // (element, conjugator)
    orbit.emplace(pres.word_str(wj), Word{});
    q.emplace_back(wj, Word{});
    while (!q.empty()) {
      auto [el, conj] = q.front();
      q.pop_front();
      std::string key = pres.word_str(el);
      if (!certified.count(key)) certified.emplace(key, std::make_pair(jlabels, conj));
      for (int s = 0; s < ng; ++s) {
        Word g{{{s, 1}}};
        Word el2 = pres.conjugate(g, el);
        std::string k2 = pres.word_str(el2);
        if (orbit.count(k2)) continue;
        Word conj2 = pres.concat(g, conj);
        orbit.emplace(k2, conj2);
        q.emplace_back(el2, conj2);
      }
    }
  }

  rep.all_certified = true;
  for (int i : involutions) {
    RichardsonEntry e;
    e.involution = all.elements[i];
    auto it = certified.find(pres.word_str(all.elements[i]));
    if (it == certified.end()) {
      rep.all_certified = false;
    } else {
      e.parabolic = it->second.first;
      e.conjugator = it->second.second;
    }
    rep.involutions.push_back(std::move(e));
  }
  if (!rep.all_certified && skipped_unknown)
    rep.note = "some components exceeded the rank-4 type table";
  return rep;
}

GroupPresentation coxeter_preset(const std::string& name) {
  auto chain = [](int rank, std::vector<int> labels) {
    std::vector<std::string> ls;
    for (int i = 0; i < rank; ++i) ls.push_back("s" + std::to_string(i + 1));
    std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
    for (int i = 0; i < rank; ++i) m[i][i] = 1;
    for (int i = 0; i + 1 < rank; ++i)
      m[i][i + 1] = m[i + 1][i] = labels[i];
    return GroupPresentation::coxeter(ls, m);
  };
  if (name == "A1") return chain(1, {});
  if (name == "A2") return chain(2, {3});
  if (name == "A3") return chain(3, {3, 3});
  if (name == "A4") return chain(4, {3, 3, 3});
  if (name == "B2") return chain(2, {4});
  if (name == "B3") return chain(3, {3, 4});
  if (name == "B4") return chain(4, {3, 3, 4});
  if (name == "F4") return chain(4, {3, 4, 3});
  if (name == "H3") return chain(3, {3, 5});
  if (name == "H4") return chain(4, {3, 3, 5});
  if (name == "D4") {
    std::vector<std::string> ls{"s1", "s2", "s3", "s4"};
    std::vector<std::vector<int>> m(4, std::vector<int>(4, 2));
    for (int i = 0; i < 4; ++i) m[i][i] = 1;
    m[0][1] = m[1][0] = 3;
    m[0][2] = m[2][0] = 3;
    m[0][3] = m[3][0] = 3;
    return GroupPresentation::coxeter(ls, m);
  }
  if (name == "333") {
    std::vector<std::string> ls{"s", "t", "u"};
    std::vector<std::vector<int>> m{{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
    return GroupPresentation::coxeter(ls, m);
  }
  if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
    int mm = std::stoi(name.substr(3, name.size() - 4));
    return chain(2, {mm});
  }
  throw InputError("unknown coxeter preset: " + name);
}

}  // namespace cubemedian
