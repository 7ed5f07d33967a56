#include <doctest.h>

#include <random>

#include "cubemedian/errors.hpp"
#include "cubemedian/presentation.hpp"
#include "support.hpp"

using namespace cubemedian;
using namespace testsupport;

TEST_CASE("racg involutions cancel") {
  auto p = GroupPresentation::racg(pentagon());
  CHECK(p.normalize(p.parse_word("v1 v1")).empty());
  CHECK(p.normalize(p.parse_word("v1 v2 v2 v1")).empty());
}

TEST_CASE("coxeter braid relation gives one canonical word") {
  auto p = coxeter_preset("A2");
  Word a = p.normalize(p.parse_word("s1 s2 s1"));
  Word b = p.normalize(p.parse_word("s2 s1 s2"));
  CHECK(a == b);
  CHECK(a.syllables.size() == 3);
}

TEST_CASE("raag hexagon x1 x3 x1^-1 stays length 3") {
  auto p = GroupPresentation::raag(hexagon());
  Word w = p.normalize(p.parse_word("x1 x3 x1^-1"));
  CHECK(p.word_length(w) == 3);
  // oracle: nothing of length < 3 in the shuffle closure
  for (const auto& v : shuffle_closure(p, to_lword(w))) {
    long long len = 0;
    for (const auto& l : v) len += std::abs(l.exp);
    CHECK(len == 3);
  }
}

TEST_CASE("equal vs the shuffle-closure oracle on the pentagon") {
  auto p = GroupPresentation::racg(pentagon());
  // v1,v2 adjacent; v1,v3 not
  CHECK(p.equal(p.parse_word("v1 v2"), p.parse_word("v2 v1")));
  CHECK(!p.equal(p.parse_word("v1 v3"), p.parse_word("v3 v1")));
  CHECK(oracle_equal(p, p.parse_word("v1 v2"), p.parse_word("v2 v1")));
  CHECK(!oracle_equal(p, p.parse_word("v1 v3"), p.parse_word("v3 v1")));
  Word w = p.parse_word("v1 v4 v2");
  CHECK(p.equal(w, w));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    auto rand_word = [&](int len) {
      Word w2;
      for (int i = 0; i < len; ++i)
        w2.syllables.push_back({(int)(rng() % 5), 1});
      return w2;
    };
    Word a = rand_word(1 + (int)(rng() % 4));
    Word b = rand_word(1 + (int)(rng() % 4));
    CHECK(p.equal(a, b) == oracle_equal(p, a, b));
  }
}

TEST_CASE("normalize is idempotent and stable under relation moves") {
  auto p = GroupPresentation::racg(pentagon());
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Word w;
    int len = 1 + (int)(rng() % 8);
    for (int i = 0; i < len; ++i) w.syllables.push_back({(int)(rng() % 5), 1});
    Word n = p.normalize(w);
    CHECK(p.normalize(n) == n);
    // random walk over defining-relation moves keeps the canonical form
    LWord cur = to_lword(w);
    for (int step = 0; step < 8; ++step) {
      std::vector<LWord> moves;
      for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
        if (cur[i].gen == cur[i + 1].gen) {
          LWord v(cur.begin(), cur.begin() + i);
          v.insert(v.end(), cur.begin() + i + 2, cur.end());
          moves.push_back(v);
        } else if (p.commutes(cur[i].gen, cur[i + 1].gen)) {
          LWord v = cur;
          std::swap(v[i], v[i + 1]);
          moves.push_back(v);
        }
      }
      {
        LWord v = cur;  // insert a cancelling pair
        int g = (int)(rng() % 5);
        std::size_t pos = cur.empty() ? 0 : rng() % (cur.size() + 1);
        v.insert(v.begin() + pos, {g, 1});
        v.insert(v.begin() + pos, {g, 1});
        moves.push_back(v);
      }
      cur = moves[rng() % moves.size()];
      Word wcur;
      for (const auto& l : cur) wcur.syllables.push_back({l.gen, l.exp});
      CHECK(p.normalize(wcur) == n);
    }
  }
}

TEST_CASE("cayley balls: counts and monotone growth") {
  SUBCASE("single involution") {
    auto p = GroupPresentation::racg(DefiningGraph::edgeless(1, "s"));
    CubeBall b = cayley_ball(p, 1);
    CHECK(b.vertex_count() == 2);
    CHECK(b.edge_count() == 1);
  }
  SUBCASE("pentagon radius 2 counts 21 vertices") {
    auto p = GroupPresentation::racg(pentagon());
    CubeBall b = cayley_ball(p, 2);
    CHECK(b.vertex_count() == 21);
    // oracle: count length-2 words modulo the 5 commutations directly
    DefiningGraph g = pentagon();
    std::set<std::pair<int, int>> len2;
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) {
        if (x == y) continue;  // xx is the identity
        if (g.adjacent(x, y))
          len2.insert(std::minmax({x, y}));
        else
          len2.insert({x, y});
      }
    CHECK(b.vertex_count() == 1 + 5 + (int)len2.size());
  }
  SUBCASE("coxeter 333 radius 2 counts 1+3+6") {
    auto p = coxeter_preset("333");
    CubeBall b = cayley_ball(p, 2);
    CHECK(b.vertex_count() == 10);
  }
  SUBCASE("raag hexagon radius 1 counts 13") {
    auto p = GroupPresentation::raag(hexagon());
    CubeBall b = cayley_ball(p, 1);
    CHECK(b.vertex_count() == 13);
  }
  SUBCASE("growth is monotone with stable ids") {
    auto p = GroupPresentation::racg(pentagon());
    CubeBall b2 = cayley_ball(p, 2);
    CubeBall b3 = cayley_ball(p, 3);
    REQUIRE(b2.vertex_count() <= b3.vertex_count());
    for (int v = 0; v < b2.vertex_count(); ++v)
      CHECK(b2.label(v) == b3.label(v));
    // edges within radius 2 agree
    std::set<std::pair<int, int>> e2, e3;
    for (int e = 0; e < b2.edge_count(); ++e)
      e2.insert(std::minmax({b2.edge(e)[0], b2.edge(e)[1]}));
    for (int e = 0; e < b3.edge_count(); ++e) {
      auto [u, v] = b3.edge(e);
      if (u < b2.vertex_count() && v < b2.vertex_count())
        e3.insert(std::minmax({u, v}));
    }
    CHECK(e2 == e3);
  }
}

TEST_CASE("special coset membership via canonical support") {
  auto p = GroupPresentation::racg(pentagon());
  CHECK(p.in_special_subgroup(p.parse_word("v1 v2"), {"v1", "v2"}));
  CHECK(!p.in_special_subgroup(p.parse_word("v1 v3"), {"v1", "v2"}));
  CHECK(p.in_special_subgroup(Word{}, {}));
}

TEST_CASE("centralizers in balls") {
  SUBCASE("graph product pentagon, generator v: the star sandwich") {
    std::map<std::string, int> orders;
    for (int i = 1; i <= 5; ++i) orders["v" + std::to_string(i)] = 2;
    auto p = GroupPresentation::graph_product(pentagon(), orders);
    auto z = centralizer_in_ball(p, p.parse_word("v1"), 3);
    // lk(v1) = {v2, v5}
    std::vector<std::string> st{"v1", "v2", "v5"};
    for (const auto& w : z) CHECK(p.in_special_subgroup(w, st));
    // every lk-word of length <= 3 appears
    int lk_count = 0;
    for (const auto& w : z) {
      if (p.in_special_subgroup(w, {"v2", "v5"})) ++lk_count;
    }
    // D-infinity ball of radius 3 on two generators: 1 + 2 + 2 + 2
    CHECK(lk_count == 7);
  }
  SUBCASE("one-generator racg is abelian") {
    auto p = GroupPresentation::racg(DefiningGraph::edgeless(1, "s"));
    auto z = centralizer_in_ball(p, p.parse_word("s1"), 1);
    CHECK(z.size() == 2);
  }
  SUBCASE("coxeter 333: Z(s) within radius 3 is {1, s}") {
    auto p = coxeter_preset("333");
    auto z = centralizer_in_ball(p, p.parse_word("s"), 3);
    REQUIRE(z.size() == 2);
    CHECK(z[0].empty());
    CHECK(p.word_str(z[1]) == "s");
  }
}

TEST_CASE("graph product with all orders 2 matches the racg engine") {
  std::map<std::string, int> orders;
  for (int i = 1; i <= 5; ++i) orders["v" + std::to_string(i)] = 2;
  auto gp = GroupPresentation::graph_product(pentagon(), orders);
  auto rc = GroupPresentation::racg(pentagon());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Word w;
    int len = (int)(rng() % 7);
    for (int i = 0; i < len; ++i) w.syllables.push_back({(int)(rng() % 5), 1});
    CHECK(gp.word_str(gp.normalize(w)) == rc.word_str(rc.normalize(w)));
  }
  CubeBall a = cayley_ball(gp, 2);
  CubeBall b = cayley_ball(rc, 2);
  REQUIRE(a.vertex_count() == b.vertex_count());
  for (int v = 0; v < a.vertex_count(); ++v) CHECK(a.label(v) == b.label(v));
}

TEST_CASE("racg as coxeter produces the same canonical forms") {
  auto rc = GroupPresentation::racg(pentagon());
  auto cx = racg_as_coxeter(pentagon());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    Word w;
    int len = (int)(rng() % 6);
    for (int i = 0; i < len; ++i) w.syllables.push_back({(int)(rng() % 5), 1});
    CHECK(rc.word_str(rc.normalize(w)) == cx.word_str(cx.normalize(w)));
  }
}

TEST_CASE("errors: unknown labels and budgets") {
  auto p = GroupPresentation::racg(pentagon());
  CHECK_THROWS_AS(p.parse_word("zz"), InputError);
  {
    auto q = p;
    q.set_vertex_budget(5);
    bool threw = false;
    try {
      enumerate_ball(q, 3);
    } catch (const ResourceError& e) {
      threw = true;
      CHECK(e.reached() >= 0);  // the radius that was completed
      CHECK(e.reached() < 3);
    }
    CHECK(threw);
  }
  auto cx = coxeter_preset("333");
  cx.set_state_budget(1);
  bool threw = false;
  try {
    // long alternating word forces a closure bigger than one state
    cx.normalize(cx.parse_word("s t s u s t s u s t"));
  } catch (const ResourceError& e) {
    threw = true;
    CHECK(e.reached() >= 1);
  }
  CHECK(threw);
}
