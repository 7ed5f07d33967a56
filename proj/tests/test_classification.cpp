#include <doctest.h>

#include <random>

#include "cubemedian/classification.hpp"
#include "cubemedian/errors.hpp"
#include "support.hpp"

using namespace cubemedian;
using namespace testsupport;

namespace {

MatQ int_matrix(std::vector<std::vector<long long>> rows) {
  MatQ m((int)rows.size(), (int)rows[0].size());
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = Rat(rows[r][c]);
  return m;
}

}  // namespace

TEST_CASE("virtual bases of matrices") {
  SUBCASE("identity gives the standard basis") {
    auto vb = virtual_basis_of_matrix(MatQ::identity(3));
    CHECK(vb.vectors == std::vector<std::vector<long long>>{
                            {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  }
  SUBCASE("the paper's 2x2 example") {
    auto vb = virtual_basis_of_matrix(int_matrix({{1, 1}, {1, -1}}));
    CHECK(vb.vectors ==
          std::vector<std::vector<long long>>{{1, -1}, {1, 1}});
  }
  SUBCASE("scaling is absorbed by primitivity") {
    auto vb = virtual_basis_of_matrix(int_matrix({{2, 0}, {0, 3}}));
    CHECK(vb.vectors == std::vector<std::vector<long long>>{{0, 1}, {1, 0}});
    // oracle: brute force over primitive vectors with axis-parallel image
    MatQ a = int_matrix({{2, 0}, {0, 3}});
    std::set<std::vector<long long>> expect;
    for (long long x = -5; x <= 5; ++x)
      for (long long y = -5; y <= 5; ++y) {
        if (std::gcd(std::abs(x), std::abs(y)) != 1) continue;
        long long ix = 2 * x, iy = 3 * y;
        if ((ix == 0) == (iy == 0)) continue;  // want exactly one zero
        VecQ v{Rat(x), Rat(y)};
        expect.insert(primitive_integer_vector(v));
      }
    std::set<std::vector<long long>> got(vb.vectors.begin(),
                                         vb.vectors.end());
    CHECK(got == expect);
  }
  SUBCASE("projective invariance under integer scaling") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      MatQ a(2, 2);
      do {
        for (auto& x : a.a) x = Rat((long long)(rng() % 9) - 4);
      } while (a.det().is_zero());
      for (long long c : {2, -1, 3}) {
        MatQ scaled = a;
        for (auto& x : scaled.a) x = x * Rat(c);
        CHECK(virtual_basis_of_matrix(a) == virtual_basis_of_matrix(scaled));
      }
    }
  }
}

TEST_CASE("pgl action on virtual bases") {
  VirtualBasis std2;
  std2.n = 2;
  std2.vectors = {{0, 1}, {1, 0}};
  SUBCASE("identity fixes") {
    CHECK(pgl_act(MatQ::identity(2), std2) == std2);
  }
  SUBCASE("scaling acts trivially") {
    MatQ a = int_matrix({{1, 2}, {3, 5}});
    MatQ a2 = int_matrix({{2, 4}, {6, 10}});
    CHECK(pgl_act(a, std2) == pgl_act(a2, std2));
  }
  SUBCASE("a shear moves one direction") {
    auto vb = pgl_act(int_matrix({{1, 1}, {0, 1}}), std2);
    CHECK(vb.vectors ==
          std::vector<std::vector<long long>>{{1, 0}, {1, 1}});
  }
  SUBCASE("the diagonal normalizer stabilizes the standard basis") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
      // random signed permutation times a nonzero diagonal
      MatQ m(2, 2);
      bool flip = rng() & 1;
      long long d0 = (long long)(rng() % 5) + 1;
      long long d1 = -((long long)(rng() % 5) + 1);
      if (flip) {
        m.at(0, 1) = Rat(d0);
        m.at(1, 0) = Rat(d1);
      } else {
        m.at(0, 0) = Rat(d0);
        m.at(1, 1) = Rat(d1);
      }
      CHECK(pgl_act(m, std2) == std2);
    }
  }
}

TEST_CASE("dinf structures") {
  MatQ swap = int_matrix({{0, 1}, {1, 0}});
  MatQ nswap = int_matrix({{0, -1}, {-1, 0}});
  SUBCASE("standard structure: two singletons") {
    auto s = dinf_classify(
        {int_matrix({{-1, 0}, {0, 1}}), int_matrix({{1, 0}, {0, -1}})});
    CHECK(s.k() == 0);
    CHECK(s.factor_singletons.size() == 2);
  }
  SUBCASE("rotated structure: one pair") {
    auto s = dinf_classify({swap, nswap});
    CHECK(s.k() == 1);
    CHECK(s.factor_pairs[0] == std::pair<int, int>{0, 1});
  }
  SUBCASE("rank one is always a singleton") {
    auto s = dinf_classify({int_matrix({{-1}})});
    CHECK(s.k() == 0);
    CHECK(s.factor_singletons.size() == 1);
  }
  SUBCASE("mixed 4-dimensional structure") {
    MatQ a(4, 4), b(4, 4), c(4, 4), d(4, 4);
    // block swap on coordinates 0,1; signs on 2 and 3
    auto embed = [&](MatQ& m, const MatQ& blk) {
      m = MatQ::identity(4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = blk.at(i, j);
      m.at(2, 2) = Rat(1);
      m.at(3, 3) = Rat(1);
    };
    embed(a, swap);
    embed(b, nswap);
    c = MatQ::identity(4);
    c.at(2, 2) = Rat(-1);
    d = MatQ::identity(4);
    d.at(3, 3) = Rat(-1);
    auto s = dinf_classify({a, b, c, d});
    CHECK(s.k() == 1);
    CHECK(s.factor_singletons == std::vector<int>{2, 3});
  }
  SUBCASE("preconditions bite") {
    CHECK_THROWS_AS(dinf_classify({int_matrix({{0, 1}, {-1, 0}})}),
                    InputError);  // order 4
    CHECK_THROWS_AS(
        dinf_classify({int_matrix({{-1, 0}, {0, 1}}),
                       int_matrix({{-1, 0}, {0, 1}})}),
        InputError);  // not independent
  }
}

TEST_CASE("loose squares") {
  SUBCASE("a plain 4-cycle is loose") {
    auto g = DefiningGraph::cycle(4, "c");
    auto res = loose_square(g, {0, 1, 2, 3});
    CHECK(res.loose);
    for (bool v : res.verdicts) CHECK(v);
  }
  SUBCASE("an extra vertex over a,c bonds both squares") {
    DefiningGraph g({"a", "b", "c", "d", "x"},
                    {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"},
                     {"x", "a"}, {"x", "c"}});
    auto res = loose_square(g, {0, 1, 2, 3});
    CHECK(!res.loose);
    auto res2 = loose_square(g, {0, 1, 2, 4});
    CHECK(!res2.loose);
  }
  SUBCASE("octahedron squares are loose") {
    // complement of three disjoint edges
    std::vector<std::string> vs{"o1", "o2", "o3", "o4", "o5", "o6"};
    std::vector<std::pair<std::string, std::string>> es;
    auto opposite = [](int i, int j) {
      return (i / 2 == j / 2);
    };
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        if (!opposite(i, j)) es.emplace_back(vs[i], vs[j]);
    DefiningGraph g(vs, es);
    auto squares = induced_squares(g);
    CHECK(!squares.empty());
    for (const auto& sq : squares) CHECK(loose_square(g, sq).loose);
  }
  SUBCASE("four conditions agree on every 5-vertex graph") {
    for (unsigned long long mask = 0; mask < (1ull << 10); ++mask) {
      DefiningGraph g = graph_from_mask(5, mask);
      for (const auto& sq : induced_squares(g)) {
        auto res = loose_square(g, sq);  // throws if conditions disagree
        // independent check of condition (4)
        bool bonded4 = false;
        for (const auto& sq2 : induced_squares(g)) {
          std::set<int> a(sq.begin(), sq.end()), b(sq2.begin(), sq2.end());
          std::vector<int> inter;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(inter));
          if (inter.size() == 3) bonded4 = true;
        }
        CHECK(res.loose == !bonded4);
      }
    }
  }
}

TEST_CASE("kappa") {
  SUBCASE("complete graph: one maximal clique") {
    auto g = DefiningGraph::complete(3, "k");
    CHECK(kappa(g, 0) == std::vector<int>{0, 1, 2});
  }
  SUBCASE("hexagon: kappa is the vertex itself") {
    auto g = hexagon();
    for (int v = 0; v < 6; ++v) CHECK(kappa(g, v) == std::vector<int>{v});
  }
  SUBCASE("path: kappa of an end reaches the middle") {
    auto g = DefiningGraph::path(3, "p");  // p1 - p2 - p3
    CHECK(kappa(g, 0) == std::vector<int>{0, 1});
    CHECK(kappa(g, 1) == std::vector<int>{1});
  }
  SUBCASE("formulas agree on random 8-vertex graphs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
      DefiningGraph g = random_graph(8, 0.45, rng);
      for (int v = 0; v < 8; ++v) kappa(g, v);  // throws on disagreement
    }
  }
}

TEST_CASE("twist pairs") {
  CHECK(is_twistless(hexagon()));
  auto g = DefiningGraph::path(3, "p");
  auto tw = twist_pairs(g);
  CHECK(tw == std::vector<std::pair<int, int>>{{0, 1}, {2, 1}});
  CHECK(is_twistless(DefiningGraph::edgeless(1, "s")));
}

TEST_CASE("richardson involutions") {
  SUBCASE("commuting pair: st is the longest element") {
    auto rep = richardson_check(coxeter_preset("I2(2)"), 100000);
    REQUIRE(rep.enumeration_complete);
    CHECK(rep.group_order == 4);
    CHECK(rep.involutions.size() == 3);
    CHECK(rep.all_certified);
    for (const auto& e : rep.involutions)
      if (e.involution.syllables.size() == 2)
        CHECK(e.parabolic.size() == 2);
  }
  SUBCASE("symmetric group S3: reflections from A1 parabolics") {
    auto rep = richardson_check(coxeter_preset("A2"), 100000);
    REQUIRE(rep.enumeration_complete);
    CHECK(rep.group_order == 6);
    CHECK(rep.involutions.size() == 3);
    CHECK(rep.all_certified);
    for (const auto& e : rep.involutions) CHECK(e.parabolic.size() == 1);
  }
  SUBCASE("B2: the rotation by pi is central and longest") {
    auto rep = richardson_check(coxeter_preset("B2"), 100000);
    REQUIRE(rep.enumeration_complete);
    CHECK(rep.group_order == 8);
    CHECK(rep.all_certified);
    bool found_center = false;
    for (const auto& e : rep.involutions)
      if (e.involution.syllables.size() == 4) {
        found_center = true;
        CHECK(e.parabolic.size() == 2);
        CHECK(e.conjugator.empty());
      }
    CHECK(found_center);
  }
  SUBCASE("A3 smoke test") {
    auto rep = richardson_check(coxeter_preset("A3"), 100000);
    REQUIRE(rep.enumeration_complete);
    CHECK(rep.group_order == 24);
    CHECK(rep.all_certified);
  }
}
