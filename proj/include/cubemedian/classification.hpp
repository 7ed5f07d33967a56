#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cubemedian/defining_graph.hpp"
#include "cubemedian/presentation.hpp"
#include "cubemedian/rational.hpp"

namespace cubemedian {

/// Full-rank set of primitive integer vectors up to sign, lexicographically
/// sorted after sign normalization.
struct VirtualBasis {
  int n = 0;
  std::vector<std::vector<long long>> vectors;
  friend bool operator==(const VirtualBasis& a, const VirtualBasis& b) {
    return a.n == b.n && a.vectors == b.vectors;
  }
  std::string str() const;
};

/// The directions straightened to the axes by A: primitive forms of the
/// adjugate's columns.
VirtualBasis virtual_basis_of_matrix(const MatQ& a);

/// Projective action: each vector maps to the primitive form of its image.
VirtualBasis pgl_act(const MatQ& a, const VirtualBasis& vb);

/// Simultaneous block structure of commuting order-2 signed permutations:
/// coordinate pairs carrying a rotated 2x2 block and the two reflections
/// sharing each block.
struct DinfStructure {
  int n = 0;
  std::vector<std::pair<int, int>> coordinate_pairs;
  std::vector<int> coordinate_singletons;
  std::vector<std::pair<int, int>> factor_pairs;  // reflections per block
  std::vector<int> factor_singletons;
  int k() const { return (int)factor_pairs.size(); }
};

DinfStructure dinf_classify(const std::vector<MatQ>& images);

/// All induced 4-cycles, each listed once in cyclic order.
std::vector<std::array<int, 4>> induced_squares(const DefiningGraph& g);

/// The four equivalent loose-square conditions, evaluated independently.
struct SquareClassification {
  std::array<int, 4> square;
  std::array<bool, 4> verdicts;
  bool loose = false;
};

SquareClassification loose_square(const DefiningGraph& g,
                                  const std::array<int, 4>& cycle);

/// All squares of one graph, sharing the per-graph subset tables; this is
/// what exhaustive sweeps call.
std::vector<SquareClassification> classify_all_squares(const DefiningGraph& g);

/// Both descriptions of kappa(v): the intersection of maximal cliques
/// through v, and the vertices whose star contains St(v). Asserts agreement.
std::vector<int> kappa(const DefiningGraph& g, int v);

std::vector<std::pair<int, int>> twist_pairs(const DefiningGraph& g);
bool is_twistless(const DefiningGraph& g);

struct RichardsonEntry {
  Word involution;
  std::vector<std::string> parabolic;  // generator labels of J
  Word conjugator;                     // involution = g w_J g^-1
};

struct RichardsonReport {
  bool enumeration_complete = false;
  long long group_order = 0;
  std::vector<RichardsonEntry> involutions;
  bool all_certified = false;
  std::string note;
};

/// Enumerates the group, then certifies each involution as the longest
/// element of a conjugated special subgroup whose components are finite
/// irreducible with nontrivial centre (type table at ranks <= 4).
RichardsonReport richardson_check(const GroupPresentation& coxeter,
                                  long long budget);

/// Named small Coxeter presentations: A1..A4, B2..B4, D4, H3, H4, I2(m) as
/// "I2(6)", and the (3,3,3) triangle as "333".
GroupPresentation coxeter_preset(const std::string& name);

}  // namespace cubemedian
