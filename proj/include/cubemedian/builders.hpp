#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubemedian/cube_ball.hpp"
#include "cubemedian/presentation.hpp"
#include "cubemedian/rational.hpp"

namespace cubemedian {

/// Cayley ball of a RACG (Davis 1-skeleton) or RAAG (Salvetti 1-skeleton)
/// with squares filled between commuting-generator edges.
CubeBall standard_ball(const GroupPresentation& pres, int radius);

/// Coset complex ball for a graph product of finite cyclic groups: vertices
/// are cosets g G_c over cliques c, edges add or remove one clique vertex.
struct CosetBall {
  CubeBall ball;
  std::vector<Word> reps;      // shortlex-least coset representative
  std::vector<Bits> cliques;   // clique over graph vertices
};
CosetBall graph_product_coset_ball(const GroupPresentation& pres, int radius);
CubeBall graph_product_ball(const GroupPresentation& pres, int radius);

// ---- cubical tilings with affine actions ----

struct AffineGenerator {
  std::string name;
  AffineMap map;
};

struct AffineAction {
  int n = 0;
  std::vector<AffineGenerator> generators;
  /// Optional identities to validate, words over generator names
  /// ("g" / "g^-1" / "g^k", whitespace separated).
  std::vector<std::string> relations_declared;
};

struct TilingWindow {
  CubeBall ball;
  int n = 0;
  int q = 1;          // tiling refinement: lattice is (1/q) Z^n, stored as q-multiples
  int halfwidth = 0;  // in refined cells
  std::vector<std::vector<long long>> coords;  // refined coords per vertex
  /// Per generator, vertex image or -1 when it leaves the window.
  std::vector<std::vector<int>> action;
  std::vector<std::pair<std::string, bool>> relation_checks;

  int vertex_at(const std::vector<long long>& c) const;
};

TilingWindow tiling_window(const AffineAction& action, int halfwidth);

/// Affine map of a word over action generator names.
AffineMap affine_word(const AffineAction& action, const std::string& word);

/// Orbit of a window point under the partial action of selected generators.
Bits orbit_in_window(const TilingWindow& w, const std::vector<int>& gens,
                     int start);

// ---- one-vertex square complexes ----

struct SquareComplexPresentation {
  std::vector<std::string> edge_labels;
  /// Boundary words, 4 signed letters each: (edge index, +1 or -1).
  std::vector<std::array<std::pair<int, int>, 4>> squares;
};

/// Square complex with a hexagon-commutator block and an (n+1)-step
/// staircase realizing the relator [a6, a1 a3^n]; n+6 squares total.
SquareComplexPresentation hexagon_complex(int n);

struct NpcResult {
  bool pass = false;
  std::string reason;
  std::vector<std::string> witness_cycle;
  std::vector<std::string> link_nodes;
  std::vector<std::pair<int, int>> link_edges;
  /// Link with the two germs of each edge collapsed and parallel edges
  /// identified, recorded as label -> degree.
  std::map<std::string, int> reduced_link_degree;
};

/// Gromov link condition for one-vertex square complexes: the link graph
/// must be simple with no triangles.
NpcResult npc_link_check(const SquareComplexPresentation& c);

// ---- presentation isomorphism verification ----

struct FreePresentation {
  std::vector<std::string> generators;
  /// Relators as signed generator indices: +(i+1) / -(i+1).
  std::vector<std::vector<int>> relators;
};

FreePresentation complex_presentation(const SquareComplexPresentation& c);
FreePresentation raag_presentation(const DefiningGraph& g);
/// The displayed 6-generator presentation of the fundamental group of
/// hexagon_complex(n), with the staircase generators eliminated.
FreePresentation hexagon_pi1(int n);

struct Substitution {
  std::vector<std::vector<int>> forward;  // per source generator
  std::vector<std::vector<int>> inverse;  // per target generator
};

enum class TietzeStatus { Verified, Failed, Inconclusive };

struct TietzeResult {
  TietzeStatus status = TietzeStatus::Inconclusive;
  std::string relator;  // offending relator for Failed / Inconclusive
  std::string detail;
  long long states_used = 0;
};

/// Checks that the substitution maps relators to relations, in both
/// directions. Sound failures come from an exact engine (when a side is a
/// commutator-only presentation) or from the abelianization; otherwise a
/// budgeted insertion search verifies or returns Inconclusive.
TietzeResult tietze_verify(const FreePresentation& source,
                           const FreePresentation& target,
                           const Substitution& subst, long long budget);

// ---- Niblo-Reeves wall systems and Sageev duals ----

struct WallSystem {
  GroupPresentation pres;
  EnumeratedBall host;
  std::vector<std::vector<int>> cells;       // 2m-gon vertex cycles
  std::vector<std::vector<int>> walls;       // wall -> host edge ids
  std::vector<int> edge_wall;                // host edge -> wall
  std::vector<Word> wall_reflections;        // the reflection of each wall
  std::vector<std::vector<int>> stabilizers; // in-ball setwise stabilizers
  /// Halfspace of each wall containing the identity (by length comparison
  /// with the reflection; exact, not truncated).
  std::vector<Bits> side_identity;
  std::vector<Bits> side_other;
};

WallSystem niblo_reeves_walls(const GroupPresentation& coxeter, int radius);

struct Wallspace {
  int n_points = 0;
  std::vector<std::pair<Bits, Bits>> walls;
  int base_point = 0;
};

/// Dual cube complex of a finite wallspace: vertices are the pairwise
/// consistent orientations, edges flip one wall. Walls with identical
/// partitions are merged first.
CubeBall dual_of_wallspace(const Wallspace& ws, long long vertex_budget = 200000);

CubeBall sageev_dual(const WallSystem& ws, long long vertex_budget = 200000);

/// Cube-complex product of two fully trusted windows.
CubeBall product_window(const CubeBall& a, const CubeBall& b);

}  // namespace cubemedian
