#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubemedian/cube_ball.hpp"

namespace cubemedian {

/// A median-closed vertex subset of a host window with its wall structure:
/// host classes meeting both sides of the subset, their restrictions, and
/// the restriction map's injectivity (equivalent to edge-connectedness).
struct SubalgebraView {
  const CubeBall* host = nullptr;
  Bits members;
  std::vector<int> member_list;

  bool edge_connected = false;
  bool res_injective = false;

  /// Host classes whose both sides meet the subset.
  std::vector<int> restricting_classes;

  struct MWall {
    Bits inside_minus, inside_plus;    // partition of members
    std::vector<int> host_classes;     // classes restricting to this wall
  };
  std::vector<MWall> walls;
  std::vector<int> class_to_wall;      // parallel to restricting_classes

  /// Per member (dense order of member_list), wall side bits.
  std::vector<Bits> member_wall_sig;
  std::vector<int> dense_index;        // host vertex -> dense index or -1

  /// Empirical carrier-density constant: the largest gap between a member
  /// on a restricting class's host carrier and the intrinsic carrier.
  int carrier_density = 0;

  Certification cert;

  int wall_side_distance(int x, int y) const;  // intrinsic metric
  bool wall_transverse_in_subset(int w1, int w2) const;
};

SubalgebraView analyze_subalgebra(const CubeBall& host, const Bits& members);

/// (intrinsic carrier, host carrier intersected with the subset).
std::pair<Bits, Bits> carriers(const SubalgebraView& view, int wall);

struct GridWitness {
  std::vector<Halfspace> h_chain;  // h0 strictly containing h1 ...
  std::vector<Halfspace> k_chain;
  bool covering_ok = false;        // members inside h0* union k0*
  int escape_vertex = -1;
  int escape_distance = 0;
};

enum class FindGridStatus { Found, None, Inconclusive };

struct FindGridResult {
  FindGridStatus status = FindGridStatus::None;
  std::optional<GridWitness> witness;
  std::string note;
};

/// Searches hull-escape vertices for a pair of transverse halfspaces whose
/// quadrant misses the subset, then extracts nested chains of length n+1 on
/// both sides. n = 0 asks only for the separating pair.
FindGridResult find_grid(const SubalgebraView& view, int n);

/// escape(l) = the largest distance from the hull of a member pair at
/// distance <= l to the subset; nondecreasing in l.
std::vector<int> qc_profile(const SubalgebraView& view, int max_len);

/// Halfspace of the subset's wall structure.
struct MHalfspace {
  int wall = -1;
  bool plus = false;
};

struct BridgeResult {
  Bits bridge;
  int p = -1;  // in the carrier on the k side
  int q = -1;  // gate: separated from p only by walls between the halfspaces
};

BridgeResult bridge(const SubalgebraView& view, MHalfspace h, MHalfspace k);

struct AlphaSegment {
  bool perp = false;  // else parallel
  int length = 0;
};

struct AlphaReport {
  std::vector<int> path;  // host vertex ids from p to q
  std::vector<Halfspace> omega_perp, omega_par;
  std::vector<AlphaSegment> segments;
  std::vector<int> distance_profile;  // d(alpha(t), k side)
  bool transversality_ok = false;     // parallel-before-perp is transverse
  bool empty_corner_ok = false;       // consecutive par/perp quadrants miss M
  int max_segment_length = 0;
  bool exact = true;
  long long geodesics_enumerated = 0;
};

/// Construction of the minimizing geodesic between the carriers of two
/// disjoint restricted halfspaces, ordered by the lexicographic distance
/// profile to the k side; computed by layered dynamic programming.
AlphaReport minimal_geodesic_alpha(const SubalgebraView& view, Halfspace h,
                                   Halfspace k);

/// Exhaustive variant used as an oracle: enumerates geodesics up to the
/// budget and minimizes the profile directly.
AlphaReport minimal_geodesic_alpha_enumerated(const SubalgebraView& view,
                                              Halfspace h, Halfspace k,
                                              long long budget);

enum class ChainStatus { Found, PreconditionNotMet, NotFound };

struct ChainWitnessResult {
  ChainStatus status = ChainStatus::NotFound;
  int k = -1;
  std::vector<int> i_indices, j_indices;
};

/// Given halfspace sequences entered in order by a common geodesic, finds an
/// index k with n-chains above h_k and below k_k whenever N > 2 n dim.
ChainWitnessResult chain_witness(const std::vector<Bits>& h_seq,
                                 const std::vector<Bits>& k_seq, int n,
                                 int dim);

}  // namespace cubemedian
