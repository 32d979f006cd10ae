#pragma once

#include "hyperham/constructions.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/paths.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperham {

// A family Q' of vertex-disjoint ell-paths and a family Q with the same
// ordered ends per index, where V(Q) = V(Q') + target.
struct Absorber {
  VertexSet target;
  std::vector<Vertex> tuple;              // V(Q') in family order
  std::vector<EllPath> without_target;    // Q'
  std::vector<EllPath> with_target;       // Q
};

// Both families are ell-paths of h, vertex-disjoint within the family,
// equal ordered ends index by index, and V(Q) = V(Q') + target exactly.
Validation check_absorber(const Hypergraph& h, const Absorber& a);

// Smallest insertion gadget for (k, ell), computed once and cached.
const Gadget& gadget_template(int k, int ell);

// S-absorbers made of a gadget copy A and one swapper per vertex of S: a
// (2k-ell-1)-set T_i such that T_i + w_i and T_i + v_i both span ell-paths
// of length two, v_i sitting in w_i's slot. Q' uses A's P path and the w_i
// swappers; Q uses A's Q path and the v_i swappers. Stops at `limit`.
// Needs ell < k/2, |target| = k - ell and n <= 64.
std::vector<Absorber> find_absorbers(const Hypergraph& h, int ell, const VertexSet& target,
                                     std::size_t limit = 16, std::uint64_t budget = 1'000'000);

// Lattice bookkeeping for what the absorbing path can take in.
struct AbsorbDescriptor {
  std::vector<std::vector<Vertex>> parts;  // V split into two halves
  bool lattice = false;                    // a mixed edge vector (a, k-a) occurs
  int a = 0;
  std::uint64_t a_census = 0;
  int m = 0;
  std::vector<int> base_first;   // (m, k-ell-m)
  std::vector<int> base_second;  // (m-1, k-ell-m+1)
  int reserve = 0;               // p; R1 holds 2p sets of each base vector
  std::vector<Vertex> reserved;  // R1
  int slots = 0;
};

struct LatticeCheck {
  bool divisible = false;
  bool fits = false;       // |X|/(k-ell) + 4p <= slots
  long long x = 0;         // coefficient of base_first
  long long y = 0;         // coefficient of base_second
  bool representable = false;  // x + 2p >= 0 and y + 2p >= 0
  bool ok() const { return divisible && fits && representable; }
};

LatticeCheck lattice_check(const AbsorbDescriptor& d, int k, int ell, const VertexSet& x);

// Where a gadget's P path sits inside the absorbing path.
struct AbsorberSlot {
  int offset = 0;                 // first position of the P path
  std::vector<Vertex> x;          // gadget X labels -> vertices
  std::vector<Vertex> certified;  // S' of the gadget copy found with the slot
};

struct AbsorbingPath {
  EllPath base;  // slots joined by connectors
  EllPath path;  // base with R1 absorbed
  std::vector<AbsorberSlot> slots;
  AbsorbDescriptor descriptor;
  std::uint64_t nodes = 0;
};

struct AbsorbingParams {
  int capacity = -1;  // slots; -1 = ceil(n / (10(k-ell))) + 3
  int reserve = 0;    // p
  int max_connector = 3;
  VertexSet avoid;
  std::uint64_t budget = 2'000'000;
  std::uint64_t seed = 0;
};

// Throws StageError("absorbing-path", ...) when a slot cannot be placed,
// two slots cannot be joined, or R1 cannot be absorbed.
AbsorbingPath build_absorbing_path(const Hypergraph& h, int ell, const AbsorbingParams& params);

struct Absorption {
  EllPath path;  // same ordered ends as the base path
  std::vector<Absorber> absorbers;
  int swaps = 0;
  std::uint64_t nodes = 0;
};

// Absorbs R1 + x into the base path. Each slot takes one (k-ell)-set into
// its gadget roles, either directly or by swapping a vertex v into a
// connector position whose occupant w moves into the role.
std::optional<Absorption> absorb(const Hypergraph& h, const AbsorbingPath& p, const VertexSet& x,
                                 std::uint64_t budget = 2'000'000, std::uint64_t seed = 0, int restarts = 8);

struct PathCover {
  std::vector<EllPath> paths;
  std::vector<Vertex> leftover;
};

// Greedy vertex-disjoint ell-paths over V - avoid, each grown at both ends
// with one step of lookahead until stuck. Needs n <= 64.
PathCover path_cover(const Hypergraph& h, int ell, const VertexSet& avoid = {}, std::uint64_t seed = 0);

struct PipelineParams {
  double reservoir_fraction = 0.1;
  int capacity = -1;
  int reserve = 0;
  int max_connector = 3;
  std::uint64_t stage_budget = 2'000'000;
  int restarts = 8;
  int attempts = 3;
};

struct PipelineReport {
  std::uint64_t seed = 0;
  int k = 0;
  int ell = 0;
  int n = 0;
  int attempts = 0;
  int reservoir_size = 0;
  int absorbing_path_vertices = 0;
  int slots = 0;
  AbsorbDescriptor descriptor;
  int cover_paths = 0;
  int cover_leftover = 0;
  int connections = 0;
  int connections_fallback = 0;
  int leftover = 0;
  bool lattice_certified = false;
  int absorbed_sets = 0;
  int swaps = 0;
  std::vector<Absorber> absorbers;
  std::optional<EllCycle> cycle;
  std::string failed_stage;
  std::string failure;

  bool success() const { return cycle.has_value(); }
};

// Reservoir, absorbing path, path cover, cyclic connection through the
// reservoir, absorption of what is left. Needs ell < k/2, (k-ell) | n and
// n <= 64.
PipelineReport run_pipeline(const Hypergraph& h, int ell, const PipelineParams& params, std::uint64_t seed);

}  // namespace hyperham
