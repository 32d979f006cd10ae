#pragma once

#include "hyperham/hypergraph.hpp"
#include "hyperham/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace hyperham {

// One copy of a pattern F in H: its vertex set and the edges of H realizing it.
struct Copy {
  VertexSet vertices;
  std::vector<VertexSet> edges;
};

// Copies of F in H, one per vertex set, sorted by vertex set. F must have no
// isolated vertices.
std::vector<Copy> enumerate_copies(const Hypergraph& h, const Hypergraph& f);

// The copy's edges lie in H, cover its vertices, and some bijection from V(F)
// maps E(F) onto them.
bool is_copy(const Hypergraph& h, const Hypergraph& f, const Copy& copy);

struct Tiling {
  std::vector<Copy> copies;
  int covered = 0;
  bool optimal = false;
  std::uint64_t nodes = 0;
  std::uint64_t upper_bound = 0;  // on the number of copies
};

// Branch and bound over copies through the lowest uncovered vertex, with a
// greedy start and the fractional optimum as root bound. Requires n <= 64.
Tiling max_tiling(const Hypergraph& h, const Hypergraph& f, std::uint64_t budget = 10'000'000);

struct FractionalTiling {
  std::vector<Copy> copies;
  std::vector<Rational> weights;
  Rational size;
  std::vector<Rational> vertex_duals;  // fractional vertex cover of the copies
  bool dual_verified = false;
  std::uint64_t pivots = 0;
};

FractionalTiling max_fractional_tiling(const Hypergraph& h, const Hypergraph& f);

// max{ C(4 alpha n, 3), C(n, 3) - C(n - alpha n, 3) } + gamma n^3 with
// generalized binomials. Needs 0 < alpha < 1/4 and 0 <= gamma < 1/4.
Rational thm_A3_bound(int n, const Rational& alpha, const Rational& gamma);

// Limit of the bound over C(n, 3) as n grows with alpha fixed:
// max{ (4 alpha)^3, 1 - (1 - alpha)^3 }.
Rational thm_A3_limit(const Rational& alpha);

// The bound at n - 2 vertices with alpha = n / (6(n - 2)), over C(n - 2, 3).
// Tends to 91/216. Needs n >= 7.
Rational thm_A4_chain(int n);

std::vector<int> index_vector(const std::vector<std::vector<Vertex>>& parts, const VertexSet& s);

struct PartitionIndex {
  std::vector<std::vector<Vertex>> parts;
  std::map<std::vector<int>, std::uint64_t> census;  // index vector -> edges
  Rational mu;
  Rational threshold;  // mu * n^k
  std::vector<std::vector<int>> robust;           // count > threshold
  std::vector<std::vector<int>> robust_at_least;  // count >= threshold
  // Some vector meeting at least two parts is in robust_at_least; for two
  // parts that is (a, k - a) with 1 <= a <= k - 1.
  bool mixed_present = false;
  std::vector<std::vector<int>> mixed;
};

// Throws DomainError unless `parts` partition V(H).
PartitionIndex robust_edge_vectors(const Hypergraph& h, const std::vector<std::vector<Vertex>>& parts,
                                   const Rational& mu);

}  // namespace hyperham
