#pragma once

#include "hyperham/hypergraph.hpp"
#include "hyperham/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hyperham {

struct ReachabilityProfile {
  Vertex u = 0;
  Vertex v = 0;
  std::uint64_t count = 0;  // witness sets T
  BigInt normalization;     // n^(2k-ell-1)
  Rational beta;            // count / normalization
};

// Ordered end pairs (E1, E2) of the ell-paths of length two spanning exactly
// the vertex set w (|w| = 2k - ell). Ends are compared as sets: the order
// inside an end is free because those positions lie in a single edge.
std::vector<std::pair<Mask, Mask>> length_two_ends(const Hypergraph& h, Mask w, int ell);

// Number of (2k-ell-1)-sets T avoiding u, v such that T + u and T + v both
// span ell-paths of length two with the same ordered ends. Needs 2 ell <= k
// and n <= 64.
ReachabilityProfile reachable_count(const Hypergraph& h, Vertex u, Vertex v, int ell);

struct ClosedPartition {
  std::vector<std::vector<Vertex>> parts;
  std::vector<Vertex> leftover;        // U
  std::vector<Rational> min_pair_beta;  // per part, over all pairs inside it
  std::vector<std::vector<std::uint64_t>> counts;  // full pair matrix
};

// Components of the graph joining u, v when count > 0 and
// count / n^(2k-ell-1) >= beta_min; singletons go to U.
ClosedPartition reachability_partition(const Hypergraph& h, int ell, const Rational& beta_min);

struct PigeonholePair {
  Vertex first = 0;
  Vertex second = 0;
  std::uint64_t common = 0;  // |N(first) & N(second)| as (k-1)-sets
  ReachabilityProfile reach;
  std::uint64_t min_degree = 0;
  bool hypothesis = false;  // min d-degree > C(n, k-d) / q
};

// Among the given q vertices, the pair whose vertex links share the most
// (k-1)-sets, earliest pair on ties.
PigeonholePair pigeonhole_pair(const Hypergraph& h, int d, int ell, const std::vector<Vertex>& vertices);

}  // namespace hyperham
