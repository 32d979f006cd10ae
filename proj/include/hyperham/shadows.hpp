#pragma once

#include "hyperham/hypergraph.hpp"
#include "hyperham/paths.hpp"
#include "hyperham/rational.hpp"

#include <optional>
#include <vector>

namespace hyperham {

// (k-ell)-sets lying in more than eps * n^ell edges, sorted. eps = 0 gives the
// ordinary shadow. Throws ArityError unless 1 <= ell <= k.
std::vector<VertexSet> robust_shadow(const Hypergraph& h, int ell, const Rational& eps);

// Lovasz form of Kruskal-Katona: with e = C(x, k), x >= k-1 real, the
// (k-ell)-shadow has at least C(x, k-ell) sets. Exact when x is an integer;
// otherwise x is bracketed by bisection to width 2^-40 and the value at the
// lower end, rounded down to a multiple of 2^-40, is returned.
Rational kk_bound(const BigInt& e_count, int k, int ell);

// First `count` k-sets in colex order.
std::vector<VertexSet> colex_family(int k, std::uint64_t count);

// The (k-ell)-graph of sets T with T + S an edge, restricted to T avoiding
// `avoid`.
Hypergraph neighbourhood_graph(const Hypergraph& h, const VertexSet& s, const VertexSet& avoid);

struct ShadowWitness {
  VertexSet d;   // common robust ell-shadow member
  VertexSet s1;  // S + S1 is an edge
  VertexSet t1;  // T + T1 is an edge, S1 and T1 meet exactly in D
  EllPath path;  // S, S1 - D, D, T1 - D, T
};

struct ShadowIntersection {
  std::vector<VertexSet> common;  // all common robust shadow members
  std::optional<ShadowWitness> witness;
};

// Neighbourhoods of the ordered ell-tuples S and T, as (k-ell)-graphs on sets
// avoiding S, T and `forbidden`. For ell < k/2 the common members D of their
// eps-robust ell-shadows are listed, and the first D with S1, T1 meeting in
// exactly D gives the witness path. For ell = k/2 (direct mode) a common
// neighbour S1 is used instead. Throws DomainError for ell > k/2 or S, T not
// disjoint.
ShadowIntersection shadow_intersection_witness(const Hypergraph& h, const std::vector<Vertex>& s,
                                               const std::vector<Vertex>& t, const Rational& eps,
                                               const VertexSet& forbidden = {});

enum class CleanupOrder { ascending, descending };

struct CleanupResult {
  Hypergraph graph;
  std::uint64_t deleted = 0;
  std::uint64_t rounds = 0;
};

// Repeatedly deletes all edges through any ell-set B with
// 0 < deg(B) < eps * n^(g - ell), g the uniformity of `g`, until none is left.
CleanupResult iterated_cleanup(const Hypergraph& g, int ell, const Rational& eps,
                               CleanupOrder order = CleanupOrder::ascending);

}  // namespace hyperham
