#pragma once

#include "hyperham/hypergraph.hpp"
#include "hyperham/paths.hpp"
#include "hyperham/random.hpp"
#include "hyperham/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hyperham {

// All k-sets meeting A = {0, ..., a-1}, a = ceil(n / (2(k-ell))) - 1.
struct SpaceBarrierSpec {
  int k = 0;
  int ell = 0;
  int n = 0;

  int a() const;
  // Throws DomainError unless 1 <= ell < k/2 and (k-ell) | n.
  void check() const;
};

Hypergraph space_barrier(const SpaceBarrierSpec& spec);

struct BarrierDegree {
  BigInt value;         // closed form C(n-d,k-d) - C(n-a-d,k-d)
  Rational normalized;  // value / C(n, k-d)
  bool verified = false;
};

BigInt space_barrier_degree_formula(const SpaceBarrierSpec& spec, int d);

// Closed form; with `verify`, also generates the graph and throws
// std::logic_error if min_degree disagrees.
BarrierDegree space_barrier_min_degree(const SpaceBarrierSpec& spec, int d, bool verify = true);

// Two k-edges sharing exactly b vertices: {0..k-1} and {k-b..2k-b-1}.
Hypergraph pattern_Y(int k, int b);

// Each k-set independently with probability p; k-sets are drawn in
// lexicographic order so the result depends only on the stream.
Hypergraph random_graph(int k, int n, double p, SplitMix64& rng);

// Disjoint union; vertices of `b` are shifted by a.n().
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);

struct GadgetCertificate {
  int k = 0;
  int ell = 0;
  std::vector<std::vector<Vertex>> classes;  // V_1 .. V_k
  std::vector<Vertex> s_prime;               // |S'| = k - ell
  std::vector<Vertex> x;
  EllPath p;  // spans X
  EllPath q;  // spans S' + X
  std::vector<Vertex> begin_end;
  std::vector<Vertex> end_end;
};

struct Gadget {
  Hypergraph graph;  // edges: windows of P and Q
  GadgetCertificate cert;
};

// Checks the six gadget properties, k-partiteness of every edge of h inside
// the gadget, and that P and Q are ell-paths of h with the recorded ends.
Validation validate_gadget(const Hypergraph& h, const GadgetCertificate& cert);

struct GadgetSearchResult {
  SearchStatus status = SearchStatus::none_proven;
  std::optional<Gadget> gadget;
  std::uint64_t nodes = 0;
  int vertices = 0;
};

// Smallest gadget in which Q is P with the S' vertices inserted at interior
// positions, sizes up to size_cap (0 means k^4). Throws DomainError when
// (k-ell) divides k.
GadgetSearchResult search_gadget(int k, int ell, int size_cap = 0, std::uint64_t budget = 1'000'000);

}  // namespace hyperham
