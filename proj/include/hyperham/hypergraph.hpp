#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace hyperham {

using Vertex = int;
using Mask = std::uint64_t;

// Machine-word edge masks are kept whenever every vertex fits in one word.
inline constexpr int kMaskVertices = 64;

// Sorted set of distinct vertices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  // Sorts; throws DomainError on a repeated or negative vertex.
  explicit VertexSet(std::vector<Vertex> members);

  static VertexSet from_mask(Mask mask);
  // Skips validation; `members` must already be sorted and distinct.
  static VertexSet from_sorted(std::vector<Vertex> members);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<Vertex>& members() const { return members_; }

  bool contains(Vertex v) const;
  bool contains_all(const VertexSet& other) const;
  // Requires every member < 64.
  Mask mask() const;

  std::string to_string() const;

  auto operator<=>(const VertexSet&) const = default;
  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
std::size_t intersection_size(const VertexSet& a, const VertexSet& b);

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Mask bit(Vertex v) { return Mask{1} << v; }

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept;
};

// Calls f(subset) for every r-subset of `pool` in lexicographic order of
// positions. `pool` should be sorted for sorted output. Stops early when f
// returns false.
bool for_each_subset(std::span<const Vertex> pool, int r,
                     const std::function<bool(const std::vector<Vertex>&)>& f);

// Same over {0, ..., n-1}.
bool for_each_combination(int n, int r, const std::function<bool(const std::vector<Vertex>&)>& f);

// Immutable k-uniform hypergraph on vertices 0..n-1. Edges are stored sorted
// lexicographically. For n <= 64 each edge also has a bitmask and membership
// is a hash lookup; above that, a binary search.
class Hypergraph {
 public:
  Hypergraph() = default;
  // Throws DomainError on wrong arity, out-of-range vertex or duplicate edge.
  Hypergraph(int k, int n, std::vector<VertexSet> edges);

  int k() const { return k_; }
  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<VertexSet>& edges() const { return edges_; }

  bool has_masks() const { return n_ <= kMaskVertices; }
  const std::vector<Mask>& edge_masks() const { return masks_; }
  // Indices into edges() of the edges through v, ascending.
  const std::vector<std::size_t>& incident(Vertex v) const { return incidence_[v]; }

  bool has_edge(const VertexSet& e) const;
  bool has_edge(Mask e) const;  // n <= 64 only

  // Vertex mask of all of V; n <= 64 only.
  Mask all_vertices() const;

 private:
  int k_ = 0;
  int n_ = 0;
  std::vector<VertexSet> edges_;
  std::vector<Mask> masks_;
  std::unordered_set<Mask> mask_set_;
  std::vector<std::vector<std::size_t>> incidence_;
};

// Number of edges containing S. Throws ArityError unless 1 <= |S| <= k-1,
// DomainError for an out-of-range vertex.
std::uint64_t degree(const Hypergraph& h, const VertexSet& s);

// Minimum of degree(h, S) over all d-sets S.
std::uint64_t min_degree(const Hypergraph& h, int d);

// Degree of every d-set, indexed by colex rank (see colex_rank).
std::vector<std::uint64_t> degree_table(const Hypergraph& h, int d);
std::uint64_t colex_rank(const VertexSet& s);
VertexSet colex_unrank(std::uint64_t rank, int r);

// The (k - |S|)-graph of sets T disjoint from S with T + S an edge.
Hypergraph link(const Hypergraph& h, const VertexSet& s);

// Sub-hypergraph induced by `keep`, vertices relabelled 0..|keep|-1 in order.
Hypergraph induced(const Hypergraph& h, const VertexSet& keep);

Hypergraph complete_graph(int k, int n);

// `.hg` text: header "k n m", then m lines of k strictly increasing vertices.
Hypergraph read_hg(std::istream& in);
void write_hg(std::ostream& out, const Hypergraph& h);
Hypergraph load_hg(const std::string& path);
void save_hg(const std::string& path, const Hypergraph& h);

}  // namespace hyperham
