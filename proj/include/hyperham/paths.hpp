#pragma once

#include "hyperham/hypergraph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperham {

// Ordered vertex sequence whose implied edges are the k-windows starting at
// multiples of k - ell. Ends are the first and last ell vertices, in order.
struct EllPath {
  int k = 0;
  int ell = 0;
  std::vector<Vertex> order;

  int step() const { return k - ell; }
  // Number of implied edges, or -1 when |order| is not k + (L-1)(k-ell).
  int length() const;
  std::vector<Vertex> begin_end() const;
  std::vector<Vertex> end_end() const;
  std::vector<VertexSet> windows() const;

  bool operator==(const EllPath&) const = default;
};

// Cyclic order; implied edges are the cyclic k-windows at multiples of k - ell.
struct EllCycle {
  int k = 0;
  int ell = 0;
  std::vector<Vertex> order;

  int step() const { return k - ell; }
  int edge_count() const;
  std::vector<VertexSet> windows() const;

  bool operator==(const EllCycle&) const = default;
};

struct Validation {
  bool valid = true;
  std::string violation;  // empty when valid
  int window = -1;        // 1-based index of the first bad window, when one applies
  bool hamilton = false;  // cycles only

  explicit operator bool() const { return valid; }
};

Validation validate_path(const Hypergraph& h, const EllPath& p);
Validation validate_cycle(const Hypergraph& h, const EllCycle& c);

enum class SearchStatus { found, none_proven, budget_exhausted };
std::string to_string(SearchStatus s);

struct SearchOptions {
  std::uint64_t budget = 50'000'000;  // decision nodes; 0 = unlimited
  bool cover_bound = true;
  bool fail_first = true;
};

struct HamiltonResult {
  SearchStatus status = SearchStatus::none_proven;
  std::optional<EllCycle> cycle;
  std::uint64_t nodes = 0;
  std::string reason;  // for none_proven: "divisibility", "size", "exhausted"
};

// Exact backtracking for a Hamilton ell-cycle. Requires n <= 64.
HamiltonResult find_hamilton_cycle(const Hypergraph& h, int ell, const SearchOptions& options = {});

// Least rotation/reflection of the cycle, after sorting vertices that occupy
// interchangeable positions (same set of windows).
EllCycle canonical_cycle(const EllCycle& c);

struct ConnectOptions {
  int min_len = 2;
  int max_len = 2;
  VertexSet forbidden;
  std::uint64_t budget = 1'000'000;  // decision nodes over all lengths; 0 = unlimited
};

struct ConnectResult {
  SearchStatus status = SearchStatus::none_proven;
  std::optional<EllPath> path;
  std::uint64_t nodes = 0;
};

// ell-path with ordered ends exactly (s, t) whose other vertices avoid
// `forbidden`, trying lengths min_len..max_len in turn. Requires n <= 64.
ConnectResult connect(const Hypergraph& h, int ell, const std::vector<Vertex>& s,
                      const std::vector<Vertex>& t, const ConnectOptions& options = {});

}  // namespace hyperham
