#pragma once

#include "hyperham/hypergraph.hpp"
#include "hyperham/paths.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace hyperham::detail {

// A sequence of `positions` slots to be filled with distinct vertices so that
// every window (a list of k positions) spans an edge. Windows are filled in
// order; a slot belongs to the first window that contains it unless it is
// preassigned.
struct Layout {
  int positions = 0;
  std::vector<std::vector<int>> windows;
  std::vector<Vertex> preassigned;  // -1 = free
};

struct EngineOptions {
  std::uint64_t budget = 0;  // 0 = unlimited
  bool cover_bound = false;
  bool fail_first = true;
  Mask forbidden = 0;
  // Called after window j is filled; false prunes.
  std::function<bool(const std::vector<Vertex>& assignment, int window)> accept;
};

struct EngineResult {
  SearchStatus status = SearchStatus::none_proven;
  std::vector<Vertex> assignment;
  std::uint64_t nodes = 0;
};

// Requires h.n() <= 64 and windows.size() <= 64.
EngineResult run_sequence_search(const Hypergraph& h, const Layout& layout, const EngineOptions& options);

// Largest number of windows any position lies in.
int max_windows_per_position(const Layout& layout);

}  // namespace hyperham::detail
