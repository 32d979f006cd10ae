#include "sequence_search.hpp"

#include "hyperham/errors.hpp"

#include <algorithm>

namespace hyperham::detail {

namespace {

constexpr int kOnwardCap = 32;

struct BudgetHit {};

struct WindowPlan {
  std::vector<int> old_positions;
  std::vector<std::vector<int>> cells;  // new positions grouped by future windows
  std::vector<int> new_positions;       // cells flattened, in order
};

class Engine {
 public:
  Engine(const Hypergraph& h, const Layout& layout, const EngineOptions& options)
      : h_(h), layout_(layout), options_(options) {
    if (!h.has_masks()) throw DomainError("search requires at most 64 vertices");
    m_ = static_cast<int>(layout.windows.size());
    if (m_ > 64) throw DomainError("search supports at most 64 windows");
    const int np = layout.positions;
    win_of_.assign(static_cast<std::size_t>(np), 0);
    for (int j = 0; j < m_; ++j) {
      for (int p : layout.windows[j]) win_of_[p] |= Mask{1} << j;
    }
    std::vector<int> owner(static_cast<std::size_t>(np), -1);
    for (int p = 0; p < np; ++p) {
      if (layout.preassigned[p] < 0 && win_of_[p]) owner[p] = __builtin_ctzll(win_of_[p]);
    }
    plans_.resize(static_cast<std::size_t>(m_));
    for (int j = 0; j < m_; ++j) {
      auto& plan = plans_[j];
      std::vector<int> fresh;
      for (int p : layout.windows[j]) {
        if (owner[p] == j) {
          fresh.push_back(p);
        } else {
          plan.old_positions.push_back(p);
        }
      }
      std::sort(fresh.begin(), fresh.end());
      const Mask future = j + 1 >= 64 ? 0 : ~((Mask{1} << (j + 1)) - 1);
      std::vector<Mask> sigs;
      for (int p : fresh) {
        const Mask sig = win_of_[p] & future;
        auto it = std::find(sigs.begin(), sigs.end(), sig);
        if (it == sigs.end()) {
          sigs.push_back(sig);
          plan.cells.push_back({p});
        } else {
          plan.cells[it - sigs.begin()].push_back(p);
        }
      }
      for (const auto& cell : plan.cells) {
        plan.new_positions.insert(plan.new_positions.end(), cell.begin(), cell.end());
      }
    }
    cap_free_.assign(static_cast<std::size_t>(m_ + 1), 0);
    for (int j = 0; j <= m_; ++j) {
      int best = 0;
      for (int p = 0; p < np; ++p) {
        if (owner[p] >= j) best = std::max(best, popcount(win_of_[p] >> j));
      }
      cap_free_[j] = best;
    }
    assign_ = layout.preassigned;
    pos_of_.assign(static_cast<std::size_t>(h.n()), -1);
    avail_ = h.all_vertices() & ~options.forbidden;
    for (int p = 0; p < np; ++p) {
      const Vertex v = assign_[p];
      if (v < 0) continue;
      if (v >= h.n()) throw DomainError("preassigned vertex out of range");
      if (pos_of_[v] >= 0) throw DomainError("vertex preassigned twice");
      pos_of_[v] = p;
      avail_ &= ~bit(v);
    }
    in_use_.assign(h.edge_count(), 0);
    covered_.assign(h.edge_count(), 0);
  }

  EngineResult run() {
    EngineResult result;
    try {
      if (solve(0)) {
        result.status = SearchStatus::found;
        result.assignment = assign_;
      } else {
        result.status = SearchStatus::none_proven;
      }
    } catch (const BudgetHit&) {
      result.status = SearchStatus::budget_exhausted;
    }
    result.nodes = nodes_;
    return result;
  }

 private:
  Mask window_mask(const std::vector<int>& positions) const {
    Mask m = 0;
    for (int p : positions) m |= bit(assign_[p]);
    return m;
  }

  // Edges e containing `fixed` whose other vertices are available; calls
  // f(rest) and stops when f returns false.
  template <typename F>
  void for_each_extension(Mask fixed, int fresh, F&& f) const {
    if (fresh == 0) {
      if (h_.has_edge(fixed)) f(Mask{0});
      return;
    }
    const auto& masks = h_.edge_masks();
    if (fixed == 0) {
      for (Mask em : masks) {
        if ((em & ~avail_) == 0 && !f(em)) return;
      }
      return;
    }
    Vertex pivot = -1;
    for (Mask rest = fixed; rest; rest &= rest - 1) {
      const Vertex v = __builtin_ctzll(rest);
      if (pivot < 0 || h_.incident(v).size() < h_.incident(pivot).size()) pivot = v;
    }
    for (std::size_t i : h_.incident(pivot)) {
      const Mask em = masks[i];
      if ((em & fixed) != fixed) continue;
      const Mask rest = em & ~fixed;
      if ((rest & ~avail_) == 0 && !f(rest)) return;
    }
  }

  int onward_count(int j) const {
    const auto& plan = plans_[j];
    int count = 0;
    for_each_extension(window_mask(plan.old_positions), static_cast<int>(plan.new_positions.size()), [&](Mask) {
      return ++count < kOnwardCap;
    });
    return count;
  }

  // Distribute the sorted vertices of `rest` over the cells of `plan`.
  void splits(const WindowPlan& plan, const std::vector<Vertex>& rest, std::vector<std::vector<Vertex>>& out) const {
    std::vector<Vertex> current;
    current.reserve(rest.size());
    std::vector<char> taken(rest.size(), 0);
    split_rec(plan, 0, rest, taken, current, out);
  }

  void split_rec(const WindowPlan& plan, std::size_t cell, const std::vector<Vertex>& rest, std::vector<char>& taken,
                 std::vector<Vertex>& current, std::vector<std::vector<Vertex>>& out) const {
    if (cell == plan.cells.size()) {
      out.push_back(current);
      return;
    }
    std::vector<Vertex> pool;
    std::vector<std::size_t> pool_idx;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (!taken[i]) {
        pool.push_back(rest[i]);
        pool_idx.push_back(i);
      }
    }
    const int size = static_cast<int>(plan.cells[cell].size());
    if (cell + 1 == plan.cells.size()) {
      current.insert(current.end(), pool.begin(), pool.end());
      out.push_back(current);
      current.resize(current.size() - pool.size());
      return;
    }
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[i] = i;
    const int m = static_cast<int>(pool.size());
    while (true) {
      for (int i = 0; i < size; ++i) {
        current.push_back(pool[idx[i]]);
        taken[pool_idx[idx[i]]] = 1;
      }
      split_rec(plan, cell + 1, rest, taken, current, out);
      for (int i = 0; i < size; ++i) {
        current.pop_back();
        taken[pool_idx[idx[i]]] = 0;
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == m - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int t = i + 1; t < size; ++t) idx[t] = idx[t - 1] + 1;
    }
  }

  void place(const WindowPlan& plan, const std::vector<Vertex>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const int p = plan.new_positions[i];
      assign_[p] = values[i];
      pos_of_[values[i]] = p;
      avail_ &= ~bit(values[i]);
    }
  }

  void unplace(const WindowPlan& plan, const std::vector<Vertex>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      assign_[plan.new_positions[i]] = -1;
      pos_of_[values[i]] = -1;
      avail_ |= bit(values[i]);
    }
  }

  // Every remaining window needs an edge inside the usable vertices, and any
  // vertex cover of those edges can only serve so many windows.
  bool cover_ok(int j) {
    const int remaining = m_ - j;
    if (remaining <= 0) return true;
    const int n = h_.n();
    std::vector<int> cap(static_cast<std::size_t>(n), 0);
    Mask usable = avail_;
    for (Vertex v = 0; v < n; ++v) {
      if (avail_ & bit(v)) {
        cap[v] = cap_free_[j];
      } else if (pos_of_[v] >= 0) {
        cap[v] = popcount(win_of_[pos_of_[v]] >> j);
        if (cap[v] > 0) usable |= bit(v);
      }
    }
    const auto& masks = h_.edge_masks();
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    std::size_t live = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      in_use_[i] = (masks[i] & ~usable) == 0;
      covered_[i] = 0;
      if (in_use_[i]) {
        ++live;
        for (Mask r = masks[i]; r; r &= r - 1) ++count[__builtin_ctzll(r)];
      }
    }
    int total = 0;
    while (live > 0) {
      Vertex best = -1;
      for (Vertex v = 0; v < n; ++v) {
        if (count[v] == 0 || cap[v] == 0) continue;
        if (best < 0 || static_cast<long long>(count[v]) * cap[best] > static_cast<long long>(count[best]) * cap[v]) {
          best = v;
        }
      }
      if (best < 0) break;
      total += cap[best];
      if (total >= remaining) return true;
      for (std::size_t i : h_.incident(best)) {
        if (!in_use_[i] || covered_[i]) continue;
        covered_[i] = 1;
        --live;
        for (Mask r = masks[i]; r; r &= r - 1) --count[__builtin_ctzll(r)];
      }
    }
    return false;
  }

  bool solve(int j) {
    if (j == m_) return true;
    if (options_.cover_bound && !cover_ok(j)) return false;
    const auto& plan = plans_[j];
    const Mask fixed = window_mask(plan.old_positions);
    const int fresh = static_cast<int>(plan.new_positions.size());
    std::vector<std::vector<Vertex>> moves;
    std::vector<Vertex> rest;
    for_each_extension(fixed, fresh, [&](Mask r) {
      rest.clear();
      for (; r; r &= r - 1) rest.push_back(__builtin_ctzll(r));
      splits(plan, rest, moves);
      return true;
    });
    if (moves.empty()) return false;
    if (options_.fail_first && j + 1 < m_ && moves.size() > 1) {
      std::vector<std::pair<int, std::size_t>> keyed;
      keyed.reserve(moves.size());
      for (std::size_t i = 0; i < moves.size(); ++i) {
        place(plan, moves[i]);
        const int c = onward_count(j + 1);
        unplace(plan, moves[i]);
        if (c > 0) keyed.emplace_back(c, i);
      }
      std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return moves[a.second] < moves[b.second];
      });
      std::vector<std::vector<Vertex>> ordered;
      ordered.reserve(keyed.size());
      for (const auto& [c, i] : keyed) ordered.push_back(std::move(moves[i]));
      moves = std::move(ordered);
    } else {
      std::sort(moves.begin(), moves.end());
    }
    for (const auto& move : moves) {
      ++nodes_;
      if (options_.budget && nodes_ > options_.budget) throw BudgetHit{};
      place(plan, move);
      const bool ok = !options_.accept || options_.accept(assign_, j);
      if (ok && solve(j + 1)) return true;
      unplace(plan, move);
    }
    return false;
  }

  const Hypergraph& h_;
  const Layout& layout_;
  const EngineOptions& options_;
  int m_ = 0;
  std::vector<Mask> win_of_;
  std::vector<WindowPlan> plans_;
  std::vector<int> cap_free_;
  std::vector<Vertex> assign_;
  std::vector<int> pos_of_;
  Mask avail_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<char> in_use_;
  std::vector<char> covered_;
};

}  // namespace

EngineResult run_sequence_search(const Hypergraph& h, const Layout& layout, const EngineOptions& options) {
  Engine engine(h, layout, options);
  return engine.run();
}

int max_windows_per_position(const Layout& layout) {
  std::vector<int> count(static_cast<std::size_t>(layout.positions), 0);
  for (const auto& w : layout.windows) {
    for (int p : w) ++count[p];
  }
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

}  // namespace hyperham::detail
