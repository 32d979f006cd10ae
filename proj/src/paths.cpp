#include "hyperham/paths.hpp"

#include "hyperham/errors.hpp"
#include "sequence_search.hpp"

#include <algorithm>
#include <map>

namespace hyperham {

int EllPath::length() const {
  const int s = step();
  const int size = static_cast<int>(order.size());
  if (s <= 0 || size < k || (size - k) % s != 0) return -1;
  return (size - k) / s + 1;
}

std::vector<Vertex> EllPath::begin_end() const {
  const auto len = std::min<std::size_t>(static_cast<std::size_t>(std::max(ell, 0)), order.size());
  return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len)};
}

std::vector<Vertex> EllPath::end_end() const {
  const auto len = std::min<std::size_t>(static_cast<std::size_t>(std::max(ell, 0)), order.size());
  return {order.end() - static_cast<std::ptrdiff_t>(len), order.end()};
}

std::vector<VertexSet> EllPath::windows() const {
  std::vector<VertexSet> out;
  const int len = length();
  for (int j = 0; j < len; ++j) {
    out.emplace_back(std::vector<Vertex>(order.begin() + j * step(), order.begin() + j * step() + k));
  }
  return out;
}

int EllCycle::edge_count() const {
  const int s = step();
  if (s <= 0 || order.empty() || order.size() % static_cast<std::size_t>(s) != 0) return -1;
  return static_cast<int>(order.size()) / s;
}

std::vector<VertexSet> EllCycle::windows() const {
  std::vector<VertexSet> out;
  const int m = edge_count();
  const int size = static_cast<int>(order.size());
  for (int j = 0; j < m; ++j) {
    std::vector<Vertex> w;
    for (int i = 0; i < k; ++i) w.push_back(order[(j * step() + i) % size]);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    out.push_back(VertexSet::from_sorted(std::move(w)));
  }
  return out;
}

namespace {

Validation fail(std::string why, int window = -1) {
  Validation v;
  v.valid = false;
  v.violation = std::move(why);
  v.window = window;
  return v;
}

// Distinct vertices, all in range.
std::string check_vertices(const Hypergraph& h, const std::vector<Vertex>& order) {
  std::vector<char> seen(static_cast<std::size_t>(h.n()), 0);
  for (Vertex v : order) {
    if (v < 0 || v >= h.n()) return "vertex " + std::to_string(v) + " out of range";
    if (seen[v]) return "vertex " + std::to_string(v) + " repeated";
    seen[v] = 1;
  }
  return {};
}

}  // namespace

Validation validate_path(const Hypergraph& h, const EllPath& p) {
  if (p.k != h.k()) return fail("path uniformity " + std::to_string(p.k) + " differs from host " + std::to_string(h.k()));
  if (p.ell < 1 || p.ell >= p.k) return fail("ell must satisfy 1 <= ell < k");
  const int len = p.length();
  if (len < 1) {
    return fail("path has " + std::to_string(p.order.size()) + " vertices, not k + (L-1)(k-ell) for any L >= 1");
  }
  if (auto bad = check_vertices(h, p.order); !bad.empty()) return fail(bad);
  const auto ws = p.windows();
  for (int j = 0; j < len; ++j) {
    if (!h.has_edge(ws[j])) return fail("window " + std::to_string(j + 1) + " " + ws[j].to_string() + " is not an edge", j + 1);
    if (j > 0 && static_cast<int>(intersection_size(ws[j - 1], ws[j])) != p.ell) {
      return fail("windows " + std::to_string(j) + " and " + std::to_string(j + 1) + " do not share exactly ell vertices",
                  j + 1);
    }
  }
  return {};
}

Validation validate_cycle(const Hypergraph& h, const EllCycle& c) {
  if (c.k != h.k()) return fail("cycle uniformity " + std::to_string(c.k) + " differs from host " + std::to_string(h.k()));
  if (c.ell < 1 || c.ell >= c.k) return fail("ell must satisfy 1 <= ell < k");
  const int m = c.edge_count();
  if (m < 1) return fail("vertex count " + std::to_string(c.order.size()) + " is not a positive multiple of k-ell");
  if (auto bad = check_vertices(h, c.order); !bad.empty()) return fail(bad);
  if (m < 2) return fail("a cycle needs at least two edges");
  const auto ws = c.windows();
  for (int j = 0; j < m; ++j) {
    if (static_cast<int>(ws[j].size()) != c.k) {
      return fail("window " + std::to_string(j + 1) + " wraps onto itself", j + 1);
    }
    if (!h.has_edge(ws[j])) return fail("window " + std::to_string(j + 1) + " " + ws[j].to_string() + " is not an edge", j + 1);
  }
  for (int j = 0; j < m; ++j) {
    const int next = (j + 1) % m;
    const auto shared = intersection_size(ws[j], ws[next]);
    if (static_cast<int>(shared) != c.ell) {
      return fail("windows " + std::to_string(j + 1) + " and " + std::to_string(next + 1) + " share " +
                      std::to_string(shared) + " vertices, not " + std::to_string(c.ell),
                  next + 1);
    }
  }
  if (2 * c.ell < c.k) {
    std::vector<int> load(static_cast<std::size_t>(h.n()), 0);
    for (const auto& w : ws) {
      for (Vertex v : w) {
        if (++load[v] > 2) return fail("vertex " + std::to_string(v) + " lies in more than two edges");
      }
    }
  }
  Validation ok;
  ok.hamilton = static_cast<int>(c.order.size()) == h.n() && h.n() % c.step() == 0;
  return ok;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none_proven: return "none-proven";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "unknown";
}

namespace {

detail::Layout cycle_layout(int n, int k, int s) {
  detail::Layout layout;
  layout.positions = n;
  const int m = n / s;
  for (int j = 0; j < m; ++j) {
    std::vector<int> w;
    for (int i = 0; i < k; ++i) w.push_back((j * s + i) % n);
    layout.windows.push_back(std::move(w));
  }
  layout.preassigned.assign(static_cast<std::size_t>(n), -1);
  return layout;
}

Mask window_membership(const detail::Layout& layout, int p) {
  Mask sig = 0;
  for (std::size_t j = 0; j < layout.windows.size(); ++j) {
    const auto& w = layout.windows[j];
    if (std::find(w.begin(), w.end(), p) != w.end()) sig |= Mask{1} << j;
  }
  return sig;
}

// Positions of the same cyclic cell structure, grouped by window membership.
std::vector<std::vector<int>> position_cells(int n, int k, int s) {
  const auto layout = cycle_layout(n, k, s);
  std::map<Mask, std::vector<int>> by_sig;
  for (int p = 0; p < n; ++p) by_sig[window_membership(layout, p)].push_back(p);
  std::vector<std::vector<int>> out;
  for (auto& [sig, cell] : by_sig) out.push_back(std::move(cell));
  return out;
}

}  // namespace

EllCycle canonical_cycle(const EllCycle& c) {
  const int n = static_cast<int>(c.order.size());
  const int s = c.step();
  if (s <= 0 || n == 0 || n % s != 0 || n < c.k) return c;
  const auto cells = position_cells(n, c.k, s);
  auto normalize = [&](std::vector<Vertex> seq) {
    for (const auto& cell : cells) {
      std::vector<Vertex> vals;
      for (int p : cell) vals.push_back(seq[p]);
      std::sort(vals.begin(), vals.end());
      for (std::size_t i = 0; i < cell.size(); ++i) seq[cell[i]] = vals[i];
    }
    return seq;
  };
  std::vector<Vertex> best;
  std::vector<Vertex> reversed(c.order.rbegin(), c.order.rend());
  const int t0 = ((-c.k) % s + s) % s;
  for (int dir = 0; dir < 2; ++dir) {
    const auto& base = dir == 0 ? c.order : reversed;
    const int offset = dir == 0 ? 0 : t0;
    for (int j = 0; j < n / s; ++j) {
      std::vector<Vertex> seq(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) seq[i] = base[(i + offset + j * s) % n];
      seq = normalize(std::move(seq));
      if (best.empty() || seq < best) best = std::move(seq);
    }
  }
  return EllCycle{c.k, c.ell, std::move(best)};
}

HamiltonResult find_hamilton_cycle(const Hypergraph& h, int ell, const SearchOptions& options) {
  const int k = h.k();
  const int n = h.n();
  if (ell < 1 || ell >= k) throw DomainError("ell must satisfy 1 <= ell < k");
  HamiltonResult result;
  const int s = k - ell;
  if (n % s != 0) {
    result.reason = "divisibility";
    return result;
  }
  if (n < k) {
    result.reason = "size";
    return result;
  }
  if (n > kMaskVertices) throw DomainError("Hamilton search supports at most 64 vertices");
  const int m = n / s;
  auto layout = cycle_layout(n, k, s);
  // Consecutive windows must meet in exactly ell positions, else no ell-cycle fits.
  for (int j = 0; j < m; ++j) {
    const auto& a = layout.windows[j];
    const auto& b = layout.windows[(j + 1) % m];
    int shared = 0;
    for (int p : a) shared += std::count(b.begin(), b.end(), p) > 0;
    if (m < 2 || shared != ell) {
      result.reason = "size";
      return result;
    }
  }
  const bool loose = 2 * ell < k;
  // Vertex 0 can be rotated into window 0; it then sits first in its cell.
  std::vector<int> anchors;
  std::vector<Mask> seen;
  for (int p = 0; p < s; ++p) {
    const Mask sig = window_membership(layout, p);
    if (std::find(seen.begin(), seen.end(), sig) == seen.end()) {
      seen.push_back(sig);
      anchors.push_back(p);
    }
  }
  std::uint64_t nodes = 0;
  for (int anchor : anchors) {
    auto rooted = layout;
    rooted.preassigned[anchor] = 0;
    detail::EngineOptions eo;
    eo.budget = options.budget == 0 ? 0 : (options.budget > nodes ? options.budget - nodes : 1);
    eo.cover_bound = options.cover_bound;
    eo.fail_first = options.fail_first;
    if (loose && m >= 3) {
      if (anchor < ell) {
        // 0 shared by the last and first windows: reflection swaps the parts
        // those two windows do not share.
        eo.accept = [=](const std::vector<Vertex>& a, int j) {
          if (j != m - 1) return true;
          Vertex first = n, last = n;
          for (int p = ell; p < k; ++p) first = std::min(first, a[p]);
          for (int p = n - s; p < n; ++p) last = std::min(last, a[p]);
          return first < last;
        };
      } else {
        // 0 interior to window 0: reflection swaps its two shared cells.
        eo.accept = [=](const std::vector<Vertex>& a, int j) {
          if (j != 0) return true;
          Vertex left = n, right = n;
          for (int p = 0; p < ell; ++p) left = std::min(left, a[p]);
          for (int p = s; p < k; ++p) right = std::min(right, a[p]);
          return left < right;
        };
      }
    }
    auto run = detail::run_sequence_search(h, rooted, eo);
    nodes += run.nodes;
    if (run.status == SearchStatus::found) {
      EllCycle cycle{k, ell, run.assignment};
      if (!validate_cycle(h, cycle).valid) throw std::logic_error("search produced an invalid cycle");
      result.status = SearchStatus::found;
      result.cycle = std::move(cycle);
      result.nodes = nodes;
      return result;
    }
    if (run.status == SearchStatus::budget_exhausted) {
      result.status = SearchStatus::budget_exhausted;
      result.nodes = nodes;
      return result;
    }
  }
  result.status = SearchStatus::none_proven;
  result.reason = "exhausted";
  result.nodes = nodes;
  return result;
}

ConnectResult connect(const Hypergraph& h, int ell, const std::vector<Vertex>& s, const std::vector<Vertex>& t,
                      const ConnectOptions& options) {
  const int k = h.k();
  if (ell < 1 || ell >= k) throw DomainError("ell must satisfy 1 <= ell < k");
  if (static_cast<int>(s.size()) != ell || static_cast<int>(t.size()) != ell) {
    throw ArityError("ends must be ordered ell-tuples");
  }
  std::vector<Vertex> both = s;
  both.insert(both.end(), t.begin(), t.end());
  for (Vertex v : both) {
    if (v < 0 || v >= h.n()) throw DomainError("end vertex " + std::to_string(v) + " out of range");
  }
  std::sort(both.begin(), both.end());
  if (std::adjacent_find(both.begin(), both.end()) != both.end()) {
    throw DomainError("ends must be disjoint with distinct entries");
  }
  if (h.n() > kMaskVertices) throw DomainError("connect supports at most 64 vertices");
  ConnectResult result;
  const int step = k - ell;
  Mask forbidden = 0;
  for (Vertex v : options.forbidden) {
    if (v < h.n()) forbidden |= bit(v);
  }
  for (int len = std::max(1, options.min_len); len <= options.max_len; ++len) {
    const int size = k + (len - 1) * step;
    if (size < 2 * ell) continue;
    detail::Layout layout;
    layout.positions = size;
    for (int j = 0; j < len; ++j) {
      std::vector<int> w;
      for (int i = 0; i < k; ++i) w.push_back(j * step + i);
      layout.windows.push_back(std::move(w));
    }
    layout.preassigned.assign(static_cast<std::size_t>(size), -1);
    for (int i = 0; i < ell; ++i) {
      layout.preassigned[i] = s[i];
      layout.preassigned[size - ell + i] = t[i];
    }
    detail::EngineOptions eo;
    eo.forbidden = forbidden;
    eo.cover_bound = false;
    eo.fail_first = true;
    if (options.budget) {
      if (result.nodes >= options.budget) {
        result.status = SearchStatus::budget_exhausted;
        return result;
      }
      eo.budget = options.budget - result.nodes;
    }
    auto run = detail::run_sequence_search(h, layout, eo);
    result.nodes += run.nodes;
    if (run.status == SearchStatus::found) {
      EllPath path{k, ell, run.assignment};
      if (!validate_path(h, path).valid) throw std::logic_error("search produced an invalid path");
      result.status = SearchStatus::found;
      result.path = std::move(path);
      return result;
    }
    if (run.status == SearchStatus::budget_exhausted) {
      result.status = SearchStatus::budget_exhausted;
      return result;
    }
  }
  result.status = SearchStatus::none_proven;
  return result;
}

}  // namespace hyperham
