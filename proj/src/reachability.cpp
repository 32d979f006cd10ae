#include "hyperham/reachability.hpp"

#include "hyperham/errors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace hyperham {

namespace {

std::vector<Vertex> members(Mask m) { return VertexSet::from_mask(m).members(); }

Mask to_mask(const std::vector<Vertex>& vs) {
  Mask m = 0;
  for (Vertex v : vs) m |= bit(v);
  return m;
}

void check_regime(const Hypergraph& h, int ell) {
  if (ell < 1 || 2 * ell > h.k()) throw DomainError("reachability needs 1 <= ell <= k/2");
  if (!h.has_masks()) throw DomainError("reachability supports at most 64 vertices");
}

}  // namespace

std::vector<std::pair<Mask, Mask>> length_two_ends(const Hypergraph& h, Mask w, int ell) {
  const int k = h.k();
  std::vector<std::pair<Mask, Mask>> out;
  if (popcount(w) != 2 * k - ell) return out;
  const auto wv = members(w);
  for_each_subset(wv, k, [&](const std::vector<Vertex>& first) {
    const Mask e1 = to_mask(first);
    if (!h.has_edge(e1)) return true;
    const Mask outside = w & ~e1;
    for_each_subset(first, ell, [&](const std::vector<Vertex>& shared) {
      const Mask sm = to_mask(shared);
      if (!h.has_edge(outside | sm)) return true;
      const auto own1 = members(e1 & ~sm);
      const auto own2 = members(outside);
      for_each_subset(own1, ell, [&](const std::vector<Vertex>& a) {
        for_each_subset(own2, ell, [&](const std::vector<Vertex>& b) {
          out.emplace_back(to_mask(a), to_mask(b));
          return true;
        });
        return true;
      });
      return true;
    });
    return true;
  });
  // each unordered edge pair was seen from both sides, so the list is closed
  // under reversal already
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReachabilityProfile reachable_count(const Hypergraph& h, Vertex u, Vertex v, int ell) {
  check_regime(h, ell);
  if (u == v) throw DomainError("reachability needs two distinct vertices");
  if (u < 0 || v < 0 || u >= h.n() || v >= h.n()) throw DomainError("vertex out of range");
  const int k = h.k();
  ReachabilityProfile out;
  out.u = u;
  out.v = v;
  out.normalization = power(BigInt(h.n()), static_cast<unsigned>(2 * k - ell - 1));
  // T + u spans a length-two path, so T comes from an edge pair through u.
  std::unordered_set<Mask> candidates;
  const auto& masks = h.edge_masks();
  const Mask uv = bit(u) | bit(v);
  for (std::size_t i : h.incident(u)) {
    const Mask e1 = masks[i];
    if (e1 & bit(v)) continue;
    for (Vertex x : members(e1)) {
      for (std::size_t j : h.incident(x)) {
        const Mask e2 = masks[j];
        if (e2 & bit(v)) continue;
        if (popcount(e1 & e2) != ell) continue;
        candidates.insert((e1 | e2) & ~uv);
      }
    }
  }
  std::vector<Mask> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  for (Mask t : sorted) {
    if (popcount(t) != 2 * k - ell - 1) continue;
    const auto ends_u = length_two_ends(h, t | bit(u), ell);
    if (ends_u.empty()) continue;
    const auto ends_v = length_two_ends(h, t | bit(v), ell);
    bool shared = false;
    for (const auto& pair : ends_v) {
      if (std::binary_search(ends_u.begin(), ends_u.end(), pair)) {
        shared = true;
        break;
      }
    }
    out.count += shared;
  }
  out.beta = Rational(out.count) / Rational(out.normalization);
  return out;
}

ClosedPartition reachability_partition(const Hypergraph& h, int ell, const Rational& beta_min) {
  check_regime(h, ell);
  const int n = h.n();
  const BigInt norm = power(BigInt(n), static_cast<unsigned>(2 * h.k() - ell - 1));
  ClosedPartition out;
  out.counts.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const auto c = reachable_count(h, u, v, ell).count;
      out.counts[u][v] = out.counts[v][u] = c;
      if (c > 0 && Rational(c, norm) >= beta_min) {
        const int a = find(u), b = find(v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<Vertex>> groups(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) groups[find(v)].push_back(v);
  for (auto& g : groups) {
    if (g.empty()) continue;
    if (g.size() == 1) {
      out.leftover.push_back(g[0]);
      continue;
    }
    Rational least = -1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const Rational beta(out.counts[g[i]][g[j]], norm);
        if (least < 0 || beta < least) least = beta;
      }
    }
    out.parts.push_back(g);
    out.min_pair_beta.push_back(least);
  }
  std::sort(out.leftover.begin(), out.leftover.end());
  return out;
}

PigeonholePair pigeonhole_pair(const Hypergraph& h, int d, int ell, const std::vector<Vertex>& vertices) {
  std::vector<Vertex> distinct = vertices;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() != vertices.size() || vertices.size() < 2) {
    throw DomainError("need at least two distinct vertices");
  }
  if (d < 1 || d > h.k() - 1) throw ArityError("d outside [1, k-1]");
  for (Vertex v : vertices) {
    if (v < 0 || v >= h.n()) throw DomainError("vertex out of range");
  }
  std::vector<std::unordered_set<VertexSet, VertexSetHash>> links;
  for (Vertex v : vertices) {
    std::unordered_set<VertexSet, VertexSetHash> link_sets;
    for (std::size_t i : h.incident(v)) {
      auto rest = h.edges()[i].members();
      rest.erase(std::find(rest.begin(), rest.end(), v));
      link_sets.insert(VertexSet::from_sorted(std::move(rest)));
    }
    links.push_back(std::move(link_sets));
  }
  PigeonholePair out;
  bool have = false;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const auto& small = links[i].size() <= links[j].size() ? links[i] : links[j];
      const auto& large = links[i].size() <= links[j].size() ? links[j] : links[i];
      std::uint64_t common = 0;
      for (const auto& s : small) common += large.count(s);
      if (!have || common > out.common) {
        have = true;
        out.first = vertices[i];
        out.second = vertices[j];
        out.common = common;
      }
    }
  }
  out.reach = reachable_count(h, out.first, out.second, ell);
  out.min_degree = h.n() >= d ? min_degree(h, d) : 0;
  out.hypothesis = Rational(out.min_degree) * static_cast<int>(vertices.size()) > Rational(binomial(h.n(), h.k() - d));
  return out;
}

}  // namespace hyperham
