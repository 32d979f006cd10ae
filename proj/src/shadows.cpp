#include "hyperham/shadows.hpp"

#include "hyperham/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace hyperham {

namespace {

using SetCounts = std::unordered_map<VertexSet, std::uint64_t, VertexSetHash>;

SetCounts subset_counts(const Hypergraph& h, int r) {
  SetCounts counts;
  for (const auto& e : h.edges()) {
    for_each_subset(e.members(), r, [&](const std::vector<Vertex>& sub) {
      ++counts[VertexSet::from_sorted(sub)];
      return true;
    });
  }
  return counts;
}

Rational n_power(int n, int e) { return power(Rational(n), static_cast<unsigned>(std::max(e, 0))); }

}  // namespace

std::vector<VertexSet> robust_shadow(const Hypergraph& h, int ell, const Rational& eps) {
  if (ell < 1 || ell > h.k()) throw ArityError("shadow level must satisfy 1 <= ell <= k");
  if (eps < 0) throw DomainError("epsilon must be non-negative");
  const Rational threshold = eps * n_power(h.n(), ell);
  std::vector<VertexSet> out;
  for (const auto& [set, count] : subset_counts(h, h.k() - ell)) {
    if (Rational(count) > threshold) out.push_back(set);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational kk_bound(const BigInt& e_count, int k, int ell) {
  if (e_count < 0) throw DomainError("edge count must be non-negative");
  if (k < 1 || ell < 0 || ell > k) throw ArityError("need 0 <= ell <= k");
  if (e_count == 0) return 0;
  // smallest integer m with C(m, k) >= e
  std::int64_t m = k;
  while (binomial(m, k) < e_count) ++m;
  if (binomial(m, k) == e_count) return Rational(binomial(m, k - ell));
  Rational lo(m - 1), hi(m);
  const Rational width(1, BigInt(1) << 40);
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / 2;
    if (generalized_binomial(mid, k) <= Rational(e_count)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Rational value = generalized_binomial(lo, k - ell);
  const BigInt grid = BigInt(1) << 40;
  return Rational(floor_of(value * grid), grid);
}

std::vector<VertexSet> colex_family(int k, std::uint64_t count) {
  std::vector<VertexSet> out;
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) out.push_back(colex_unrank(r, k));
  return out;
}

Hypergraph neighbourhood_graph(const Hypergraph& h, const VertexSet& s, const VertexSet& avoid) {
  std::vector<VertexSet> out;
  if (s.empty()) throw ArityError("neighbourhood of the empty set");
  for (std::size_t i : h.incident(s[0])) {
    const auto& e = h.edges()[i];
    if (!e.contains_all(s)) continue;
    auto rest = set_difference(e, s);
    if (intersection_size(rest, avoid) == 0) out.push_back(std::move(rest));
  }
  return Hypergraph(h.k() - static_cast<int>(s.size()), h.n(), std::move(out));
}

ShadowIntersection shadow_intersection_witness(const Hypergraph& h, const std::vector<Vertex>& s,
                                               const std::vector<Vertex>& t, const Rational& eps,
                                               const VertexSet& forbidden) {
  const int k = h.k();
  const int ell = static_cast<int>(s.size());
  if (ell < 1 || static_cast<int>(t.size()) != ell) throw ArityError("S and T must be ell-tuples of equal size");
  if (2 * ell > k) throw DomainError("shadow intersection needs ell <= k/2");
  const VertexSet sset(s), tset(t);
  if (intersection_size(sset, tset) != 0) throw DomainError("S and T must be disjoint");
  const VertexSet avoid = set_union(set_union(sset, tset), forbidden);
  const auto ns = neighbourhood_graph(h, sset, avoid);
  const auto nt = neighbourhood_graph(h, tset, avoid);
  ShadowIntersection out;
  auto make_path = [&](const VertexSet& d, const VertexSet& s1, const VertexSet& t1) {
    std::vector<Vertex> order = s;
    for (Vertex v : set_difference(s1, d)) order.push_back(v);
    for (Vertex v : d) order.push_back(v);
    for (Vertex v : set_difference(t1, d)) order.push_back(v);
    order.insert(order.end(), t.begin(), t.end());
    return ShadowWitness{d, s1, t1, EllPath{k, ell, std::move(order)}};
  };
  if (2 * ell == k) {
    // direct mode: a common neighbour
    for (const auto& s1 : ns.edges()) {
      if (nt.has_edge(s1)) {
        out.common.push_back(s1);
        if (!out.witness) out.witness = make_path(s1, s1, s1);
      }
    }
    return out;
  }
  const auto shadow_s = robust_shadow(ns, ns.k() - ell, eps);
  const auto shadow_t = robust_shadow(nt, nt.k() - ell, eps);
  std::set_intersection(shadow_s.begin(), shadow_s.end(), shadow_t.begin(), shadow_t.end(),
                        std::back_inserter(out.common));
  for (const auto& d : out.common) {
    for (std::size_t i : ns.incident(d[0])) {
      const auto& s1 = ns.edges()[i];
      if (!s1.contains_all(d)) continue;
      for (std::size_t j : nt.incident(d[0])) {
        const auto& t1 = nt.edges()[j];
        if (t1.contains_all(d) && intersection_size(s1, t1) == d.size()) {
          out.witness = make_path(d, s1, t1);
          return out;
        }
      }
    }
  }
  return out;
}

CleanupResult iterated_cleanup(const Hypergraph& g, int ell, const Rational& eps, CleanupOrder order) {
  if (ell < 1 || ell > g.k()) throw ArityError("cleanup level must satisfy 1 <= ell <= uniformity");
  if (eps < 0) throw DomainError("epsilon must be non-negative");
  const Rational threshold = eps * n_power(g.n(), g.k() - ell);
  std::vector<VertexSet> edges = g.edges();
  std::vector<char> alive(edges.size(), 1);
  CleanupResult result;
  while (true) {
    std::map<VertexSet, std::vector<std::size_t>> through;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive[i]) continue;
      for_each_subset(edges[i].members(), ell, [&](const std::vector<Vertex>& sub) {
        through[VertexSet::from_sorted(sub)].push_back(i);
        return true;
      });
    }
    std::vector<const std::vector<std::size_t>*> batch;
    for (const auto& [b, list] : through) {
      if (Rational(list.size()) < threshold) batch.push_back(&list);
    }
    if (batch.empty()) break;
    ++result.rounds;
    // One low set per round, in the chosen order; degrees are recounted after.
    const auto* victim = order == CleanupOrder::ascending ? batch.front() : batch.back();
    for (std::size_t i : *victim) {
      if (alive[i]) {
        alive[i] = 0;
        ++result.deleted;
      }
    }
  }
  const Rational bound = threshold * Rational(binomial(g.n(), ell));
  if (Rational(result.deleted) > bound) throw std::logic_error("cleanup deleted more edges than the counting bound");
  std::vector<VertexSet> kept;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (alive[i]) kept.push_back(edges[i]);
  }
  result.graph = Hypergraph(g.k(), g.n(), std::move(kept));
  return result;
}

}  // namespace hyperham
