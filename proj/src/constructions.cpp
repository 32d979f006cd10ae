#include "hyperham/constructions.hpp"

#include "hyperham/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperham {

int SpaceBarrierSpec::a() const {
  const int s = k - ell;
  return (n + 2 * s - 1) / (2 * s) - 1;
}

void SpaceBarrierSpec::check() const {
  if (k < 2) throw DomainError("k must be at least 2");
  if (ell < 1 || 2 * ell >= k) throw DomainError("space barrier needs 1 <= ell < k/2");
  if (n < 1) throw DomainError("n must be positive");
  if (n % (k - ell) != 0) throw DomainError("k - ell must divide n");
}

Hypergraph space_barrier(const SpaceBarrierSpec& spec) {
  spec.check();
  const int a = spec.a();
  std::vector<VertexSet> edges;
  for_each_combination(spec.n, spec.k, [&](const std::vector<Vertex>& c) {
    if (c[0] < a) edges.push_back(VertexSet::from_sorted(c));
    return true;
  });
  return Hypergraph(spec.k, spec.n, std::move(edges));
}

BigInt space_barrier_degree_formula(const SpaceBarrierSpec& spec, int d) {
  spec.check();
  if (d < 1 || d > spec.k - 1) throw ArityError("d outside [1, k-1]");
  const int n = spec.n, k = spec.k, a = spec.a();
  if (n < d) throw DomainError("n < d");
  // Sets of size d avoiding A have the fewest extensions meeting A.
  if (n - a >= d) return binomial(n - d, k - d) - binomial(n - a - d, k - d);
  return binomial(n - d, k - d);
}

BarrierDegree space_barrier_min_degree(const SpaceBarrierSpec& spec, int d, bool verify) {
  BarrierDegree out;
  out.value = space_barrier_degree_formula(spec, d);
  const BigInt total = binomial(spec.n, spec.k - d);
  out.normalized = total == 0 ? Rational(0) : Rational(out.value, total);
  if (verify) {
    const auto h = space_barrier(spec);
    const BigInt exact = min_degree(h, d);
    if (exact != out.value) {
      throw std::logic_error("closed-form barrier degree " + out.value.str() + " differs from exhaustive " + exact.str());
    }
    out.verified = true;
  }
  return out;
}

Hypergraph pattern_Y(int k, int b) {
  if (k < 1) throw DomainError("k must be positive");
  if (b < 0 || b >= k) throw DomainError("pattern Y needs 0 <= b < k");
  std::vector<Vertex> first, second;
  for (int i = 0; i < k; ++i) {
    first.push_back(i);
    second.push_back(k - b + i);
  }
  return Hypergraph(k, 2 * k - b, {VertexSet::from_sorted(first), VertexSet::from_sorted(second)});
}

Hypergraph random_graph(int k, int n, double p, SplitMix64& rng) {
  if (p < 0.0 || p > 1.0) throw DomainError("density must lie in [0, 1]");
  std::vector<VertexSet> edges;
  for_each_combination(n, k, [&](const std::vector<Vertex>& c) {
    if (rng.bernoulli(p)) edges.push_back(VertexSet::from_sorted(c));
    return true;
  });
  return Hypergraph(k, n, std::move(edges));
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  if (a.k() != b.k()) throw DomainError("uniformities differ");
  std::vector<VertexSet> edges = a.edges();
  for (const auto& e : b.edges()) {
    std::vector<Vertex> shifted;
    for (Vertex v : e) shifted.push_back(v + a.n());
    edges.push_back(VertexSet::from_sorted(std::move(shifted)));
  }
  return Hypergraph(a.k(), a.n() + b.n(), std::move(edges));
}

namespace {

Validation gadget_fail(int property, const std::string& why) {
  Validation v;
  v.valid = false;
  v.violation = property > 0 ? "property " + std::to_string(property) + ": " + why : why;
  return v;
}

std::vector<Vertex> sorted_copy(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Validation validate_gadget(const Hypergraph& h, const GadgetCertificate& cert) {
  const int k = cert.k, ell = cert.ell;
  if (k != h.k()) return gadget_fail(0, "certificate uniformity differs from host");
  if (ell < 1 || ell >= k) return gadget_fail(0, "ell must satisfy 1 <= ell < k");
  const auto sp = sorted_copy(cert.s_prime);
  const auto xs = sorted_copy(cert.x);
  std::vector<Vertex> all;
  std::set_union(sp.begin(), sp.end(), xs.begin(), xs.end(), std::back_inserter(all));
  for (Vertex v : all) {
    if (v < 0 || v >= h.n()) return gadget_fail(0, "vertex " + std::to_string(v) + " outside the host");
  }
  // (1)
  long long cap = 1;
  for (int i = 0; i < 4; ++i) cap *= k;
  if (static_cast<long long>(all.size()) > cap) return gadget_fail(1, "more than k^4 vertices");
  // (2)
  if (std::adjacent_find(sp.begin(), sp.end()) != sp.end() || std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    return gadget_fail(2, "repeated vertex in S' or X");
  }
  if (all.size() != sp.size() + xs.size()) return gadget_fail(2, "S' and X intersect");
  if (static_cast<int>(sp.size()) != k - ell) return gadget_fail(2, "|S'| is not k - ell");
  // classes partition the vertex set
  if (static_cast<int>(cert.classes.size()) != k) return gadget_fail(0, "need exactly k classes");
  std::vector<int> class_of(static_cast<std::size_t>(h.n()), -1);
  std::size_t class_total = 0;
  for (int c = 0; c < k; ++c) {
    for (Vertex v : cert.classes[c]) {
      if (v < 0 || v >= h.n() || !std::binary_search(all.begin(), all.end(), v)) {
        return gadget_fail(0, "class member " + std::to_string(v) + " outside S' + X");
      }
      if (class_of[v] >= 0) return gadget_fail(0, "vertex " + std::to_string(v) + " in two classes");
      class_of[v] = c;
      ++class_total;
    }
  }
  if (class_total != all.size()) return gadget_fail(0, "classes do not cover S' + X");
  // (3)
  if (cert.p.k != k || cert.p.ell != ell) return gadget_fail(3, "P has the wrong parameters");
  if (auto v = validate_path(h, cert.p); !v.valid) return gadget_fail(3, "P is not an ell-path: " + v.violation);
  if (sorted_copy(cert.p.order) != xs) return gadget_fail(3, "P does not span X");
  if (static_cast<int>(cert.begin_end.size()) != ell || static_cast<int>(cert.end_end.size()) != ell) {
    return gadget_fail(3, "recorded ends are not ell-tuples");
  }
  if (cert.p.begin_end() != cert.begin_end || cert.p.end_end() != cert.end_end) {
    return gadget_fail(3, "P does not have the recorded ends");
  }
  // (4)
  if (cert.q.k != k || cert.q.ell != ell) return gadget_fail(4, "Q has the wrong parameters");
  if (auto v = validate_path(h, cert.q); !v.valid) return gadget_fail(4, "Q is not an ell-path: " + v.violation);
  if (sorted_copy(cert.q.order) != all) return gadget_fail(4, "Q does not span S' + X");
  if (cert.q.begin_end() != cert.begin_end || cert.q.end_end() != cert.end_end) {
    return gadget_fail(4, "Q does not have the recorded ends");
  }
  // (5) and k-partiteness, over edges of h inside the gadget
  const VertexSet gadget_set = VertexSet::from_sorted(all);
  for (const auto& e : h.edges()) {
    if (!gadget_set.contains_all(e)) continue;
    int in_s = 0;
    std::vector<char> colour(static_cast<std::size_t>(k), 0);
    for (Vertex v : e) {
      in_s += std::binary_search(sp.begin(), sp.end(), v);
      if (colour[class_of[v]]++) return gadget_fail(0, "edge " + e.to_string() + " meets a class twice");
    }
    if (in_s > 1) return gadget_fail(5, "edge " + e.to_string() + " has more than one vertex of S'");
  }
  // (6)
  for (int c = 0; c < k; ++c) {
    int in_s = 0;
    for (Vertex v : cert.classes[c]) in_s += std::binary_search(sp.begin(), sp.end(), v);
    if (in_s > 1) return gadget_fail(6, "class " + std::to_string(c + 1) + " has more than one vertex of S'");
  }
  return {};
}

namespace {

struct GadgetBudget {};

// Colour vertices of `order` so that every window is rainbow and the S'
// vertices get distinct colours.
class Colouring {
 public:
  Colouring(int k, int vertices, const std::vector<std::vector<Vertex>>& edges, const std::vector<Vertex>& sprime,
            std::uint64_t budget, std::uint64_t& nodes)
      : k_(k), edges_(edges), budget_(budget), nodes_(nodes), colour_(static_cast<std::size_t>(vertices), -1),
        is_s_(static_cast<std::size_t>(vertices), 0), edges_of_(static_cast<std::size_t>(vertices)) {
    for (Vertex v : sprime) is_s_[v] = 1;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (Vertex v : edges[i]) edges_of_[v].push_back(i);
    }
  }

  bool solve(const std::vector<Vertex>& order) {
    // the first edge is coloured 0..k-1 by symmetry
    for (int i = 0; i < k_; ++i) colour_[edges_[0][i]] = i;
    return rec(order, 0);
  }

  const std::vector<int>& colours() const { return colour_; }

 private:
  bool ok(Vertex v, int c) const {
    for (std::size_t i : edges_of_[v]) {
      for (Vertex u : edges_[i]) {
        if (u != v && colour_[u] == c) return false;
      }
    }
    if (is_s_[v]) {
      for (std::size_t u = 0; u < colour_.size(); ++u) {
        if (is_s_[u] && static_cast<Vertex>(u) != v && colour_[u] == c) return false;
      }
    }
    return true;
  }

  bool rec(const std::vector<Vertex>& order, std::size_t i) {
    if (i == order.size()) return true;
    const Vertex v = order[i];
    if (colour_[v] >= 0) return rec(order, i + 1);
    for (int c = 0; c < k_; ++c) {
      if (!ok(v, c)) continue;
      if (budget_ && ++nodes_ > budget_) throw GadgetBudget{};
      colour_[v] = c;
      if (rec(order, i + 1)) return true;
      colour_[v] = -1;
    }
    return false;
  }

  int k_;
  const std::vector<std::vector<Vertex>>& edges_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::vector<int> colour_;
  std::vector<char> is_s_;
  std::vector<std::vector<std::size_t>> edges_of_;
};

}  // namespace

GadgetSearchResult search_gadget(int k, int ell, int size_cap, std::uint64_t budget) {
  if (k < 2 || ell < 1 || ell >= k) throw DomainError("gadget search needs 1 <= ell < k");
  const int s = k - ell;
  if (k % s == 0) throw DomainError("gadget search needs (k - ell) not dividing k");
  if (size_cap <= 0) size_cap = k * k * k * k;
  GadgetSearchResult result;
  try {
    for (int len = 1;; ++len) {
      const int xsize = k + (len - 1) * s;
      const int total = xsize + s;
      if (total > size_cap) break;
      const int qwindows = len + 1;
      // interior Q positions for S'
      std::vector<Vertex> interior;
      for (int p = ell; p < total - ell; ++p) interior.push_back(p);
      bool found = false;
      for_each_subset(interior, s, [&](const std::vector<Vertex>& spos) {
        for (int j = 0; j < qwindows; ++j) {
          int hits = 0;
          for (int p : spos) hits += p >= j * s && p < j * s + k;
          if (hits > 1) return true;
        }
        // X takes labels 0..xsize-1 along P; S' takes xsize.. in Q order.
        std::vector<Vertex> qorder;
        int next_x = 0, next_s = xsize;
        for (int p = 0; p < total; ++p) {
          if (std::find(spos.begin(), spos.end(), p) != spos.end()) {
            qorder.push_back(next_s++);
          } else {
            qorder.push_back(next_x++);
          }
        }
        std::vector<Vertex> porder(static_cast<std::size_t>(xsize));
        for (int i = 0; i < xsize; ++i) porder[i] = i;
        std::vector<std::vector<Vertex>> edges;
        for (int j = 0; j < len; ++j) edges.emplace_back(porder.begin() + j * s, porder.begin() + j * s + k);
        for (int j = 0; j < qwindows; ++j) edges.emplace_back(qorder.begin() + j * s, qorder.begin() + j * s + k);
        std::vector<Vertex> sprime;
        for (int v = xsize; v < total; ++v) sprime.push_back(v);
        Colouring colouring(k, total, edges, sprime, budget, result.nodes);
        if (!colouring.solve(qorder)) return true;
        std::vector<VertexSet> edge_sets;
        for (const auto& e : edges) {
          VertexSet set(e);
          if (std::find(edge_sets.begin(), edge_sets.end(), set) == edge_sets.end()) edge_sets.push_back(set);
        }
        Gadget g{Hypergraph(k, total, std::move(edge_sets)), {}};
        auto& cert = g.cert;
        cert.k = k;
        cert.ell = ell;
        cert.classes.assign(static_cast<std::size_t>(k), {});
        for (Vertex v = 0; v < total; ++v) cert.classes[colouring.colours()[v]].push_back(v);
        cert.s_prime = sprime;
        cert.x = porder;
        cert.p = EllPath{k, ell, porder};
        cert.q = EllPath{k, ell, qorder};
        cert.begin_end = cert.p.begin_end();
        cert.end_end = cert.p.end_end();
        if (auto v = validate_gadget(g.graph, cert); !v.valid) {
          throw std::logic_error("gadget search produced an invalid certificate: " + v.violation);
        }
        result.gadget = std::move(g);
        result.vertices = total;
        found = true;
        return false;
      });
      if (found) {
        result.status = SearchStatus::found;
        return result;
      }
    }
  } catch (const GadgetBudget&) {
    result.status = SearchStatus::budget_exhausted;
    return result;
  }
  result.status = SearchStatus::none_proven;
  return result;
}

}  // namespace hyperham
