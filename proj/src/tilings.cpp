#include "hyperham/tilings.hpp"

#include "hyperham/errors.hpp"
#include "hyperham/lp.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace hyperham {

namespace {

void check_pattern(const Hypergraph& f) {
  if (f.edge_count() == 0) throw DomainError("pattern has no edges");
  for (Vertex v = 0; v < f.n(); ++v) {
    if (f.incident(v).empty()) throw DomainError("pattern has an isolated vertex");
  }
}

using CopyIndex = std::unordered_map<VertexSet, std::size_t, VertexSetHash>;

void record(std::vector<Copy>& out, CopyIndex& index, VertexSet vertices, std::vector<VertexSet> edges) {
  if (index.count(vertices)) return;
  index.emplace(vertices, out.size());
  std::sort(edges.begin(), edges.end());
  out.push_back(Copy{std::move(vertices), std::move(edges)});
}

// Edge-driven embedding: F's edges are mapped in order, each onto an edge of H
// extending the partial vertex map.
class Embedder {
 public:
  Embedder(const Hypergraph& h, const Hypergraph& f, std::vector<Copy>& out, CopyIndex& index)
      : h_(h), f_(f), out_(out), index_(index), image_(static_cast<std::size_t>(f.n()), -1),
        used_(static_cast<std::size_t>(h.n()), 0) {}

  void run() { rec(0); }

 private:
  void rec(std::size_t i) {
    if (i == f_.edge_count()) {
      std::vector<Vertex> vs(image_.begin(), image_.end());
      std::vector<VertexSet> edges;
      for (const auto& fe : f_.edges()) {
        std::vector<Vertex> mapped;
        for (Vertex x : fe) mapped.push_back(image_[x]);
        edges.emplace_back(std::move(mapped));
      }
      record(out_, index_, VertexSet(std::move(vs)), std::move(edges));
      return;
    }
    const auto& fe = f_.edges()[i];
    std::vector<Vertex> fixed, open;
    for (Vertex x : fe) (image_[x] >= 0 ? fixed : open).push_back(x);
    std::vector<Vertex> fixed_images;
    for (Vertex x : fixed) fixed_images.push_back(image_[x]);
    std::sort(fixed_images.begin(), fixed_images.end());
    const VertexSet need = VertexSet::from_sorted(fixed_images);
    auto try_edge = [&](const VertexSet& e) {
      if (!e.contains_all(need)) return;
      std::vector<Vertex> rest;
      for (Vertex v : e) {
        if (need.contains(v)) continue;
        if (used_[v]) return;
        rest.push_back(v);
      }
      do {
        for (std::size_t t = 0; t < open.size(); ++t) {
          image_[open[t]] = rest[t];
          used_[rest[t]] = 1;
        }
        rec(i + 1);
        for (std::size_t t = 0; t < open.size(); ++t) {
          image_[open[t]] = -1;
          used_[rest[t]] = 0;
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
    };
    if (need.empty()) {
      for (const auto& e : h_.edges()) try_edge(e);
    } else {
      for (std::size_t j : h_.incident(need[0])) try_edge(h_.edges()[j]);
    }
  }

  const Hypergraph& h_;
  const Hypergraph& f_;
  std::vector<Copy>& out_;
  CopyIndex& index_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
};

}  // namespace

std::vector<Copy> enumerate_copies(const Hypergraph& h, const Hypergraph& f) {
  check_pattern(f);
  if (f.k() != h.k()) throw DomainError("pattern and host uniformities differ");
  std::vector<Copy> out;
  CopyIndex index;
  if (f.edge_count() == 2) {
    // two edges meeting in b vertices: scan ordered edge pairs
    const std::size_t b = intersection_size(f.edges()[0], f.edges()[1]);
    const auto& edges = h.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto consider = [&](std::size_t j) {
        if (j <= i || intersection_size(edges[i], edges[j]) != b) return;
        record(out, index, set_union(edges[i], edges[j]), {edges[i], edges[j]});
      };
      if (b == 0) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) consider(j);
      } else {
        for (Vertex v : edges[i]) {
          for (std::size_t j : h.incident(v)) consider(j);
        }
      }
    }
  } else {
    Embedder(h, f, out, index).run();
  }
  std::sort(out.begin(), out.end(), [](const Copy& a, const Copy& b) { return a.vertices < b.vertices; });
  return out;
}

bool is_copy(const Hypergraph& h, const Hypergraph& f, const Copy& copy) {
  if (copy.edges.size() != f.edge_count()) return false;
  if (static_cast<int>(copy.vertices.size()) != f.n()) return false;
  VertexSet covered;
  for (const auto& e : copy.edges) {
    if (!h.has_edge(e)) return false;
    covered = set_union(covered, e);
  }
  if (covered != copy.vertices) return false;
  std::vector<VertexSet> target = copy.edges;
  std::sort(target.begin(), target.end());
  if (std::adjacent_find(target.begin(), target.end()) != target.end()) return false;
  std::vector<Vertex> perm = copy.vertices.members();
  do {
    std::vector<VertexSet> mapped;
    for (const auto& fe : f.edges()) {
      std::vector<Vertex> m;
      for (Vertex x : fe) m.push_back(perm[x]);
      mapped.emplace_back(std::move(m));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

FractionalTiling max_fractional_tiling(const Hypergraph& h, const Hypergraph& f) {
  FractionalTiling out;
  out.copies = enumerate_copies(h, f);
  const std::size_t m = out.copies.size();
  const int n = h.n();
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n), std::vector<Rational>(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (Vertex v : out.copies[j].vertices) a[v][j] = 1;
  }
  const std::vector<Rational> b(static_cast<std::size_t>(n), Rational(1));
  const std::vector<Rational> c(m, Rational(1));
  const auto lp = maximize(a, b, c);
  out.weights = lp.primal;
  out.size = lp.value;
  out.vertex_duals = lp.dual;
  out.dual_verified = lp.dual_verified;
  out.pivots = lp.pivots;
  return out;
}

namespace {

struct TilingBudget {};

class TilingSearch {
 public:
  TilingSearch(const std::vector<Copy>& copies, int n, int p, std::uint64_t budget)
      : n_(n), p_(p), budget_(budget), by_vertex_(static_cast<std::size_t>(n)) {
    for (std::size_t i = 0; i < copies.size(); ++i) {
      masks_.push_back(copies[i].vertices.mask());
      for (Vertex v : copies[i].vertices) by_vertex_[v].push_back(i);
    }
  }

  void greedy() {
    Mask used = 0;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if ((masks_[i] & used) == 0) {
        used |= masks_[i];
        best_.push_back(i);
      }
    }
  }

  bool search(std::uint64_t bound) {
    bound_ = bound;
    const Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
    try {
      rec(all);
    } catch (const TilingBudget&) {
      return false;
    }
    return true;
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void rec(Mask free) {
    if (best_.size() >= bound_) return;
    Mask coverable = 0;
    for (Mask m : masks_) {
      if ((m & free) == m) coverable |= m;
    }
    if (current_.size() + static_cast<std::size_t>(popcount(coverable) / p_) <= best_.size()) return;
    if (coverable == 0) return;
    if (budget_ && ++nodes_ > budget_) throw TilingBudget{};
    const Vertex v = __builtin_ctzll(coverable);
    for (std::size_t i : by_vertex_[v]) {
      if ((masks_[i] & coverable) != masks_[i]) continue;
      current_.push_back(i);
      if (current_.size() > best_.size()) best_ = current_;
      rec(free & ~masks_[i]);
      current_.pop_back();
      if (best_.size() >= bound_) return;
    }
    // leave v uncovered
    rec(coverable & ~bit(v));
  }

  int n_;
  int p_;
  std::uint64_t budget_;
  std::uint64_t bound_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<Mask> masks_;
  std::vector<std::vector<std::size_t>> by_vertex_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
};

}  // namespace

Tiling max_tiling(const Hypergraph& h, const Hypergraph& f, std::uint64_t budget) {
  if (!h.has_masks()) throw DomainError("tiling search supports at most 64 vertices");
  const auto copies = enumerate_copies(h, f);
  const int p = f.n();
  std::uint64_t bound = static_cast<std::uint64_t>(h.n() / p);
  if (!copies.empty() && copies.size() <= 4000) {
    const auto frac = max_fractional_tiling(h, f);
    bound = std::min(bound, static_cast<std::uint64_t>(floor_of(frac.size)));
  }
  if (copies.empty()) bound = 0;
  TilingSearch search(copies, h.n(), p, budget);
  search.greedy();
  const bool complete = search.search(bound);
  Tiling out;
  for (std::size_t i : search.best()) out.copies.push_back(copies[i]);
  std::sort(out.copies.begin(), out.copies.end(), [](const Copy& a, const Copy& b) { return a.vertices < b.vertices; });
  out.covered = static_cast<int>(out.copies.size()) * p;
  out.nodes = search.nodes();
  out.upper_bound = complete ? out.copies.size() : bound;
  out.optimal = complete || out.copies.size() == bound;
  return out;
}

Rational thm_A3_bound(int n, const Rational& alpha, const Rational& gamma) {
  if (n < 1) throw DomainError("n must be positive");
  if (alpha <= 0 || alpha >= Rational(1, 4)) throw DomainError("alpha must lie in (0, 1/4)");
  if (gamma < 0 || gamma >= Rational(1, 4)) throw DomainError("gamma must lie in [0, 1/4)");
  const Rational nn(n);
  const Rational first = generalized_binomial(4 * alpha * nn, 3);
  const Rational second = generalized_binomial(nn, 3) - generalized_binomial(nn - alpha * nn, 3);
  return std::max(first, second) + gamma * nn * nn * nn;
}

Rational thm_A3_limit(const Rational& alpha) {
  if (alpha <= 0 || alpha >= Rational(1, 4)) throw DomainError("alpha must lie in (0, 1/4)");
  const Rational first = power(Rational(4 * alpha), 3);
  const Rational second = 1 - power(Rational(1 - alpha), 3);
  return std::max(first, second);
}

Rational thm_A4_chain(int n) {
  if (n < 7) throw DomainError("the chain needs n >= 7");
  const Rational alpha(n, 6 * (n - 2));
  return thm_A3_bound(n - 2, alpha, 0) / Rational(binomial(n - 2, 3));
}

std::vector<int> index_vector(const std::vector<std::vector<Vertex>>& parts, const VertexSet& s) {
  std::vector<int> out(parts.size(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) out[i] += s.contains(v);
  }
  return out;
}

PartitionIndex robust_edge_vectors(const Hypergraph& h, const std::vector<std::vector<Vertex>>& parts,
                                   const Rational& mu) {
  std::vector<int> part_of(static_cast<std::size_t>(h.n()), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) {
      if (v < 0 || v >= h.n()) throw DomainError("partition vertex out of range");
      if (part_of[v] >= 0) throw DomainError("vertex " + std::to_string(v) + " in two parts");
      part_of[v] = static_cast<int>(i);
    }
  }
  for (Vertex v = 0; v < h.n(); ++v) {
    if (part_of[v] < 0) throw DomainError("partition misses vertex " + std::to_string(v));
  }
  if (mu < 0) throw DomainError("mu must be non-negative");
  PartitionIndex out;
  out.parts = parts;
  out.mu = mu;
  out.threshold = mu * power(Rational(h.n()), static_cast<unsigned>(h.k()));
  for (const auto& e : h.edges()) {
    std::vector<int> vec(parts.size(), 0);
    for (Vertex v : e) ++vec[part_of[v]];
    ++out.census[vec];
  }
  for (const auto& [vec, count] : out.census) {
    const Rational c(count);
    if (c > out.threshold) out.robust.push_back(vec);
    if (c >= out.threshold) {
      out.robust_at_least.push_back(vec);
      const auto touched = std::count_if(vec.begin(), vec.end(), [](int x) { return x > 0; });
      if (touched >= 2) out.mixed.push_back(vec);
    }
  }
  out.mixed_present = !out.mixed.empty();
  return out;
}

}  // namespace hyperham
