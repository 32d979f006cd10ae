#include "hyperham/constructions.hpp"
#include "hyperham/errors.hpp"
#include "hyperham/lp.hpp"
#include "hyperham/tilings.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>

using namespace hyperham;

namespace {

// vertex sets spanning Y_{k,b}: two edges meeting in exactly b vertices
std::set<std::vector<int>> y_copies(const Hypergraph& h, int b) {
  std::set<std::vector<int>> out;
  const auto& es = h.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (static_cast<int>(intersection_size(es[i], es[j])) != b) continue;
      out.insert(set_union(es[i], es[j]).members());
    }
  }
  return out;
}

int max_disjoint(const std::vector<std::vector<int>>& sets, std::size_t from, std::uint64_t used) {
  int best = 0;
  for (std::size_t i = from; i < sets.size(); ++i) {
    std::uint64_t m = 0;
    for (int v : sets[i]) m |= std::uint64_t{1} << v;
    if (m & used) continue;
    best = std::max(best, 1 + max_disjoint(sets, i + 1, used | m));
  }
  return best;
}

// primal feasible, dual feasible, equal objectives
void check_certificate(const Hypergraph& h, const FractionalTiling& t) {
  std::vector<Rational> load(static_cast<std::size_t>(h.n()));
  Rational total = 0;
  for (std::size_t j = 0; j < t.copies.size(); ++j) {
    ASSERT_GE(t.weights[j], 0);
    ASSERT_LE(t.weights[j], 1);
    total += t.weights[j];
    for (Vertex v : t.copies[j].vertices) load[v] += t.weights[j];
  }
  for (const auto& l : load) EXPECT_LE(l, 1);
  EXPECT_EQ(total, t.size);
  ASSERT_EQ(t.vertex_duals.size(), static_cast<std::size_t>(h.n()));
  Rational dual = 0;
  for (const auto& y : t.vertex_duals) {
    EXPECT_GE(y, 0);
    dual += y;
  }
  for (const auto& c : t.copies) {
    Rational cover = 0;
    for (Vertex v : c.vertices) cover += t.vertex_duals[v];
    EXPECT_GE(cover, 1);
  }
  EXPECT_EQ(dual, t.size);
}

}  // namespace

TEST(Copies, MatchPairScan) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto h = oracle::random_graph(3, 8, 0.3, 5000 + seed);
    const auto copies = enumerate_copies(h, pattern_Y(3, 2));
    std::set<std::vector<int>> got;
    for (const auto& c : copies) {
      got.insert(c.vertices.members());
      EXPECT_TRUE(is_copy(h, pattern_Y(3, 2), c));
    }
    EXPECT_EQ(got, y_copies(h, 2));
    EXPECT_EQ(got.size(), copies.size());
  }
}

TEST(Copies, IsCopyRejectsWrongShape) {
  const auto h = complete_graph(3, 6);
  Copy c{VertexSet{0, 1, 2, 3}, {VertexSet{0, 1, 2}, VertexSet{0, 1, 3}}};
  EXPECT_TRUE(is_copy(h, pattern_Y(3, 2), c));
  Copy bad{VertexSet{0, 1, 2, 3, 4}, {VertexSet{0, 1, 2}, VertexSet{2, 3, 4}}};
  EXPECT_FALSE(is_copy(h, pattern_Y(3, 2), bad));
  EXPECT_TRUE(is_copy(h, pattern_Y(3, 1), bad));
}

TEST(MaxTiling, CompleteEight) {
  const auto t = max_tiling(complete_graph(3, 8), pattern_Y(3, 2));
  EXPECT_EQ(t.copies.size(), 2u);
  EXPECT_EQ(t.covered, 8);
  EXPECT_TRUE(t.optimal);
}

TEST(MaxTiling, SingleCopy) {
  const auto f = pattern_Y(5, 4);
  const auto t = max_tiling(f, f);
  EXPECT_EQ(t.copies.size(), 1u);
  EXPECT_TRUE(t.optimal);
}

TEST(MaxTiling, BarrierTwelve) {
  const auto h = space_barrier({3, 1, 12});
  const auto t = max_tiling(h, pattern_Y(3, 2));
  EXPECT_TRUE(t.optimal);
  EXPECT_EQ(t.copies.size(), 2u);
  const auto sets = y_copies(h, 2);
  EXPECT_EQ(max_disjoint({sets.begin(), sets.end()}, 0, 0), 2);
}

TEST(MaxTilingProperty, OptimumMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto h = oracle::random_graph(3, 10, 0.08 + 0.02 * (seed % 5), 5100 + seed);
    const auto f = pattern_Y(3, seed % 2 ? 2 : 1);
    const auto t = max_tiling(h, f);
    ASSERT_TRUE(t.optimal);
    const auto sets = y_copies(h, seed % 2 ? 2 : 1);
    EXPECT_EQ(static_cast<int>(t.copies.size()), max_disjoint({sets.begin(), sets.end()}, 0, 0)) << "seed " << seed;
    std::uint64_t used = 0;
    for (const auto& c : t.copies) {
      EXPECT_TRUE(is_copy(h, f, c));
      EXPECT_EQ(used & c.vertices.mask(), 0u);
      used |= c.vertices.mask();
    }
    const auto frac = max_fractional_tiling(h, f);
    EXPECT_GE(frac.size, Rational(t.copies.size()));
  }
}

TEST(FractionalTiling, PerfectOnCompleteGraphs) {
  for (int n : {8, 12}) {
    const auto h = complete_graph(3, n);
    const auto t = max_fractional_tiling(h, pattern_Y(3, 2));
    EXPECT_EQ(t.size, Rational(n, 4));
    EXPECT_TRUE(t.dual_verified);
    check_certificate(h, t);
  }
}

TEST(FractionalTiling, SingleCopy) {
  const auto f = pattern_Y(3, 2);
  const auto t = max_fractional_tiling(f, f);
  EXPECT_EQ(t.size, 1);
  check_certificate(f, t);
}

TEST(FractionalTiling, BarrierDualBound) {
  const auto h = space_barrier({3, 1, 12});
  const auto t = max_fractional_tiling(h, pattern_Y(3, 2));
  check_certificate(h, t);
  // y = 1 on A = {0,1} covers every copy, so the value is at most 2
  EXPECT_LE(t.size, 2);
  EXPECT_EQ(t.size, 2);
}

TEST(FractionalTilingProperty, WeakDualityOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto h = oracle::random_graph(3, 9, 0.15 + 0.05 * (seed % 4), 5200 + seed);
    const auto t = max_fractional_tiling(h, pattern_Y(3, 2));
    EXPECT_TRUE(t.dual_verified);
    check_certificate(h, t);
    const auto integral = max_tiling(h, pattern_Y(3, 2));
    EXPECT_GE(t.size, Rational(integral.copies.size()));
  }
}

// A Y_{3,2} in the link of {x,y} lifts to a Y_{5,4}; when every pair link is
// as dense as the 3-graph tiling bound at n-2, a fractional Y_{5,4}-tiling of size n/6
// is expected.
TEST(FractionalTilingProperty, LinkTransferSpotCheck) {
  const int n = 12;
  const Rational alpha(n, 6 * (n - 2));
  const Rational need = thm_A3_bound(n - 2, alpha, 0);
  EXPECT_EQ(need, 64);
  int applicable = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto h = seed == 0 ? complete_graph(5, n) : oracle::random_graph(5, n, 0.75 + 0.05 * seed, 5300 + seed);
    const auto y54 = pattern_Y(5, 4);
    // lifting
    const auto l = link(h, {0, 1});
    for (const auto& c : enumerate_copies(l, pattern_Y(3, 2))) {
      std::vector<VertexSet> lifted;
      for (const auto& e : c.edges) lifted.push_back(set_union(e, VertexSet{0, 1}));
      EXPECT_TRUE(is_copy(h, y54, Copy{set_union(c.vertices, VertexSet{0, 1}), lifted}));
    }
    if (Rational(BigInt(min_degree(h, 2))) < need) continue;
    ++applicable;
    const auto t = max_fractional_tiling(h, y54);
    EXPECT_GE(t.size, Rational(n, 6)) << "seed " << seed;
    EXPECT_TRUE(t.dual_verified);
  }
  EXPECT_GE(applicable, 2);
}

TEST(TilingBound, Values) {
  EXPECT_EQ(thm_A3_bound(60, Rational(1, 6), 0), 14620);
  EXPECT_EQ(oracle::choose(40, 3), 9880u);
  EXPECT_EQ(oracle::choose(60, 3) - oracle::choose(50, 3), 14620u);
  EXPECT_EQ(thm_A3_limit(Rational(1, 6)), Rational(91, 216));
  // tiny alpha: the first term is the cube of a small number, second dominates
  const Rational a(1, 100);
  EXPECT_EQ(thm_A3_bound(100, a, 0), Rational(oracle::choose(100, 3) - oracle::choose(99, 3)));
  EXPECT_EQ(thm_A3_bound(10, Rational(1, 8), Rational(1, 10)) - thm_A3_bound(10, Rational(1, 8), 0), 100);
  EXPECT_THROW(thm_A3_bound(10, Rational(1, 4), 0), DomainError);
  EXPECT_THROW(thm_A3_bound(10, Rational(0), 0), DomainError);
}

TEST(TilingBound, ChainTendsToLimit) {
  const Rational target(91, 216);
  Rational prev = -1;
  for (int n = 60; n <= 7680; n *= 2) {
    const Rational gap = thm_A4_chain(n) - target;
    const Rational abs_gap = gap < 0 ? -gap : gap;
    if (prev >= 0) EXPECT_LT(abs_gap, prev);
    prev = abs_gap;
  }
  EXPECT_LT(prev, Rational(1, 1000));
}

TEST(Lp, SmallProgram) {
  // max x + y, x + 2y <= 4, 3x + y <= 6  ->  (8/5, 6/5), value 14/5
  const std::vector<std::vector<Rational>> a{{1, 2}, {3, 1}};
  const auto r = maximize(a, {4, 6}, {1, 1});
  EXPECT_EQ(r.value, Rational(14, 5));
  EXPECT_EQ(r.primal[0], Rational(8, 5));
  EXPECT_EQ(r.primal[1], Rational(6, 5));
  EXPECT_TRUE(r.dual_verified);
  EXPECT_EQ(r.dual[0] * 4 + r.dual[1] * 6, r.value);
}

TEST(Lp, Unbounded) {
  EXPECT_THROW(maximize({{1, -1}}, {1}, {1, 1}), DomainError);
  EXPECT_THROW(maximize({{1}}, {-1}, {1}), DomainError);
}

TEST(EdgeVectors, CompleteGraphBalanced) {
  const auto h = complete_graph(3, 6);
  const auto p = robust_edge_vectors(h, {{0, 1, 2}, {3, 4, 5}}, Rational(0));
  EXPECT_EQ(p.census.size(), 4u);
  EXPECT_EQ(p.census.at({1, 2}), 9u);
  EXPECT_EQ(p.census.at({3, 0}), 1u);
  EXPECT_TRUE(p.mixed_present);
  EXPECT_EQ(p.robust.size(), 4u);
}

TEST(EdgeVectors, SupportedInOnePart) {
  const auto h = disjoint_union(complete_graph(3, 5), Hypergraph(3, 3, {}));
  const auto p = robust_edge_vectors(h, {{0, 1, 2, 3, 4}, {5, 6, 7}}, Rational(0));
  ASSERT_EQ(p.census.size(), 1u);
  EXPECT_EQ(p.census.begin()->first, (std::vector<int>{3, 0}));
  EXPECT_FALSE(p.mixed_present);
}

TEST(EdgeVectors, CensusMatchesRecount) {
  const auto h = oracle::random_graph(4, 10, 0.3, 77);
  const std::vector<std::vector<Vertex>> parts{{0, 2, 4, 6}, {1, 3, 5}, {7, 8, 9}};
  const auto p = robust_edge_vectors(h, parts, Rational(1, 1000));
  std::map<std::vector<int>, std::uint64_t> expect;
  for (const auto& e : h.edges()) {
    std::vector<int> v(3, 0);
    for (Vertex x : e) v[x >= 7 ? 2 : (x % 2 ? 1 : 0)]++;
    ++expect[v];
    EXPECT_EQ(index_vector(parts, e), v);
  }
  EXPECT_EQ(p.census, expect);
  // 1/1000 * 10^4 = 10 edges
  for (const auto& [vec, c] : expect) {
    EXPECT_EQ(std::count(p.robust.begin(), p.robust.end(), vec) > 0, c > 10u);
    EXPECT_EQ(std::count(p.robust_at_least.begin(), p.robust_at_least.end(), vec) > 0, c >= 10u);
  }
  EXPECT_THROW(robust_edge_vectors(h, {{0, 1}, {2}}, Rational(0)), DomainError);
}
