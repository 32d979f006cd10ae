#include "hyperham/constructions.hpp"
#include "hyperham/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hyperham;

TEST(SpaceBarrier, EdgeCounts) {
  const auto h = space_barrier({3, 1, 8});
  EXPECT_EQ(SpaceBarrierSpec({3, 1, 8}).a(), 1);
  EXPECT_EQ(h.edge_count(), 21u);
  const auto g = space_barrier({5, 2, 12});
  EXPECT_EQ(g.edge_count(), 330u);
  EXPECT_EQ(load_hg(oracle::fixture("barrier_5_2_12.hg")).edges(), g.edges());
}

TEST(SpaceBarrier, EdgesAreExactlyTheSetsMeetingA) {
  for (auto [k, ell, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 10}, {4, 1, 9}, {5, 2, 9}, {7, 3, 12}}) {
    const SpaceBarrierSpec spec{k, ell, n};
    const auto h = space_barrier(spec);
    const auto edges = oracle::edge_set(h);
    std::uint64_t meeting = 0;
    for (const auto& s : oracle::subsets(n, k)) {
      const bool meets = s[0] < spec.a();
      meeting += meets;
      EXPECT_EQ(edges.count(s) > 0, meets);
    }
    EXPECT_EQ(h.edge_count(), meeting);
    EXPECT_EQ(h.edge_count(), oracle::choose(n, k) - oracle::choose(n - spec.a(), k));
  }
}

TEST(SpaceBarrier, TinyNIsEmpty) {
  const SpaceBarrierSpec spec{3, 1, 2};
  EXPECT_EQ(spec.a(), 0);
  EXPECT_EQ(space_barrier(spec).edge_count(), 0u);
}

TEST(SpaceBarrier, DomainErrors) {
  EXPECT_THROW(space_barrier({4, 2, 8}), DomainError);
  EXPECT_THROW(space_barrier({3, 1, 7}), DomainError);
  EXPECT_THROW(space_barrier({5, 3, 8}), DomainError);
}

TEST(SpaceBarrierDegree, Examples) {
  EXPECT_EQ(space_barrier_min_degree({3, 1, 8}, 2).value, 1);
  const auto d = space_barrier_min_degree({5, 2, 12}, 2);
  EXPECT_EQ(d.value, 36);
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.normalized, Rational(36, 220));
  // d = k-1 and a = 0
  EXPECT_EQ(space_barrier_min_degree({3, 1, 2}, 2, false).value, 0);
}

TEST(SpaceBarrierDegree, ClosedFormMatchesExhaustive) {
  for (int k = 3; k <= 5; ++k) {
    for (int ell = 1; 2 * ell < k; ++ell) {
      for (int n = k; n <= 14; ++n) {
        if (n % (k - ell)) continue;
        const SpaceBarrierSpec spec{k, ell, n};
        const auto h = space_barrier(spec);
        for (int d = 1; d < k; ++d) {
          const auto closed = space_barrier_degree_formula(spec, d);
          EXPECT_EQ(closed, BigInt(oracle::min_degree(h, d))) << k << " " << ell << " " << n << " d=" << d;
        }
      }
    }
  }
}

TEST(SpaceBarrierProperty, NormalizedDegreeApproachesLimit) {
  // 1 - (1 - 1/(2(k-ell)))^(k-d), computed here directly
  for (auto [k, ell, d] : std::vector<std::tuple<int, int, int>>{{3, 1, 1}, {3, 1, 2}, {5, 2, 2}, {4, 1, 2}}) {
    const Rational base = Rational(2 * (k - ell) - 1, 2 * (k - ell));
    Rational limit = 1;
    Rational pw = 1;
    for (int i = 0; i < k - d; ++i) pw *= base;
    limit -= pw;
    Rational prev_gap = -1;
    for (int n = 12 * (k - ell); n <= 384 * (k - ell); n *= 2) {
      const auto r = space_barrier_min_degree({k, ell, n}, d, false);
      const Rational gap = limit - r.normalized;
      EXPECT_GE(gap, 0);
      // O(1/n): gap * n bounded
      EXPECT_LT(gap * n, Rational(4 * k * k));
      if (prev_gap >= 0) EXPECT_LT(gap, prev_gap);
      prev_gap = gap;
    }
  }
}

TEST(SpaceBarrierProperty, NoHamiltonCycle) {
  for (auto [k, ell, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 6}, {3, 1, 8}, {3, 1, 10}, {4, 1, 9}, {5, 2, 9}}) {
    const auto h = space_barrier({k, ell, n});
    const auto r = find_hamilton_cycle(h, ell);
    EXPECT_EQ(r.status, SearchStatus::none_proven) << k << " " << ell << " " << n;
    // counting argument: n/(k-ell) edges needed, at most 2|A| available
    EXPECT_GT(n / (k - ell), 2 * SpaceBarrierSpec({k, ell, n}).a());
  }
}

TEST(PatternY, Shapes) {
  const auto y32 = pattern_Y(3, 2);
  EXPECT_EQ(y32.n(), 4);
  EXPECT_EQ(y32.edges(), (std::vector<VertexSet>{VertexSet{0, 1, 2}, VertexSet{1, 2, 3}}));
  const auto y54 = pattern_Y(5, 4);
  EXPECT_EQ(y54.n(), 6);
  ASSERT_EQ(y54.edge_count(), 2u);
  EXPECT_EQ(intersection_size(y54.edges()[0], y54.edges()[1]), 4u);
  const auto y30 = pattern_Y(3, 0);
  EXPECT_EQ(y30.n(), 6);
  EXPECT_EQ(intersection_size(y30.edges()[0], y30.edges()[1]), 0u);
  EXPECT_THROW(pattern_Y(3, 3), DomainError);
}

TEST(RandomGraph, Deterministic) {
  SplitMix64 a(99), b(99);
  EXPECT_EQ(random_graph(3, 12, 0.3, a).edges(), random_graph(3, 12, 0.3, b).edges());
  SplitMix64 c0(17);
  EXPECT_EQ(random_graph(3, 12, 0.3, c0).edges(), oracle::random_graph(3, 12, 0.3, 17).edges());
  SplitMix64 c(5);
  EXPECT_EQ(random_graph(3, 10, 1.0, c).edge_count(), 120u);
  EXPECT_EQ(random_graph(3, 10, 0.0, c).edge_count(), 0u);
}

TEST(DisjointUnion, ShiftsSecondGraph) {
  const auto u = disjoint_union(complete_graph(3, 4), complete_graph(3, 5));
  EXPECT_EQ(u.n(), 9);
  EXPECT_EQ(u.edge_count(), 14u);
  EXPECT_TRUE(u.has_edge(VertexSet{4, 5, 6}));
  EXPECT_FALSE(u.has_edge(VertexSet{3, 4, 5}));
}

TEST(Gadget, SearchThreeOne) {
  const auto r = search_gadget(3, 1);
  ASSERT_EQ(r.status, SearchStatus::found);
  const auto& g = *r.gadget;
  EXPECT_LE(g.graph.n(), 81);
  EXPECT_TRUE(validate_gadget(g.graph, g.cert).valid);
  EXPECT_EQ(g.cert.s_prime.size(), 2u);
  EXPECT_EQ(g.cert.p.begin_end(), g.cert.q.begin_end());
  EXPECT_EQ(g.cert.p.end_end(), g.cert.q.end_end());
}

TEST(Gadget, SearchFiveTwo) {
  const auto r = search_gadget(5, 2);
  ASSERT_NE(r.status, SearchStatus::none_proven);
  if (r.gadget) {
    EXPECT_LE(r.gadget->graph.n(), 625);
    EXPECT_TRUE(validate_gadget(r.gadget->graph, r.gadget->cert).valid);
  }
}

TEST(Gadget, DivisibleRejected) {
  EXPECT_THROW(search_gadget(4, 2), DomainError);
  EXPECT_THROW(search_gadget(3, 2), DomainError);
}

TEST(Gadget, ValidatorCatchesMissingSPrimeVertex) {
  const auto g = *search_gadget(3, 1).gadget;
  auto cert = g.cert;
  // drop one S' vertex from Q: Q no longer spans S' + X
  const Vertex gone = cert.s_prime[0];
  cert.q.order.erase(std::find(cert.q.order.begin(), cert.q.order.end(), gone));
  const auto v = validate_gadget(g.graph, cert);
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.violation.rfind("property 4", 0), 0u) << v.violation;
}

TEST(Gadget, ValidatorCatchesEdgeWithTwoSPrimeVertices) {
  const auto g = *search_gadget(3, 1).gadget;
  const auto& c = g.cert;
  auto class_of = [&](Vertex v) {
    for (int i = 0; i < 3; ++i) {
      if (std::count(c.classes[i].begin(), c.classes[i].end(), v)) return i;
    }
    return -1;
  };
  const int c0 = class_of(c.s_prime[0]), c1 = class_of(c.s_prime[1]);
  ASSERT_NE(c0, c1);
  const int third = 3 - c0 - c1;
  auto edges = g.graph.edges();
  edges.push_back(VertexSet{c.s_prime[0], c.s_prime[1], c.classes[third][0]});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const Hypergraph host(3, g.graph.n(), edges);
  const auto v = validate_gadget(host, c);
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.violation.rfind("property 5", 0), 0u) << v.violation;
}

TEST(Gadget, ValidatorCatchesSharedClass) {
  const auto g = *search_gadget(3, 1).gadget;
  auto cert = g.cert;
  // move the second S' vertex into the first one's class
  for (auto& cls : cert.classes) {
    auto it = std::find(cls.begin(), cls.end(), cert.s_prime[1]);
    if (it != cls.end()) cls.erase(it);
  }
  for (auto& cls : cert.classes) {
    if (std::count(cls.begin(), cls.end(), cert.s_prime[0])) cls.push_back(cert.s_prime[1]);
  }
  EXPECT_FALSE(validate_gadget(g.graph, cert).valid);
}
