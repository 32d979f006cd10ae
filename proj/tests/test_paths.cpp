#include "hyperham/constructions.hpp"
#include "hyperham/errors.hpp"
#include "hyperham/paths.hpp"
#include "hyperham/shadows.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hyperham;

TEST(ValidatePath, LoosePath) {
  const auto h = load_hg(oracle::fixture("loose_path.hg"));
  const EllPath p{3, 1, {0, 1, 2, 3, 4}};
  const auto v = validate_path(h, p);
  EXPECT_TRUE(v.valid) << v.violation;
  EXPECT_EQ(p.begin_end(), std::vector<Vertex>{0});
  EXPECT_EQ(p.end_end(), std::vector<Vertex>{4});
}

TEST(ValidatePath, MissingWindow) {
  const Hypergraph h(3, 5, {VertexSet{0, 1, 2}});
  const auto v = validate_path(h, EllPath{3, 1, {0, 1, 2, 3, 4}});
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.window, 2);
}

TEST(ValidatePath, TwoEdgesSharingTwo) {
  const Hypergraph h(5, 8, {VertexSet{0, 1, 2, 3, 4}, VertexSet{3, 4, 5, 6, 7}});
  const EllPath p{5, 2, {0, 1, 2, 3, 4, 5, 6, 7}};
  EXPECT_TRUE(validate_path(h, p).valid);
  EXPECT_EQ(p.length(), 2);
  EXPECT_EQ(p.end_end(), (std::vector<Vertex>{6, 7}));
}

TEST(ValidatePath, BadLengthAndRepeats) {
  const auto h = complete_graph(3, 6);
  EXPECT_FALSE(validate_path(h, EllPath{3, 1, {0, 1, 2, 3}}).valid);
  EXPECT_FALSE(validate_path(h, EllPath{3, 1, {0, 1, 2, 3, 0}}).valid);
  EXPECT_FALSE(validate_path(h, EllPath{3, 1, {0, 1, 2, 3, 9}}).valid);
}

TEST(ValidateCycle, LooseHexagon) {
  const Hypergraph h(3, 6, {VertexSet{0, 1, 2}, VertexSet{2, 3, 4}, VertexSet{0, 4, 5}});
  const EllCycle c{3, 1, {0, 1, 2, 3, 4, 5}};
  const auto v = validate_cycle(h, c);
  EXPECT_TRUE(v.valid) << v.violation;
  EXPECT_TRUE(v.hamilton);
  EXPECT_EQ(c.edge_count(), 3);
}

TEST(ValidateCycle, FiveTwoNine) {
  const Hypergraph h(5, 9, {VertexSet{0, 1, 2, 3, 4}, VertexSet{3, 4, 5, 6, 7}, VertexSet{0, 1, 6, 7, 8}});
  const EllCycle c{5, 2, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  const auto v = validate_cycle(h, c);
  EXPECT_TRUE(v.valid) << v.violation;
  EXPECT_TRUE(v.hamilton);
  const auto ws = c.windows();
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(set_intersection(ws[0], ws[1]), (VertexSet{3, 4}));
  EXPECT_EQ(set_intersection(ws[1], ws[2]), (VertexSet{6, 7}));
  EXPECT_EQ(set_intersection(ws[2], ws[0]), (VertexSet{0, 1}));
}

TEST(ValidateCycle, SixVerticesTwoEdgesOverlapTooMuch) {
  const auto h = complete_graph(5, 6);
  const auto v = validate_cycle(h, EllCycle{5, 2, {0, 1, 2, 3, 4, 5}});
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.violation.find("share 4"), std::string::npos) << v.violation;
}

TEST(ValidateCycle, NotSpanningIsNotHamilton) {
  const auto h = complete_graph(3, 8);
  const auto v = validate_cycle(h, EllCycle{3, 1, {0, 1, 2, 3, 4, 5}});
  EXPECT_TRUE(v.valid);
  EXPECT_FALSE(v.hamilton);
}

TEST(ValidateCycle, HigherOverlapSkipsLoadRule) {
  // tight cycle on 6 vertices: every vertex in three edges
  const auto h = complete_graph(3, 6);
  const auto v = validate_cycle(h, EllCycle{3, 2, {0, 1, 2, 3, 4, 5}});
  EXPECT_TRUE(v.valid) << v.violation;
  EXPECT_TRUE(v.hamilton);
}

TEST(Hamilton, CompleteGraphFound) {
  const auto h = complete_graph(3, 8);
  const auto r = find_hamilton_cycle(h, 1);
  ASSERT_EQ(r.status, SearchStatus::found);
  const auto v = validate_cycle(h, *r.cycle);
  EXPECT_TRUE(v.valid && v.hamilton);
}

TEST(Hamilton, BarrierThreeOneEight) {
  const auto h = load_hg(oracle::fixture("barrier_3_1_8.hg"));
  const auto r = find_hamilton_cycle(h, 1);
  EXPECT_EQ(r.status, SearchStatus::none_proven);
  EXPECT_EQ(r.reason, "exhausted");
  EXPECT_FALSE(oracle::has_hamilton_cycle(h, 1));
}

TEST(Hamilton, BarrierFiveTwoTwelve) {
  const auto h = load_hg(oracle::fixture("barrier_5_2_12.hg"));
  const auto r = find_hamilton_cycle(h, 2);
  EXPECT_EQ(r.status, SearchStatus::none_proven);
  // 4 edges needed, only one vertex in A, so at most 2 edges can meet A
  EXPECT_GT(12 / 3, 2 * 1);
}

TEST(Hamilton, Divisibility) {
  const auto r = find_hamilton_cycle(complete_graph(3, 9), 1);
  EXPECT_EQ(r.status, SearchStatus::none_proven);
  EXPECT_EQ(r.reason, "divisibility");
}

TEST(Hamilton, BudgetExhausted) {
  SearchOptions opt;
  opt.budget = 3;
  const auto r = find_hamilton_cycle(oracle::random_graph(3, 12, 0.5, 1), 1, opt);
  EXPECT_EQ(r.status, SearchStatus::budget_exhausted);
  EXPECT_GT(r.nodes, 0u);
}

TEST(Hamilton, CanonicalFormIsInvariant) {
  const EllCycle c{3, 1, {4, 0, 5, 2, 1, 3, 7, 6}};
  const auto base = canonical_cycle(c);
  for (int r = 0; r < 8; r += 2) {
    EllCycle rot = c;
    std::rotate(rot.order.begin(), rot.order.begin() + r, rot.order.end());
    EXPECT_EQ(canonical_cycle(rot), base);
  }
  const auto h = complete_graph(3, 8);
  EXPECT_TRUE(validate_cycle(h, base).valid);
}

// oracle equivalence on small instances
TEST(HamiltonProperty, AgreesWithPermutationBruteForce) {
  struct Case {
    int k, ell, n;
    double p;
  };
  const std::vector<Case> cases = {{3, 1, 6, 0.5}, {3, 1, 8, 0.35}, {3, 1, 8, 0.2}, {4, 1, 9, 0.25},
                                   {4, 2, 8, 0.2}, {3, 2, 7, 0.5},  {4, 3, 6, 0.4}, {5, 2, 9, 0.15}};
  int found = 0, none = 0;
  for (const auto& c : cases) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto h = oracle::random_graph(c.k, c.n, c.p, 1000 * c.k + 10 * c.n + seed);
      const auto r = find_hamilton_cycle(h, c.ell);
      ASSERT_NE(r.status, SearchStatus::budget_exhausted);
      const bool expect = oracle::has_hamilton_cycle(h, c.ell);
      EXPECT_EQ(r.status == SearchStatus::found, expect) << c.k << " " << c.ell << " " << c.n << " seed " << seed;
      if (r.cycle) {
        const auto v = validate_cycle(h, *r.cycle);
        EXPECT_TRUE(v.valid && v.hamilton);
        EXPECT_TRUE(oracle::is_cycle(oracle::edge_set(h), c.k, c.ell, r.cycle->order));
      }
      (expect ? found : none)++;
    }
  }
  EXPECT_GT(found, 3);
  EXPECT_GT(none, 3);
}

TEST(Connect, CompleteFiveGraph) {
  const auto h = complete_graph(5, 14);
  const auto r = connect(h, 2, {0, 1}, {2, 3});
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_EQ(r.path->length(), 2);
  EXPECT_EQ(r.path->begin_end(), (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(r.path->end_end(), (std::vector<Vertex>{2, 3}));
  EXPECT_TRUE(validate_path(h, *r.path).valid);
}

TEST(Connect, ExactTwoEdgePath) {
  // S=(0,1), middle 2 | 3,4 | 5, T=(6,7)
  const Hypergraph h(5, 8, {VertexSet{0, 1, 2, 3, 4}, VertexSet{3, 4, 5, 6, 7}});
  const auto r = connect(h, 2, {0, 1}, {6, 7});
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_TRUE(validate_path(h, *r.path).valid);
  EXPECT_EQ(r.path->order.size(), 8u);
  EXPECT_EQ(r.path->windows()[0], (VertexSet{0, 1, 2, 3, 4}));
  // no edge holds both 2 and 7
  EXPECT_EQ(connect(h, 2, {0, 1}, {2, 7}).status, SearchStatus::none_proven);
}

TEST(Connect, OverlappingEndsRejected) {
  const auto h = complete_graph(4, 10);
  EXPECT_THROW(connect(h, 1, {0}, {0}), DomainError);
  EXPECT_THROW(connect(h, 2, {0, 1}, {1, 2}), DomainError);
  EXPECT_THROW(connect(h, 2, {0}, {1, 2}), ArityError);
}

TEST(Connect, ForbiddenVerticesAvoided) {
  const auto h = complete_graph(3, 9);
  ConnectOptions opt;
  opt.forbidden = VertexSet{2, 3, 4, 5};
  const auto r = connect(h, 1, {0}, {1}, opt);
  ASSERT_EQ(r.status, SearchStatus::found);
  for (Vertex v : r.path->order) EXPECT_FALSE(opt.forbidden.contains(v));
  opt.forbidden = VertexSet{2, 3, 4, 5, 6};
  EXPECT_EQ(connect(h, 1, {0}, {1}, opt).status, SearchStatus::none_proven);
}

TEST(Connect, LongerPaths) {
  // a loose path 0-..-8 of four edges is the only route
  const Hypergraph h(3, 9, {VertexSet{0, 1, 2}, VertexSet{2, 3, 4}, VertexSet{4, 5, 6}, VertexSet{6, 7, 8}});
  ConnectOptions opt;
  opt.max_len = 3;
  EXPECT_EQ(connect(h, 1, {0}, {8}, opt).status, SearchStatus::none_proven);
  opt.max_len = 4;
  const auto r = connect(h, 1, {0}, {8}, opt);
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_EQ(r.path->length(), 4);
}

TEST(ConnectProperty, DenseFourTwoPairs) {
  const auto h = oracle::random_graph(4, 12, 0.8, 42);
  SplitMix64 rng(7);
  int found = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<int> v(12);
    std::iota(v.begin(), v.end(), 0);
    rng.shuffle(std::span<int>(v));
    const std::vector<Vertex> s{v[0], v[1]}, t{v[2], v[3]};
    const auto r = connect(h, 2, s, t);
    EXPECT_EQ(r.status == SearchStatus::found, oracle::length_two_connectable(h, 2, s, t));
    if (r.path) {
      EXPECT_TRUE(oracle::is_path(oracle::edge_set(h), 4, 2, r.path->order));
      EXPECT_EQ(r.path->begin_end(), s);
      EXPECT_EQ(r.path->end_end(), t);
      ++found;
    }
  }
  EXPECT_EQ(found, 100);
}

TEST(ConnectProperty, SparseAgreesWithOracle) {
  int yes = 0, no = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int k = seed % 2 ? 5 : 3;
    const int ell = seed % 2 ? 2 : 1;
    const int n = seed % 2 ? 10 : 9;
    const auto h = oracle::random_graph(k, n, seed % 2 ? 0.04 : 0.08, 500 + seed);
    std::vector<Vertex> s, t;
    for (int i = 0; i < ell; ++i) {
      s.push_back(i);
      t.push_back(n - 1 - i);
    }
    const auto r = connect(h, ell, s, t);
    const bool expect = oracle::length_two_connectable(h, ell, s, t);
    EXPECT_EQ(r.status == SearchStatus::found, expect) << "seed " << seed;
    (expect ? yes : no)++;
  }
  EXPECT_GT(yes, 0);
  EXPECT_GT(no, 0);
}

// With eps = 0, a common shadow member means a length-two connection exists.
TEST(ConnectProperty, ShadowWitnessImpliesConnection) {
  int witnesses = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const int k = 4 + static_cast<int>(seed % 2);
    const int ell = k == 4 ? 1 : 2;
    const int n = 9 + static_cast<int>(seed % 2);
    const auto h = oracle::random_graph(k, n, 0.03 + 0.01 * (seed % 5), 900 + seed);
    std::vector<Vertex> s, t;
    for (int i = 0; i < ell; ++i) {
      s.push_back(2 * i);
      t.push_back(2 * i + 1);
    }
    const auto w = shadow_intersection_witness(h, s, t, Rational(0));
    if (!w.witness) continue;
    ++witnesses;
    EXPECT_EQ(connect(h, ell, s, t).status, SearchStatus::found) << "seed " << seed;
  }
  EXPECT_GT(witnesses, 0);
}
