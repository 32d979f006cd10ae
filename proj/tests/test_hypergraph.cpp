#include "hyperham/constructions.hpp"
#include "hyperham/errors.hpp"
#include "hyperham/hypergraph.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hyperham;

TEST(Degree, CompleteThreeGraph) {
  const auto h = complete_graph(3, 5);
  EXPECT_EQ(degree(h, {0, 1}), 3u);
}

TEST(Degree, EmptyGraph) {
  const Hypergraph h(3, 5, {});
  EXPECT_EQ(degree(h, {0, 1}), 0u);
  EXPECT_EQ(min_degree(h, 1), 0u);
  EXPECT_EQ(min_degree(h, 2), 0u);
}

TEST(Degree, BarrierFiveTwo) {
  const auto h = space_barrier({5, 2, 12});
  // A = {0}; {3,4} misses it
  EXPECT_EQ(degree(h, {3, 4}), oracle::degree(h, {3, 4}));
  EXPECT_EQ(degree(h, {3, 4}), oracle::choose(10, 3) - oracle::choose(9, 3));
}

TEST(Degree, ArityAndDomain) {
  const auto h = complete_graph(3, 5);
  EXPECT_THROW(degree(h, {0, 1, 2}), ArityError);
  EXPECT_THROW(degree(h, VertexSet{}), ArityError);
  EXPECT_THROW(degree(h, {0, 7}), DomainError);
  EXPECT_THROW(min_degree(h, 3), ArityError);
  EXPECT_THROW(min_degree(h, 0), ArityError);
}

TEST(MinDegree, Examples) {
  EXPECT_EQ(min_degree(complete_graph(3, 6), 2), 4u);
  const auto b = space_barrier({3, 1, 8});
  EXPECT_EQ(min_degree(b, 2), 1u);
  EXPECT_EQ(min_degree(b, 2), oracle::min_degree(b, 2));
}

TEST(Link, Examples) {
  const auto l = link(complete_graph(3, 5), {0});
  EXPECT_EQ(l.k(), 2);
  EXPECT_EQ(l.edge_count(), 6u);
  for (const auto& e : l.edges()) EXPECT_FALSE(e.contains(0));

  const Hypergraph one(3, 3, {VertexSet{0, 1, 2}});
  const auto l2 = link(one, {0, 1});
  ASSERT_EQ(l2.edge_count(), 1u);
  EXPECT_EQ(l2.edges()[0], (VertexSet{2}));

  const auto l3 = link(space_barrier({5, 2, 12}), {0, 5});
  EXPECT_EQ(l3.edge_count(), oracle::choose(10, 3));
}

TEST(HgFormat, RoundTrip) {
  const auto h = oracle::random_graph(4, 9, 0.4, 11);
  std::stringstream ss;
  write_hg(ss, h);
  const auto g = read_hg(ss);
  EXPECT_EQ(g.k(), h.k());
  EXPECT_EQ(g.n(), h.n());
  EXPECT_EQ(g.edges(), h.edges());
}

namespace {

int parse_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_hg(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(HgFormat, LineNumberedErrors) {
  EXPECT_EQ(parse_line("3 5 2\n0 1 2\n0 1 2\n"), 3);
  EXPECT_EQ(parse_line("3 5 2\n0 1 2\n1 2\n"), 3);
  EXPECT_EQ(parse_line("3 5 1\n0 1 9\n"), 2);
  EXPECT_EQ(parse_line("3 5 1\n2 1 0\n"), 2);
  EXPECT_EQ(parse_line("3 5\n"), 1);
  EXPECT_EQ(parse_line("3 5 1\n0 1 x\n"), 2);
  EXPECT_GT(parse_line("3 5 2\n0 1 2\n"), 0);
  EXPECT_EQ(parse_line("3 5 1\n0 1 2\n"), -1);
}

TEST(HgFormat, MalformedFixture) {
  try {
    load_hg(oracle::fixture("malformed.hg"));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Hypergraph, RejectsBadEdges) {
  EXPECT_THROW(Hypergraph(3, 4, {VertexSet{0, 1}}), DomainError);
  EXPECT_THROW(Hypergraph(3, 4, {VertexSet{0, 1, 4}}), DomainError);
  EXPECT_THROW(Hypergraph(3, 4, {VertexSet{0, 1, 2}, VertexSet{0, 1, 2}}), DomainError);
  EXPECT_THROW(VertexSet({1, 1}), DomainError);
}

TEST(Hypergraph, LargeUniverseWithoutMasks) {
  const Hypergraph h(3, 100, {VertexSet{0, 50, 99}, VertexSet{1, 2, 3}});
  EXPECT_FALSE(h.has_masks());
  EXPECT_TRUE(h.has_edge(VertexSet{0, 50, 99}));
  EXPECT_FALSE(h.has_edge(VertexSet{0, 50, 98}));
  EXPECT_EQ(degree(h, {50, 99}), 1u);
}

TEST(Colex, RankRoundTrip) {
  for (int r = 1; r <= 4; ++r) {
    for (std::uint64_t i = 0; i < 200; ++i) EXPECT_EQ(colex_rank(colex_unrank(i, r)), i);
  }
}

// properties over random graphs

TEST(HypergraphProperty, DegreeSumIdentity) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int k = 2 + static_cast<int>(seed % 4);
    const int n = k + 2 + static_cast<int>(seed % 5);
    const auto h = oracle::random_graph(k, n, 0.5, seed);
    for (int d = 1; d < k; ++d) {
      std::uint64_t sum = 0;
      for (const auto& s : oracle::subsets(n, d)) sum += degree(h, VertexSet(s));
      EXPECT_EQ(sum, h.edge_count() * oracle::choose(k, d)) << "seed " << seed << " d " << d;
    }
  }
}

TEST(HypergraphProperty, DegreeMatchesScan) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 3 + static_cast<int>(seed % 3);
    const int n = 8 + static_cast<int>(seed % 3);
    const auto h = oracle::random_graph(k, n, 0.45, 100 + seed);
    for (int d = 1; d < k; ++d) {
      EXPECT_EQ(min_degree(h, d), oracle::min_degree(h, d));
      const auto table = degree_table(h, d);
      for (const auto& s : oracle::subsets(n, d)) {
        EXPECT_EQ(table[colex_rank(VertexSet(s))], oracle::degree(h, s));
      }
    }
  }
}

TEST(HypergraphProperty, LinkDegreeCoherence) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto h = oracle::random_graph(4, 9, 0.5, 200 + seed);
    for (int d = 1; d < 4; ++d) {
      for (const auto& s : oracle::subsets(9, d)) {
        if ((s[0] + static_cast<int>(seed)) % 3) continue;
        const VertexSet vs(s);
        EXPECT_EQ(link(h, vs).edge_count(), degree(h, vs));
      }
    }
  }
}

// If delta_d >= x C(n-d, k-d) then delta_d' >= x C(n-d', k-d') for d' <= d.
TEST(HypergraphProperty, DegreeMonotonicity) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int k = 3 + static_cast<int>(seed % 3);
    const int n = k + 3 + static_cast<int>(seed % 4);
    const auto h = oracle::random_graph(k, n, 0.7, 300 + seed);
    for (int d = 1; d < k; ++d) {
      const Rational x(BigInt(min_degree(h, d)), binomial(n - d, k - d));
      for (int dp = 1; dp <= d; ++dp) {
        EXPECT_GE(Rational(BigInt(min_degree(h, dp))), x * binomial(n - dp, k - dp))
            << "seed " << seed << " d " << d << " d' " << dp;
      }
    }
  }
}

TEST(HypergraphProperty, InducedKeepsEdgesInside) {
  const auto h = oracle::random_graph(3, 10, 0.5, 7);
  const VertexSet keep{1, 3, 4, 6, 9};
  const auto g = induced(h, keep);
  std::uint64_t expect = 0;
  for (const auto& e : h.edges()) expect += keep.contains_all(e);
  EXPECT_EQ(g.edge_count(), expect);
  EXPECT_EQ(g.n(), 5);
}
