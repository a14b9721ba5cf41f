#include <gtest/gtest.h>

#include "bipack/feasibility.hpp"
#include "bipack/flow.hpp"
#include "bipack/random.hpp"
#include "support/brute.hpp"

using namespace bipack;

namespace {

FlowNetwork<std::int64_t> unit_gadget() {
  // source 0, a0 1, a1 2, b0 3, b1 4, sink 5
  FlowNetwork<std::int64_t> net(6, 0, 5);
  net.add_arc(0, 1, 1);
  net.add_arc(0, 2, 1);
  for (int a : {1, 2})
    for (int b : {3, 4}) net.add_arc(a, b, 1);
  net.add_arc(3, 5, 1);
  net.add_arc(4, 5, 1);
  return net;
}

void expect_conservation(const FlowNetwork<std::int64_t>& net, const FlowResult<std::int64_t>& r) {
  std::vector<std::int64_t> balance(net.node_count, 0);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    ASSERT_GE(r.arc_flow[i], 0);
    ASSERT_LE(r.arc_flow[i], net.arcs[i].capacity);
    balance[net.arcs[i].from] -= r.arc_flow[i];
    balance[net.arcs[i].to] += r.arc_flow[i];
  }
  for (int v = 0; v < net.node_count; ++v) {
    if (v == net.source)
      EXPECT_EQ(balance[v], -r.value);
    else if (v == net.sink)
      EXPECT_EQ(balance[v], r.value);
    else
      EXPECT_EQ(balance[v], 0);
  }
}

// Two unbalanced bicliques built by hand: K_{h+1,h-1} and K_{h-1,h+1}.
BipartiteGraph two_unbalanced_bicliques(int n) {
  const int h = n / 2;
  std::vector<Edge> edges;
  for (int a = 0; a < h + 1; ++a)
    for (int b = 0; b < h - 1; ++b) edges.push_back({a, b});
  for (int a = h + 1; a < n; ++a)
    for (int b = h - 1; b < n; ++b) edges.push_back({a, b});
  return {n, n, edges};
}

}  // namespace

TEST(MaxFlow, Examples) {
  FlowNetwork<std::int64_t> single(2, 0, 1);
  single.add_arc(0, 1, 5);
  EXPECT_EQ(max_flow(single).value, 5);

  FlowNetwork<std::int64_t> bottleneck(3, 0, 2);
  bottleneck.add_arc(0, 1, 3);
  bottleneck.add_arc(1, 2, 2);
  EXPECT_EQ(max_flow(bottleneck).value, 2);

  const auto gadget = unit_gadget();
  const auto r = max_flow(gadget);
  EXPECT_EQ(r.value, 2);
  expect_conservation(gadget, r);
}

TEST(MaxFlow, RejectsInvalidNetworks) {
  FlowNetwork<std::int64_t> same(2, 0, 0);
  EXPECT_THROW(max_flow(same), std::invalid_argument);
  FlowNetwork<std::int64_t> negative(2, 0, 1);
  negative.add_arc(0, 1, -1);
  EXPECT_THROW(max_flow(negative), std::invalid_argument);
  FlowNetwork<std::int64_t> dangling(2, 0, 1);
  dangling.add_arc(0, 3, 1);
  EXPECT_THROW(max_flow(dangling), std::invalid_argument);
}

TEST(MaxFlow, ValueInvariantUnderArcOrderAndConserved) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int nodes = 3 + static_cast<int>(rng.below(8));
    FlowNetwork<std::int64_t> net(nodes, 0, nodes - 1);
    const int arcs = static_cast<int>(rng.below(30));
    for (int i = 0; i < arcs; ++i) {
      const int u = static_cast<int>(rng.below(nodes));
      const int v = static_cast<int>(rng.below(nodes));
      if (u != v) net.add_arc(u, v, static_cast<std::int64_t>(rng.below(6)));
    }
    const auto r = max_flow(net);
    expect_conservation(net, r);
    auto shuffled = net;
    rng.shuffle(std::span(shuffled.arcs));
    EXPECT_EQ(max_flow(shuffled).value, r.value);
  }
}

TEST(CutCheck, Examples) {
  EXPECT_FALSE(lemma4_check_exhaustive(BipartiteGraph::complete(2, 2), {{2, 2}, {2, 2}}));

  const BipartiteGraph lonely(2, 2, std::vector<Edge>{{0, 0}});
  const auto v = lemma4_check_exhaustive(lonely, {{1, 1}, {1, 1}});
  ASSERT_TRUE(v);
  EXPECT_EQ(v->x, std::vector<int>{1});
  EXPECT_EQ(v->y, (std::vector<int>{0, 1}));
  EXPECT_EQ(v->lhs, 1);
  EXPECT_EQ(v->rhs, 0);

  const BipartiteGraph two_edges(2, 2, std::vector<Edge>{{0, 0}, {1, 1}});
  EXPECT_FALSE(lemma4_check_exhaustive(two_edges, {{1, 1}, {1, 1}}));
}

TEST(CutCheck, SizeLimitAndShapeErrors) {
  EXPECT_THROW(lemma4_check_exhaustive(BipartiteGraph(13, 12), BigraphicSequence(std::vector<int>(13, 0), std::vector<int>(12, 0))),
               SizeTooLarge);
  EXPECT_NO_THROW(lemma4_check_exhaustive(BipartiteGraph(3, 3), BigraphicSequence({0, 0, 0}, {0, 0, 0}), 6));
  EXPECT_THROW(lemma4_check_exhaustive(BipartiteGraph(2, 2), BigraphicSequence({1}, {1, 0})), DimensionMismatch);
}

TEST(CutCheck, ReportsTheLargestDeficiency) {
  // Empty host: the worst cut is X = A, Y = B with deficiency pi(A).
  const auto v = lemma4_check_exhaustive(BipartiteGraph(3, 3), {{1, 2, 0}, {1, 1, 1}});
  ASSERT_TRUE(v);
  EXPECT_EQ(v->deficiency(), 3);
  EXPECT_EQ(v->x, (std::vector<int>{0, 1}));
  EXPECT_EQ(v->y, (std::vector<int>{0, 1, 2}));
}

TEST(FixedOrderEmbed, Examples) {
  const auto full = fixed_order_embed(BipartiteGraph::complete(2, 2), {{1, 1}, {1, 1}});
  ASSERT_TRUE(full);
  EXPECT_EQ(degree_sequence_of(BipartiteGraph(2, 2, full.edges)), BigraphicSequence({1, 1}, {1, 1}));

  const auto lonely = fixed_order_embed(BipartiteGraph(2, 2, std::vector<Edge>{{0, 0}}), {{1, 1}, {1, 1}});
  EXPECT_FALSE(lonely);
  EXPECT_EQ(lonely.deficit, 1);
}

TEST(FixedOrderEmbed, UnequalSidesAreInfeasibleImmediately) {
  const auto r = fixed_order_embed(BipartiteGraph::complete(2, 3), {{1, 1}, {1, 1, 1}});
  EXPECT_FALSE(r);
  EXPECT_EQ(r.deficit, 1);
}

TEST(FixedOrderEmbed, TwoUnbalancedBicliquesHaveNoPerfectMatching) {
  const auto host4 = two_unbalanced_bicliques(4);
  const BigraphicSequence ones4(std::vector<int>(4, 1), std::vector<int>(4, 1));
  ASSERT_FALSE(brute::brute_fixed_order(host4, ones4));
  EXPECT_FALSE(fixed_order_embed(host4, ones4));

  // K_{5,3} + K_{3,5}: a maximum matching has 3 + 3 edges.
  const auto r8 = fixed_order_embed(two_unbalanced_bicliques(8), {std::vector<int>(8, 1), std::vector<int>(8, 1)});
  EXPECT_FALSE(r8);
  EXPECT_EQ(r8.deficit, 2);
}

TEST(FixedOrderEmbed, AgreesWithSubgraphEnumerationOnTinyHosts) {
  // All hosts on 2 x 3 and every demand with entries up to the opposite side.
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const auto host = brute::graph_from_mask(2, 3, mask);
    for (int code = 0; code < 16 * 27; ++code) {
      std::vector<int> a{code % 4, code / 4 % 4};
      std::vector<int> b{code / 16 % 3, code / 48 % 3, code / 144 % 3};
      const BigraphicSequence demand(a, b);
      const auto r = fixed_order_embed(host, demand);
      ASSERT_EQ(static_cast<bool>(r), brute::brute_fixed_order(host, demand));
      if (r) {
        EXPECT_EQ(degree_sequence_of(BipartiteGraph(2, 3, r.edges)), demand);
        for (const Edge& e : r.edges) {
          EXPECT_TRUE(host.has_edge(e.a, e.b));
        }
      }
    }
  }
}

TEST(FixedOrderEmbed, CutConditionEquivalenceOnBalancedDemands) {
  Rng rng(19);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(5));
    const int n = 1 + static_cast<int>(rng.below(5));
    const auto host = brute::graph_from_mask(m, n, rng.next() & rng.next());
    const auto demand = degree_sequence_of(brute::graph_from_mask(m, n, rng.next()));
    const bool flow_ok = static_cast<bool>(fixed_order_embed(host, demand));
    const bool cut_ok = !lemma4_check_exhaustive(host, demand);
    ASSERT_EQ(flow_ok, cut_ok) << "m=" << m << " n=" << n;
    (flow_ok ? feasible : infeasible)++;
  }
  EXPECT_GT(feasible, 20);
  EXPECT_GT(infeasible, 20);
}
