#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <set>

#include "bipack/embedder.hpp"
#include "bipack/generators.hpp"
#include "bipack/io.hpp"
#include "bipack/oracle.hpp"
#include "support/brute.hpp"

using namespace bipack;
using boost::multiprecision::cpp_int;

namespace {

// Band index of degree d for cap p/q and growth g = gn/gd, by walking i
// upward until (cap / g^i) < d, in exact integers.
int band_by_iteration(int d, cpp_int cap_num, cpp_int cap_den, cpp_int gn, cpp_int gd) {
  if (d == 0) return 0;
  cpp_int num = cap_num, den = cap_den;  // cap / g^(i-1)
  for (int i = 1;; ++i) {
    // next = cap / g^i
    const cpp_int next_num = num * gd, next_den = den * gn;
    if (next_num < next_den * d && num >= den * d) return i;
    num = next_num;
    den = next_den;
    if (i > 10000) return -1;
  }
}

EmbedConfig relaxed(std::uint64_t seed = 1, Rational eps = Rational(1, 10)) {
  EmbedConfig cfg;
  cfg.eps = eps;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(DegreeBands, WorkedExample) {
  // cap 8, delta = 0.05.
  const DegreeBands<ExactRational> bands(ExactRational(8), ExactRational(21) / 20);
  EXPECT_EQ(bands.class_of(8), 1);
  EXPECT_EQ(bands.class_of(4), 15);
  EXPECT_EQ(bands.class_of(0), 0);
  EXPECT_EQ(bands.class_of(9), -1);
  for (int d : {1, 2, 3, 4, 5, 6, 7, 8}) {
    EXPECT_EQ(bands.class_of(d), band_by_iteration(d, 8, 1, 21, 20)) << d;
  }
  EXPECT_TRUE(bands.in_band(4, 15));
  EXPECT_FALSE(bands.in_band(4, 14));
}

TEST(PartitionDegreeClasses, AgreesWithExactIteration) {
  const auto target = gen_star_forest(21, {8, 8, 4, 1});
  const auto cfg = relaxed(1, Rational(49, 100));
  const auto plan = partition_degree_classes(target, cfg);
  EXPECT_DOUBLE_EQ(plan.cap, 8.0);
  EXPECT_EQ(plan.delta, Rational(49, 1000));
  EXPECT_TRUE(partition_is_valid(plan, target));
  for (int s = 0; s < target.m(); ++s) {
    const int expected = band_by_iteration(target.a_degree(s), 8, 1, 1049, 1000);
    const auto& cls = plan.classes[expected];
    EXPECT_NE(std::find(cls.begin(), cls.end(), s), cls.end()) << "vertex " << s;
  }
  // class count bound: k <= ceil(log_{1+delta} cap) + 1
  EXPECT_LE(plan.class_count(), static_cast<int>(std::ceil(std::log(8.0) / std::log(1.049))) + 1);
}

TEST(PartitionDegreeClasses, TrivialShapes) {
  const auto uniform = gen_star_forest(12, {3, 3, 3, 3});
  const auto plan = partition_degree_classes(uniform, relaxed());
  int nonempty = 0;
  for (int i = 1; i <= plan.class_count(); ++i) nonempty += plan.classes[i].empty() ? 0 : 1;
  EXPECT_EQ(nonempty, 1);
  EXPECT_EQ(plan.classes[0].size(), 8u);

  const auto empty = partition_degree_classes(BipartiteGraph(5, 5), relaxed());
  EXPECT_EQ(empty.classes[0], (std::vector<int>{0, 1, 2, 3, 4}));
  for (int i = 1; i <= empty.class_count(); ++i) {
    EXPECT_TRUE(empty.classes[i].empty());
  }
}

TEST(PartitionDegreeClasses, Errors) {
  const BipartiteGraph two_parent(3, 3, std::vector<Edge>{{0, 0}, {1, 0}});
  EXPECT_THROW(partition_degree_classes(two_parent, relaxed()), BadTarget);

  auto capped = relaxed();
  capped.cap_override = Rational(2);
  EXPECT_THROW(partition_degree_classes(gen_star_forest(6, {3}), capped), CapViolation);

  EmbedConfig strict;
  strict.mode = EmbedMode::Strict;
  // At this scale the strict cap is below 1, so any edge violates it.
  EXPECT_THROW(partition_degree_classes(brute::perfect_matching(16), strict), CapViolation);
  EXPECT_THROW(partition_degree_classes(gen_star_forest(4, {1}), strict), BadTarget);
  strict.cap_override = Rational(4);
  EXPECT_THROW(partition_degree_classes(BipartiteGraph(4, 4), strict), std::invalid_argument);
}

TEST(PartitionDegreeClasses, BandInvariantOnRandomTargets) {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(60));
    std::vector<int> hubs;
    int left = n;
    while (left > 0 && hubs.size() < static_cast<std::size_t>(n)) {
      const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(left, 12))));
      hubs.push_back(d);
      left -= d;
      if (rng.below(4) == 0) break;
    }
    const auto target = gen_star_forest(n, hubs);
    const auto cfg = relaxed(trial, Rational(1 + static_cast<std::int64_t>(rng.below(48)), 100));
    const auto plan = partition_degree_classes(target, cfg);
    ASSERT_TRUE(partition_is_valid(plan, target));
    const auto cap = *std::max_element(hubs.begin(), hubs.end());
    const auto d = plan.delta;
    for (int i = 1; i <= plan.class_count(); ++i)
      for (int s : plan.classes[i])
        EXPECT_EQ(band_by_iteration(target.a_degree(s), cap, 1, d.den() + d.num(), d.den()), i);
  }
}

TEST(IsSmallClass, Examples) {
  EXPECT_TRUE(is_small_class(50, Rational(1, 2), 100));
  EXPECT_FALSE(is_small_class(295, Rational(1, 2), 100));
  EXPECT_TRUE(is_small_class(294, Rational(1, 2), 100));
  EXPECT_TRUE(is_small_class(0, Rational(1, 100), 2));
  EXPECT_THROW(is_small_class(1, Rational(1, 4), 1), std::invalid_argument);
}

TEST(AzumaBound, Examples) {
  EXPECT_NEAR(azuma_bound(0.4, 200), std::exp(-4.0), 1e-15);
  EXPECT_NEAR(azuma_bound(0.4, 200), 0.0183, 1e-4);
  EXPECT_GT(azuma_bound(0.1, 1), 0.998);
  EXPECT_LT(100 * azuma_bound(0.5, 295), 0.01);
  EXPECT_NEAR(100 * azuma_bound(0.5, 295), 0.0099, 1e-4);
  EXPECT_THROW(azuma_bound(0.4, 0), std::invalid_argument);
  EXPECT_THROW(azuma_bound(0.6, 10), std::invalid_argument);
}

TEST(GreedyEmbedSmall, CompleteHostNeverSticks) {
  const int n = 20;
  const auto target = gen_star_forest(n, {5, 4, 4, 3, 2, 1, 1});
  const auto host = BipartiteGraph::complete(n, n);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto plan = partition_degree_classes(target, relaxed());
    auto assignment = assign_blocks(plan, n, std::vector<bool>(plan.classes.size(), true), rng);
    std::vector<std::vector<int>> leaves(n);
    const auto out = greedy_embed_small(host, target, plan, assignment, leaves, rng);
    ASSERT_TRUE(out.ok);
    EXPECT_EQ(out.consumed, 20);
    std::set<int> used(assignment.used_by_greedy.begin(), assignment.used_by_greedy.end());
    EXPECT_EQ(used.size(), 20u);
    for (int s = 0; s < n; ++s) {
      EXPECT_EQ(static_cast<int>(leaves[s].size()), target.a_degree(s));
    }
  }
}

TEST(GreedyEmbedSmall, ExactNeighbourhoodAndStuck) {
  // A single leaf whose hub image has exactly one neighbour.
  const auto target = gen_star_forest(1, {1});
  const BipartiteGraph host(1, 1, std::vector<Edge>{{0, 0}});
  const auto plan = partition_degree_classes(target, relaxed());
  Rng rng(5);
  auto assignment = assign_blocks(plan, 1, {false, true}, rng);
  std::vector<std::vector<int>> leaves(1);
  const auto ok = greedy_embed_small(host, target, plan, assignment, leaves, rng);
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(leaves[0], std::vector<int>{0});

  const BipartiteGraph lonely(1, 1);
  Rng rng2(5);
  auto assignment2 = assign_blocks(plan, 1, {false, true}, rng2);
  std::vector<std::vector<int>> leaves2(1);
  const auto stuck = greedy_embed_small(lonely, target, plan, assignment2, leaves2, rng2);
  EXPECT_FALSE(stuck.ok);
  EXPECT_EQ(stuck.stuck_vertex, 0);
  EXPECT_EQ(stuck.available, 0);
  EXPECT_EQ(stuck.demand, 1);
}

TEST(AssignBlocksAndPairs, SizesDisjointnessAndDeterminism) {
  const int n = 8;
  const auto target = gen_star_forest(n, {5, 3});
  const auto host = BipartiteGraph::complete(n, n);
  auto cfg = relaxed();
  cfg.small_class_limit = 0;
  const auto plan = partition_degree_classes(target, cfg);
  Rng rng(9), rng_again(9);
  const auto pa = assign_blocks_and_pairs(host, target, plan, cfg, rng);
  const auto pb = assign_blocks_and_pairs(host, target, plan, cfg, rng_again);
  ASSERT_EQ(pa.pairs.size(), 2u);
  std::multiset<std::size_t> sizes{pa.pairs[0].e.size(), pa.pairs[1].e.size()};
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{3, 5}));
  std::set<int> all(pa.pairs[0].e.begin(), pa.pairs[0].e.end());
  all.insert(pa.pairs[1].e.begin(), pa.pairs[1].e.end());
  EXPECT_EQ(all.size(), 8u);
  EXPECT_EQ(pa.a_order, pb.a_order);
  EXPECT_EQ(pa.s_to_a, pb.s_to_a);
  for (std::size_t i = 0; i < pa.pairs.size(); ++i) {
    EXPECT_EQ(pa.pairs[i].e, pb.pairs[i].e);
  }

  // The C_0 block is the tail of the permutation.
  const std::vector<int> tail(pa.a_order.end() - static_cast<std::ptrdiff_t>(plan.classes[0].size()), pa.a_order.end());
  EXPECT_EQ(pa.a_blocks[0], tail);
}

TEST(AssignBlocksAndPairs, SingleLargeClassTakesEveryUnusedVertex) {
  const int n = 6;
  const auto target = gen_star_forest(n, {2, 2, 2});
  auto cfg = relaxed();
  cfg.small_class_limit = 0;
  const auto plan = partition_degree_classes(target, cfg);
  Rng rng(2);
  const auto pa = assign_blocks_and_pairs(BipartiteGraph::complete(n, n), target, plan, cfg, rng);
  ASSERT_EQ(pa.pairs.size(), 1u);
  EXPECT_EQ(pa.pairs[0].e, (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(AssignBlocksAndPairs, InsufficientB) {
  // 5 leaves requested but only 4 B-vertices on the host.
  PartitionPlan plan = partition_degree_classes(gen_star_forest(5, {5}), relaxed());
  const BipartiteGraph target = gen_star_forest(5, {5});
  Rng rng(1);
  auto assignment = assign_blocks(plan, 5, std::vector<bool>(plan.classes.size(), false), rng);
  EXPECT_THROW(draw_pairs(assignment, target, plan, 4, rng), InsufficientB);
}

TEST(EmbedPair, Examples) {
  const auto host = BipartiteGraph::complete(4, 4);
  const std::vector<int> images{1, 3}, demands{2, 1}, e{0, 2, 3};
  const auto ok = embed_pair(host, images, demands, e);
  ASSERT_TRUE(ok.feasible);
  EXPECT_EQ(ok.leaves[0].size(), 2u);
  EXPECT_EQ(ok.leaves[1].size(), 1u);

  const BipartiteGraph isolated(2, 2, std::vector<Edge>{{1, 0}, {1, 1}});
  const std::vector<int> images2{0, 1}, demands2{1, 1}, e2{0, 1};
  EXPECT_FALSE(embed_pair(isolated, images2, demands2, e2).feasible);
}

TEST(EmbedPair, ConditionOneHostRestrictedToOnePairIsInfeasible) {
  const auto host = gen_condition1_counterexample(8);
  const std::vector<int> images{0, 1, 2, 3, 4, 5, 6, 7}, demands(8, 1), e{0, 1, 2, 3, 4, 5, 6, 7};
  const auto r = embed_pair(host, images, demands, e);
  EXPECT_FALSE(r.feasible);
  EXPECT_GE(r.deficit, 2);
  OracleBudget budget;
  EXPECT_EQ(brute_force_embed(host, brute::perfect_matching(8), budget).status, OracleStatus::None);
}

TEST(Embed, CompleteHostPerfectMatching) {
  const auto host = BipartiteGraph::complete(8, 8);
  const auto target = brute::perfect_matching(8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto out = embed(host, target, relaxed(seed));
    ASSERT_TRUE(out.ok());
    EXPECT_TRUE(verify_embedding(host, target, *out.embedding));
  }
}

TEST(Embed, ConditionOneHostFailsAndOracleAgrees) {
  const auto host = gen_condition1_counterexample(8);
  const auto target = brute::perfect_matching(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto cfg = relaxed(seed);
    cfg.small_class_limit = 0;  // force the flow path
    const auto out = embed(host, target, cfg);
    ASSERT_FALSE(out.ok());
    EXPECT_EQ(out.failure->phase, "pair");
    EXPECT_FALSE(out.failure->conditions_unmet);
    EXPECT_EQ(out.attempts, cfg.retries + 1);
    EXPECT_EQ(out.failure->attempts, cfg.retries + 1);
  }
  EXPECT_FALSE(embed(host, target, relaxed(3)).ok());
  EXPECT_EQ(brute_force_embed(host, target).status, OracleStatus::None);
}

TEST(Embed, DenseRandomHostViaFlowPath) {
  Rng rng(77);
  const int n = 40;
  const auto host = gen_random_bipartite(n, 0.8, rng);
  const auto target = gen_uniform_star_forest(n, 3, 30);
  auto cfg = relaxed(4);
  cfg.small_class_limit = 0;
  const auto out = embed(host, target, cfg);
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(verify_embedding(host, target, *out.embedding));
  ASSERT_FALSE(out.pairs.empty());
  for (const auto& p : out.pairs) {
    EXPECT_GE(p.e_size, p.z);
  }
}

TEST(Embed, SeedDeterminismIncludingFailures) {
  Rng rng(8);
  const auto host = gen_random_bipartite(24, 0.55, rng);
  const auto target = gen_uniform_star_forest(24, 4, 24);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto cfg = relaxed(seed);
    cfg.small_class_limit = seed % 2 ? 0 : 100;
    const auto a = embed(host, target, cfg);
    const auto b = embed(host, target, cfg);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  }
}

TEST(Embed, PreconditionFailuresAreFlagged) {
  const auto host = BipartiteGraph::complete(4, 4);
  const BipartiteGraph two_parent(4, 4, std::vector<Edge>{{0, 0}, {1, 0}});
  const auto bad = embed(host, two_parent, relaxed());
  ASSERT_FALSE(bad.ok());
  EXPECT_TRUE(bad.failure->conditions_unmet);

  EmbedConfig strict;
  strict.mode = EmbedMode::Strict;
  const auto s = embed(BipartiteGraph::complete(16, 16), brute::perfect_matching(16), strict);
  ASSERT_FALSE(s.ok());
  EXPECT_TRUE(s.failure->conditions_unmet);
  EXPECT_EQ(s.failure->phase, "conditions");

  EXPECT_THROW(embed(BipartiteGraph::complete(4, 4), BipartiteGraph(3, 3), relaxed()), DimensionMismatch);
}

TEST(Embed, DegreeZeroTargetVerticesGetInjectiveImages) {
  const auto host = BipartiteGraph::complete(10, 10);
  const auto target = gen_star_forest(10, {3, 2});
  const auto out = embed(host, target, relaxed(12));
  ASSERT_TRUE(out.ok());
  std::set<int> images(out.embedding->t_to_b.begin(), out.embedding->t_to_b.end());
  EXPECT_EQ(images.size(), 10u);
}
