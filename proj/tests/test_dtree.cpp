#include <gtest/gtest.h>

#include "dpmos/dtree.hpp"
#include "dpmos/moet.hpp"
#include "dpmos/pareto.hpp"
#include "dpmos/suites.hpp"
#include "oracles.hpp"

using namespace dpmos;

namespace {

using T = DecisionTree;

std::shared_ptr<const Schema> one_numeric() {
    auto s = std::make_shared<Schema>();
    s->attributes = {Attribute::numeric("v", 0, 1)};
    s->label = "y";
    s->positive = "1";
    s->negative = "0";
    return s;
}

TabularDataset toy_data(std::size_t n, std::uint64_t seed) {
    const auto u = toy_universe();
    RandomSource rng(seed);
    std::vector<Record> rs;
    for (std::size_t i = 0; i < n; ++i) rs.push_back(u[rng.index(u.size())]);
    return TabularDataset(toy_schema(), rs);
}

}  // namespace

TEST(Predict, Routing) {
    const auto schema = one_numeric();
    const auto tree = T::split(0, 0.5, T::leaf(false), T::leaf(true));
    EXPECT_TRUE(predict(tree, Record{{0.7}, true}, *schema));
    EXPECT_FALSE(predict(tree, Record{{0.3}, true}, *schema));
    EXPECT_TRUE(predict(tree, Record{{0.5}, true}, *schema));
    EXPECT_TRUE(predict(T::leaf(true), Record{{0.1}, false}, *schema));
    const auto cat = T::split(1, 1, T::leaf(true), T::leaf(false), true);
    EXPECT_TRUE(cat.predict(Record{{0.0, 1}, false}));
    EXPECT_FALSE(cat.predict(Record{{0.0, 0}, false}));
    EXPECT_THROW(predict(cat, Record{{0.1}, false}, *schema), std::invalid_argument);
}

TEST(Rates, SingleRecordNeighbors) {
    const auto schema = one_numeric();
    const auto tree = T::split(0, 0.5, T::leaf(false), T::leaf(true));
    const TabularDataset x(schema, {Record{{0.7}, true}});
    const TabularDataset xp(schema, {Record{{0.3}, true}});
    EXPECT_EQ(tpr(x, tree), 1.0);
    EXPECT_EQ(tpr(xp, tree), 0.0);
    EXPECT_EQ(tpr(ConfusionCounts{0, 3, 4, 5}), 0.0);
    EXPECT_DOUBLE_EQ(tpr(ConfusionCounts{7, 0, 10, 0}), 0.7);
    EXPECT_EQ(tpr(ConfusionCounts{}), 0.0);
    EXPECT_EQ(tnr(ConfusionCounts{}), 0.0);
}

TEST(RateSensitivity, FrozenValues) {
    EXPECT_DOUBLE_EQ(rate_sensitivity(7, 3, 0), 7.0 / 90);
    EXPECT_DOUBLE_EQ(rate_sensitivity(2, 1, 0), 2.0 / 6);
    EXPECT_DOUBLE_EQ(rate_sensitivity(7, 3, 5), 1.0 / 5);
    EXPECT_DOUBLE_EQ(rate_sensitivity(7, 3, 8), 1.0 / 2);
    EXPECT_DOUBLE_EQ(rate_sensitivity(7, 3, 9), 1.0);
    EXPECT_DOUBLE_EQ(rate_sensitivity(0, 0, 0), 1.0);
    EXPECT_DOUBLE_EQ(rate_sensitivity(1, 0, 0), 1.0);
    EXPECT_DOUBLE_EQ(rate_sensitivity(0, 1, 0), 0.5);
}

TEST(RateSensitivity, EqualsBallOracle) {
    for (long a = 0; a < 14; ++a)
        for (long b = 0; b < 14; ++b)
            for (long t = 0; t < 12; ++t)
                EXPECT_NEAR(rate_sensitivity(a, b, t), oracle::rate_ls(a, b, t), 1e-14) << a << ' ' << b << ' ' << t;
}

TEST(RateSensitivity, MonotoneAndBounded) {
    for (std::size_t a = 0; a < 30; ++a)
        for (std::size_t b = 0; b < 30; ++b)
            for (std::size_t t = 0; t < 40; ++t) {
                EXPECT_LE(rate_sensitivity(a, b, t), rate_sensitivity(a, b, t + 1));
                EXPECT_LE(rate_sensitivity(a, b, t), 1.0);
            }
}

TEST(RateSensitivity, DatasetLevelMatchesBruteForce) {
    const auto u = toy_universe();
    const std::vector<Record> universe(u.begin(), u.begin() + 5);
    const auto nb = record_add_remove(universe);
    for (const auto& x : enumerate_datasets(toy_schema(), universe, 3))
        for (const auto& tree : toy_trees())
            for (std::size_t t = 0; t < 3; ++t) {
                // the brute force only explores the declared universe, so it can sit below the bound
                EXPECT_GE(delta_tpr(x, t, tree) + 1e-15,
                          brute_force_element_local_sensitivity(tpr_utility(), x, t, tree, nb));
                EXPECT_GE(delta_tnr(x, t, tree) + 1e-15,
                          brute_force_element_local_sensitivity(tnr_utility(), x, t, tree, nb));
            }
}

TEST(RandomTree, Shapes) {
    RandomSource rng(1);
    const auto schema = toy_schema();
    const auto leaf = random_tree(0, *schema, rng);
    EXPECT_EQ(leaf.node_count(), 1u);
    const auto t2 = random_tree(2, *schema, rng);
    EXPECT_EQ(t2.node_count(), 7u);
    EXPECT_EQ(t2.depth(), 2u);
    std::size_t leaves = 0;
    for (std::size_t i = 0; i < t2.node_count(); ++i)
        if (t2.node(i).leaf) {
            ++leaves;
            EXPECT_EQ(t2.node_depth(i), 2u);
        }
    EXPECT_EQ(leaves, 4u);
    t2.check(*schema);
    RandomSource a(9), b(9);
    EXPECT_EQ(random_tree(4, *schema, a), random_tree(4, *schema, b));
}

TEST(Crossover, LeavesExchangeLabels) {
    RandomSource rng(3);
    const auto [a, b] = crossover(T::leaf(true), T::leaf(false), rng);
    EXPECT_EQ(a, T::leaf(false));
    EXPECT_EQ(b, T::leaf(true));
}

TEST(Crossover, PreservesNodeTotal) {
    RandomSource rng(4);
    const auto schema = toy_schema();
    for (int i = 0; i < 200; ++i) {
        const auto x = random_tree(1 + rng.index(3), *schema, rng), y = random_tree(1 + rng.index(3), *schema, rng);
        const auto [a, b] = crossover(x, y, rng);
        EXPECT_EQ(a.node_count() + b.node_count(), x.node_count() + y.node_count());
    }
}

TEST(Crossover, RootSwap) {
    const auto x = toy_trees()[3], y = toy_trees()[1];
    EXPECT_EQ(x.with_subtree(0, y.subtree(0)), y);
    EXPECT_EQ(y.with_subtree(0, x.subtree(0)), x);
}

TEST(Mutate, RootReplacementDepth) {
    const auto schema = toy_schema();
    // seed search: find a draw that picks the root of a 3-node tree
    for (std::uint64_t s = 0; s < 100; ++s) {
        RandomSource probe(s);
        if (probe.index(3) != 0) continue;
        RandomSource rng(s);
        const auto m = mutate(toy_trees()[1], 3, *schema, rng);
        EXPECT_EQ(m.depth(), 3u);
        EXPECT_EQ(m.node_count(), 15u);
        return;
    }
    FAIL() << "no seed selected the root";
}

TEST(Mutate, PrunedDepthBounded) {
    RandomSource rng(5);
    const auto schema = toy_schema();
    for (int i = 0; i < 10000; ++i) {
        const std::size_t d_max = 1 + rng.index(5);
        const auto t = random_tree(rng.index(d_max + 1), *schema, rng);
        const auto m = prune(mutate(t, d_max, *schema, rng), d_max, rng);
        ASSERT_LE(m.depth(), d_max);
    }
}

TEST(Prune, Cases) {
    const auto schema = toy_schema();
    RandomSource a(6), b(6);
    const auto t = random_tree(2, *schema, a);
    b = a;
    EXPECT_EQ(prune(t, 3, a), t);
    EXPECT_EQ(a.next(), b.next());  // no randomness consumed
    const auto deep = random_tree(5, *schema, a);
    const auto cut = prune(deep, 3, a);
    EXPECT_EQ(cut.depth(), 3u);
    EXPECT_EQ(cut.node_count(), 15u);
    EXPECT_EQ(prune(T::leaf(true), 0, a), T::leaf(true));
}

TEST(EvolutionConfig, Validation) {
    EvolutionConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.selection_calls(), 12u);
    c.p = 3;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.s = 31;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.d = 11;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.o = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(DpMoet, PopulationTrace) {
    const auto x = toy_data(40, 1);
    EvolutionConfig c{2, 1, 1, 2, 4, 1};
    RandomSource evo(1), sel(2);
    const auto r = dp_moet(x, c, 1.0, {}, evo, sel);
    EXPECT_EQ(r.population_trace, (std::vector<std::size_t>{2, 1, 3, 1}));
    EXPECT_EQ(r.calls, 2u);
    EXPECT_DOUBLE_EQ(r.per_call_epsilon, 0.5);
    EXPECT_EQ(r.trees.size(), 1u);
}

TEST(DpMoet, DefaultTraceAndBudget) {
    const auto x = toy_data(60, 2);
    EvolutionConfig c;
    for (auto v : {Variant::pareto_local, Variant::pareto_global, Variant::agg_local, Variant::agg_global}) {
        RandomSource evo(3), sel(4);
        const auto r = dp_moet(x, c, 1.0, {v, {3, 2}, GlobalMechanism::exponential}, evo, sel);
        EXPECT_EQ(r.population_trace, (std::vector<std::size_t>{30, 3, 33, 3, 33, 3, 33, 3}));
        EXPECT_EQ(r.calls, 12u);
        EXPECT_DOUBLE_EQ(r.per_call_epsilon, 1.0 / 12);
        for (const auto& t : r.trees) EXPECT_LE(t.depth(), c.d_max);
        for (const auto& u : r.utilities) {
            EXPECT_GE(u[0], 0.0);
            EXPECT_LE(u[1], 1.0);
        }
    }
}

TEST(DpMoet, NoIterations) {
    const auto x = toy_data(20, 3);
    EvolutionConfig c{6, 2, 0, 2, 4, 2};
    RandomSource evo(1), sel(1);
    const auto r = dp_moet(x, c, 1.0, {}, evo, sel);
    EXPECT_EQ(r.population_trace, (std::vector<std::size_t>{6, 2}));
    EXPECT_EQ(r.calls, 2u);
}

TEST(DpMoet, HugeEpsilonMatchesNonPrivate) {
    const auto x = toy_data(80, 4);
    EvolutionConfig c{10, 3, 2, 2, 5, 3};
    for (auto v : {Variant::pareto_global, Variant::agg_global}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            RandomSource e1(s), e2(s), s1(s + 100), s2(s + 100);
            const SelectorOptions opt{v, {3, 2}, GlobalMechanism::exponential};
            const auto a = dp_moet(x, c, 1e9, opt, e1, s1);
            const auto b = nodp_moet(x, c, opt, e2, s2);
            EXPECT_EQ(a.utilities, b.utilities) << to_string(v) << " seed " << s;
        }
    }
}

TEST(DpMoet, Deterministic) {
    const auto x = toy_data(50, 5);
    EvolutionConfig c{8, 2, 2, 2, 4, 2};
    RandomSource e1(7), e2(7), s1(8), s2(8);
    const auto a = dp_moet(x, c, 0.5, {}, e1, s1), b = dp_moet(x, c, 0.5, {}, e2, s2);
    ASSERT_EQ(a.trees.size(), b.trees.size());
    for (std::size_t i = 0; i < a.trees.size(); ++i) EXPECT_EQ(a.trees[i], b.trees[i]);
}

TEST(DpMoet, DampeningIsNotOrderPreservingUnderTies) {
    // front made only of tied duplicates: PS = -1 for (0,1) twice, -2 for (1,0)
    // three times, yet both groups dampen to D = -1
    std::vector<ConfusionCounts> counts{{0, 4, 4, 4}, {4, 0, 4, 4}, {4, 0, 4, 4}, {4, 0, 4, 4}, {0, 4, 4, 4}};
    const auto objs = tree_objectives(counts);
    const auto ps = pareto_scores(utility_matrix(objs));
    EXPECT_EQ(ps, (std::vector<long>{-1, -2, -2, -2, -1}));
    const auto lw = privpareto_local_log_weights(objs, 1.0);
    EXPECT_DOUBLE_EQ(lw[0], lw[1]);
    EXPECT_DOUBLE_EQ(lw[0], -0.5);
}
