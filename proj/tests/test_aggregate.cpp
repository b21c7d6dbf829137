#include <gtest/gtest.h>

#include <cmath>

#include "dpmos/aggregate.hpp"
#include "dpmos/dtree.hpp"
#include "dpmos/suites.hpp"
#include "oracles.hpp"

using namespace dpmos;

namespace {

using D = std::vector<double>;

SensitivityFunction<D, int> constant(double c) { return global_constant_sensitivity<D, int>(c); }

Objective objective(std::vector<double> values, double local, double global) {
    Objective o;
    o.values = std::move(values);
    o.local = [local](std::size_t, std::size_t) { return local; };
    o.global = global;
    return o;
}

}  // namespace

TEST(ScaleSensitivity, Examples) {
    const D x{0};
    EXPECT_EQ(scale_sensitivity(constant(0.5), 1)(x, 0, 0), 0.5);
    const auto s = scale_sensitivity(constant(0.5), -3);
    EXPECT_EQ(s(x, 2, 0), 1.5);
    EXPECT_EQ(*s.global, 1.5);
    EXPECT_EQ(scale_sensitivity(constant(0.5), 0)(x, 0, 0), 0.0);
}

TEST(SumSensitivities, Examples) {
    const D x{0};
    EXPECT_EQ((sum_sensitivities<D, int>({constant(0.7)})(x, 1, 0)), 0.7);
    const auto s = sum_sensitivities<D, int>({constant(0.2), constant(0.3)});
    EXPECT_DOUBLE_EQ(s(x, 0, 0), 0.5);
    EXPECT_EQ(s.kind, SensitivityKind::global_constant);
    EXPECT_THROW((sum_sensitivities<D, int>({})), std::invalid_argument);
}

TEST(AggregateSensitivity, Examples) {
    const D x{0};
    EXPECT_EQ((aggregate_sensitivity<D, int>({constant(0.4)}, {1})(x, 0, 0)), 0.4);
    EXPECT_DOUBLE_EQ((aggregate_sensitivity<D, int>({constant(0.5), constant(0.25)}, {-2, 4})(x, 0, 0)), 2.0);
    EXPECT_THROW((aggregate_sensitivity<D, int>({constant(0.5)}, {1, 2})), std::invalid_argument);
}

TEST(AggregateSensitivity, TreeRatesWeighted) {
    const auto schema = toy_schema();
    const auto u = toy_universe();
    const TabularDataset x(schema, {u[0], u[1], u[2], u[3], u[6]});
    const auto tree = toy_trees()[1];
    const auto agg = aggregate_sensitivity<TabularDataset, DecisionTree>(
        {delta_tpr_sensitivity(), delta_tnr_sensitivity()}, {3, 2});
    for (std::size_t t = 0; t < 4; ++t)
        EXPECT_DOUBLE_EQ(agg(x, t, tree), 3 * delta_tpr(x, t, tree) + 2 * delta_tnr(x, t, tree));
    EXPECT_EQ(*agg.global, 5.0);
}

TEST(AggregateSensitivity, SumDominatesBruteForce) {
    const auto schema = toy_schema();
    const auto u = toy_universe();
    const auto nb = record_add_remove({u[0], u[1], u[2], u[3]});
    const auto sum = sum_sensitivities<TabularDataset, DecisionTree>({delta_tpr_sensitivity(), delta_tnr_sensitivity()});
    const auto both = aggregate_utility<TabularDataset, DecisionTree>({tpr_utility(), tnr_utility()}, {1, 1});
    for (const auto& x : enumerate_datasets(schema, {u[0], u[1], u[2], u[3]}, 3))
        for (const auto& tree : toy_trees())
            for (std::size_t t = 0; t < 2; ++t)
                EXPECT_GE(sum(x, t, tree) + 1e-12, brute_force_element_local_sensitivity(both, x, t, tree, nb));
}

TEST(AggregateGlobalBound, Examples) {
    EXPECT_EQ(aggregate_global_bound({1, 1}, {3, 2}), 5.0);
    EXPECT_EQ(aggregate_global_bound({1, 1}, {1, 100}), 101.0);
    EXPECT_EQ(aggregate_global_bound({1, 7}, {0, 0}), 0.0);
    EXPECT_THROW(aggregate_global_bound({1}, {1, 2}), std::invalid_argument);
}

TEST(PrivAgg, GlobalSoftmax) {
    const std::vector<Objective> objs{objective({0, 5}, 5, 5)};
    const auto p = exponential_probabilities(aggregate_objective(objs, {1}).values, 5, 2);
    EXPECT_NEAR(p[0], 0.2689, 5e-5);
    RandomSource rng(4);
    double hi = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) hi += privagg_global(objs, {1}, GlobalMechanism::exponential, 2.0, rng) == 1;
    EXPECT_NEAR(hi / n, M_E / (1 + M_E), 0.005);
}

TEST(PrivAgg, ZeroWeightsUniform) {
    const std::vector<Objective> objs{objective({0, 5, 2}, 1, 1), objective({1, 0, 3}, 1, 1)};
    RandomSource rng(5);
    std::vector<double> c(3, 0);
    for (int i = 0; i < 30000; ++i) c[privagg_global(objs, {0, 0}, GlobalMechanism::exponential, 1.0, rng)] += 1;
    for (double x : c) EXPECT_NEAR(x / 30000, 1.0 / 3, 0.015);
}

TEST(PrivAgg, SingleCandidate) {
    const std::vector<Objective> objs{objective({2}, 1, 1), objective({3}, 1, 1)};
    RandomSource rng(1);
    EXPECT_EQ(privagg_global(objs, {1, 1}, GlobalMechanism::rnm_gumbel, 1.0, rng), 0u);
    EXPECT_EQ(privagg_local(objs, {1, 1}, 1.0, rng), 0u);
}

TEST(PrivAgg, ConstantLocalEqualsGlobal) {
    const std::vector<Objective> objs{objective({0.1, 0.9, 0.4}, 1, 1), objective({0.8, 0.2, 0.5}, 1, 1)};
    const auto local = normalized_probabilities(privagg_local_log_weights(objs, {3, 2}, 1.5));
    const auto agg = aggregate_objective(objs, {3, 2});
    const auto global = exponential_probabilities(agg.values, agg.global, 1.5);
    for (std::size_t r = 0; r < 3; ++r) EXPECT_NEAR(local[r], global[r], 1e-12);
}

TEST(PrivAgg, SingleUtilityIsLocalDampening) {
    const std::vector<Objective> objs{objective({0.1, 2.9, -0.4}, 0.7, 1)};
    const auto a = privagg_local_log_weights(objs, {1}, 0.9);
    const auto b = local_dampening_log_weights(objs[0].values, per_candidate(objs[0].local), 0.9, default_window(3));
    EXPECT_EQ(a, b);
}

TEST(PrivAgg, DatasetLevelProblem) {
    const D x{0, 1, 2};
    std::vector<UtilityFunction<D, int>> us{{"a", [](const D& d, const int& r) { return d[r]; }},
                                            {"b", [](const D& d, const int& r) { return -d[r]; }}};
    MultiObjectiveProblem<D, int> p{x, {0, 1, 2}, us, {constant(1), constant(1)}, PrivacyBudget(1e9)};
    RandomSource rng(2);
    EXPECT_EQ(privagg_global(p, {2, 1}, GlobalMechanism::exponential, rng), 2);
    EXPECT_EQ(privagg_local(p, {1, 2}, rng), 0);
}
