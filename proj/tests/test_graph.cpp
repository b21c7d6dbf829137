#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "dpmos/motkin.hpp"
#include "dpmos/pareto.hpp"
#include "oracles.hpp"

using namespace dpmos;

namespace {

Graph random_graph(std::size_t n, double p, RandomSource& rng) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) e.push_back({u, v});
    return Graph(n, e);
}

std::size_t common_neighbor_edges(const Graph& g, Vertex v) {
    std::size_t c = 0;
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) c += g.has_edge(nb[i], nb[j]);
    return c;
}

}  // namespace

TEST(Graph, Construction) {
    const Graph g(4, {{1, 0}, {2, 1}, {0, 2}});
    EXPECT_EQ(g.vertex_count(), 4u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(g.edges().front(), (Edge{0, 1}));
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_FALSE(g.has_edge(3, 0));
    EXPECT_THROW(Graph(3, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
    EXPECT_EQ(all_graphs(4).size(), 64u);
}

TEST(Graph, TriangleCountsMatchDirect) {
    RandomSource rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_graph(5 + rng.index(40), rng.uniform(), rng);
        for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(g.neighbor_pair_edges(v), common_neighbor_edges(g, v));
    }
}

TEST(Graph, ToggleAndDistance) {
    const Graph g(3, {{0, 1}});
    const auto h = g.with_edge_toggled(1, 2);
    EXPECT_EQ(h.edge_count(), 2u);
    EXPECT_EQ(h.with_edge_toggled(2, 1), g);
    const auto nb = edge_add_remove();
    EXPECT_EQ(nb.neighbors(g).size(), 3u);
    EXPECT_EQ(nb.distance(g, h), 1u);
    EXPECT_EQ(nb.distance(g, Graph(3, {{1, 2}, {0, 2}})), 3u);
}

TEST(Degree, Examples) {
    EXPECT_EQ(degree(Graph(3, {}), 0), 0u);
    const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(degree(tri, v), 2u);
    EXPECT_EQ(delta_degree(tri, 5, 1), 1.0);
}

TEST(Egodensity, Examples) {
    const Graph star(3, {{0, 1}, {0, 2}});
    const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(egodensity(star, 0), 0.0);
    EXPECT_EQ(egodensity(tri, 0), 1.0);
    const Graph one(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
    EXPECT_DOUBLE_EQ(egodensity(one, 0), 1.0 / 3);
    EXPECT_EQ(egodensity(one, 3), 0.0);
}

TEST(Egodensity, SensitivityValues) {
    EXPECT_DOUBLE_EQ(egodensity_sensitivity(6, 0), 0.5);
    EXPECT_EQ(egodensity_sensitivity(3, 1), 1.0);
    EXPECT_EQ(egodensity_sensitivity(4, 0), 1.0);
    EXPECT_DOUBLE_EQ(egodensity_sensitivity(5, 0), 2.0 / 3);
    EXPECT_DOUBLE_EQ(egodensity_sensitivity(20, 3), 2.0 / 15);
    for (std::size_t d = 0; d < 40; ++d)
        for (std::size_t t = 0; t < 40; ++t) {
            EXPECT_LE(egodensity_sensitivity(d, t), egodensity_sensitivity(d, t + 1));
            EXPECT_LE(egodensity_sensitivity(d + 1, t + 1), egodensity_sensitivity(d, t));
            EXPECT_LE(egodensity_sensitivity(d, t), 1.0);
        }
}

TEST(Egodensity, DominatesBruteForce) {
    RandomSource rng(4);
    const auto nb = edge_add_remove();
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_graph(5, rng.uniform(), rng);
        for (Vertex v = 0; v < 5; ++v)
            for (std::size_t t = 0; t < 3; ++t)
                EXPECT_GE(delta_egodensity(g, t, v) + 1e-12,
                          brute_force_element_local_sensitivity(egodensity_utility(), g, t, v, nb));
    }
}

TEST(Objectives, GraphObjectivesMatchFunctions) {
    RandomSource rng(2);
    const auto g = random_graph(30, 0.2, rng);
    const std::vector<Vertex> pool{3, 7, 11, 29};
    const auto objs = graph_objectives(g, pool);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        EXPECT_EQ(objs[0].values[i], double(g.degree(pool[i])));
        EXPECT_EQ(objs[1].values[i], egodensity(g, pool[i]));
        for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(objs[1].local(t, i), delta_egodensity(g, t, pool[i]));
    }
}

TEST(TopK, PathAgg) {
    const Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
    const auto top = true_topk_agg(p4, 1, {1, 100});
    ASSERT_EQ(top.size(), 1u);
    EXPECT_TRUE(top[0] == 1 || top[0] == 2);
    EXPECT_EQ(top[0], 1u);
}

TEST(TopK, TriangleFirstById) {
    const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(true_topk_pareto(tri, 2), (std::vector<Vertex>{0, 1}));
    EXPECT_EQ(true_topk_pareto(tri, 3), (std::vector<Vertex>{0, 1, 2}));
    EXPECT_THROW(true_topk_pareto(tri, 4), std::invalid_argument);
}

TEST(TopK, ParetoAgreesWithOracleScores) {
    RandomSource rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_graph(6, 0.5, rng);
        const auto top = true_topk_pareto(g, 1);
        std::vector<Vertex> all{0, 1, 2, 3, 4, 5};
        const auto ps = oracle::pareto_scores(vertex_utilities(g, all));
        const long best = *std::max_element(ps.begin(), ps.end());
        EXPECT_EQ(ps[top[0]], best);
        EXPECT_EQ(std::find(ps.begin(), ps.end(), best) - ps.begin(), long(top[0]));
    }
}

TEST(DpMotkin, ExhaustsVertices) {
    RandomSource rng(5);
    const auto g = random_graph(8, 0.4, rng);
    for (auto v : {Variant::pareto_local, Variant::pareto_global, Variant::agg_local, Variant::agg_global}) {
        const auto out = dp_motkin(g, 8, 1.0, {v, {1, 100}, GlobalMechanism::permute_and_flip}, rng);
        EXPECT_EQ(std::set<Vertex>(out.begin(), out.end()).size(), 8u);
    }
    EXPECT_TRUE(dp_motkin(g, 0, 1.0, {}, rng).empty());
}

TEST(DpMotkin, HugeEpsilonAggGlobalIsTopK) {
    RandomSource rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_graph(12, 0.35, rng);
        const auto agg = vertex_utilities(g, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
        std::vector<double> score;
        for (auto& u : agg) score.push_back(u[0] + 100 * u[1]);
        std::vector<double> sorted = score;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;  // ties go by id only in the reference
        const auto out = dp_motkin(g, 3, 1e9, {Variant::agg_global, {1, 100}, GlobalMechanism::exponential}, rng);
        EXPECT_EQ(out, true_topk_agg(g, 3, {1, 100}));
    }
}

TEST(Recall, Examples) {
    EXPECT_EQ(recall_at_k({1, 2, 3}, {3, 2, 1}, 3), 1.0);
    EXPECT_EQ(recall_at_k({4, 5}, {1, 2}, 2), 0.0);
    EXPECT_DOUBLE_EQ(recall_at_k({1, 2, 3, 9, 8}, {1, 2, 3, 4, 5}, 5), 0.6);
    EXPECT_THROW(recall_at_k({1}, {1, 1}, 2), std::invalid_argument);
}
