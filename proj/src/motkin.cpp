#include "dpmos/motkin.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "dpmos/budget.hpp"

namespace dpmos {

std::size_t degree(const Graph& g, Vertex v) { return g.degree(v); }

double egodensity(const Graph& g, Vertex v) {
    const double d = static_cast<double>(g.degree(v));
    if (d < 2) return 0.0;
    return 2.0 * static_cast<double>(g.neighbor_pair_edges(v)) / (d * (d - 1));
}

double delta_degree(const Graph& g, std::size_t, Vertex v) {
    g.degree(v);
    return 1.0;
}

double egodensity_sensitivity(std::size_t degree, std::size_t t) {
    if (degree <= t + 4) return 1.0;
    return 2.0 / static_cast<double>(degree - t - 2);
}

double delta_egodensity(const Graph& g, std::size_t t, Vertex v) { return egodensity_sensitivity(g.degree(v), t); }

UtilityFunction<Graph, Vertex> degree_utility() {
    return {"degree", [](const Graph& g, const Vertex& v) { return static_cast<double>(g.degree(v)); }};
}

UtilityFunction<Graph, Vertex> egodensity_utility() {
    return {"egodensity", [](const Graph& g, const Vertex& v) { return egodensity(g, v); }};
}

SensitivityFunction<Graph, Vertex> delta_degree_sensitivity() {
    return {SensitivityKind::global_constant, 1.0,
            [](const Graph& g, std::size_t t, const Vertex& v) { return delta_degree(g, t, v); }};
}

SensitivityFunction<Graph, Vertex> delta_egodensity_sensitivity() {
    return {SensitivityKind::local, 1.0,
            [](const Graph& g, std::size_t t, const Vertex& v) { return delta_egodensity(g, t, v); }};
}

std::vector<Objective> graph_objectives(const Graph& g, const std::vector<Vertex>& pool) {
    Objective deg, ego;
    std::vector<std::size_t> degrees;
    deg.values.reserve(pool.size());
    ego.values.reserve(pool.size());
    degrees.reserve(pool.size());
    for (Vertex v : pool) {
        degrees.push_back(g.degree(v));
        deg.values.push_back(static_cast<double>(degrees.back()));
        ego.values.push_back(egodensity(g, v));
    }
    deg.local = [](std::size_t, std::size_t) { return 1.0; };
    ego.local = [degrees = std::move(degrees)](std::size_t t, std::size_t r) {
        return egodensity_sensitivity(degrees[r], t);
    };
    deg.global = ego.global = 1.0;
    return {std::move(deg), std::move(ego)};
}

namespace {

std::vector<Vertex> all_vertices(const Graph& g, std::size_t k) {
    if (k > g.vertex_count())
        throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the vertex count " +
                                    std::to_string(g.vertex_count()));
    std::vector<Vertex> pool(g.vertex_count());
    std::iota(pool.begin(), pool.end(), 0);
    return pool;
}

}  // namespace

std::vector<Vertex> dp_motkin(const Graph& g, std::size_t k, double epsilon, const SelectorOptions& options,
                              RandomSource& rng) {
    auto pool = all_vertices(g, k);
    std::vector<Vertex> out;
    if (k == 0) return out;
    BudgetLedger ledger(PrivacyBudget(epsilon), k);
    for (std::size_t round = 0; round < k; ++round) {
        const std::size_t i = private_select(graph_objectives(g, pool), options, ledger.charge(), rng);
        out.push_back(pool[i]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return out;
}

std::vector<Vertex> true_topk(const Graph& g, std::size_t k, const SelectorOptions& options) {
    auto pool = all_vertices(g, k);
    std::vector<Vertex> out;
    for (std::size_t round = 0; round < k; ++round) {
        const std::size_t i = nonprivate_select(graph_objectives(g, pool), options, TieBreak::first, nullptr);
        out.push_back(pool[i]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return out;
}

std::vector<Vertex> true_topk_pareto(const Graph& g, std::size_t k) {
    return true_topk(g, k, {Variant::pareto_local, {}, GlobalMechanism::exponential});
}

std::vector<Vertex> true_topk_agg(const Graph& g, std::size_t k, const std::vector<double>& weights) {
    return true_topk(g, k, {Variant::agg_local, weights, GlobalMechanism::exponential});
}

double recall_at_k(const std::vector<Vertex>& output, const std::vector<Vertex>& truth, std::size_t k) {
    const std::set<Vertex> t(truth.begin(), truth.end());
    if (k == 0 || t.size() != k || truth.size() != k)
        throw std::invalid_argument("recall_at_k: truth must hold exactly k distinct vertices");
    const std::set<Vertex> o(output.begin(), output.end());
    std::size_t hit = 0;
    for (Vertex v : o) hit += t.count(v);
    return static_cast<double>(hit) / static_cast<double>(k);
}

std::vector<std::vector<double>> vertex_utilities(const Graph& g, const std::vector<Vertex>& vertices) {
    std::vector<std::vector<double>> out;
    for (Vertex v : vertices) out.push_back({static_cast<double>(g.degree(v)), egodensity(g, v)});
    return out;
}

}  // namespace dpmos
